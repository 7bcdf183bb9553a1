#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
The constructive universal family.

H is K_{c,c} (c = m+2n) whose c perfect matchings F_1..F_c become the edge
colours 1..m, the arcs A->B of colours 1..n and the arcs B->A of colours
1..n. Z_{m,n,q} has the vertices (i; v_1..v_q) with a hole at position i
and coordinates in 1..c elsewhere; for indices i < j the pair
(i; v), (j; w) copies the adjacency between a_{v_j} and b_{w_i} in H.
Z_{m,n,2k-1} admits a homomorphism from every graph of maximum degree k.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import numpy as np

from scripts.solver import ChromaticSolver, is_homomorphism
from utils.config_utils import default_config
from utils.errors import CodeDomainError, TheoremViolation
from utils.graph_io import parse_factorization, serialize_factorization
from utils.mixed_graph import CODE_DTYPE, ColourSpec, MixedGraph, VertexMap, build_graph, max_degree

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OneFactorization:
    """
    perms[i][j] is the B-partner of A-vertex j in factor F_{i+1}.
    """
    c: int
    perms: Tuple[Tuple[int, ...], ...]
    name: str = 'custom'

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in perm) for perm in self.perms)
        if self.c < 1 or len(perms) != self.c:
            raise CodeDomainError(f"a factorization of K_{{{self.c},{self.c}}} needs {self.c} factors, got {len(perms)}")
        for perm in perms:
            if sorted(perm) != list(range(self.c)):
                raise CodeDomainError(f"factor {perm} is not a perfect matching")
        pairs = {(j, perm[j]) for perm in perms for j in range(self.c)}
        if len(pairs) != self.c * self.c:
            raise CodeDomainError("factors overlap, so they do not decompose K_{c,c}")
        object.__setattr__(self, 'perms', perms)

    def factor_table(self) -> np.ndarray:
        """table[s][t] = i+1 where (s, t) lies in F_{i+1}."""
        table = np.zeros((self.c, self.c), dtype=CODE_DTYPE)
        for i, perm in enumerate(self.perms):
            for j, partner in enumerate(perm):
                table[j, partner] = i + 1
        return table

    @classmethod
    def from_text(cls, text: str) -> 'OneFactorization':
        return validate_factorization(parse_factorization(text), name='file')

    def to_text(self) -> str:
        return serialize_factorization(self.perms)


@dataclass(frozen=True)
class ZVertex:
    """
    index in 1..q; coords has q entries in 1..c with 0 marking the hole at
    position index.
    """
    index: int
    coords: Tuple[int, ...]

    def __post_init__(self):
        holes = [pos for pos, value in enumerate(self.coords) if value == 0]
        if holes != [self.index - 1]:
            raise CodeDomainError(f"vertex must have exactly one hole, at position {self.index}")

    def __str__(self) -> str:
        return f"({self.index};{','.join('.' if v == 0 else str(v) for v in self.coords)})"


def validate_factorization(perms: Sequence[Sequence[int]], name: str = 'custom') -> OneFactorization:
    """Raises CodeDomainError unless the permutations decompose K_{c,c}."""
    return OneFactorization(len(perms), tuple(tuple(perm) for perm in perms), name=name)


def cyclic_factorization(c: int) -> OneFactorization:
    """Factor i maps A-vertex j to B-vertex (j + i) mod c."""
    if c < 1:
        raise CodeDomainError(f"size must be positive, got {c}")
    return OneFactorization(c, tuple(tuple((j + i) % c for j in range(c)) for i in range(c)), name='cyclic')


def shuffled_factorization(c: int, seed: int) -> OneFactorization:
    """
    A 1-factorization other than the cyclic one (for c >= 2): the cyclic
    Latin square with its rows, columns and symbols permuted.
    """
    cyclic = cyclic_factorization(c)
    rng = np.random.default_rng(seed)
    base = cyclic.factor_table() - 1
    for _ in range(100):
        rows, cols, symbols = rng.permutation(c), rng.permutation(c), rng.permutation(c)
        table = symbols[base[np.ix_(rows, cols)]]
        perms = [[0] * c for _ in range(c)]
        for s in range(c):
            for t in range(c):
                perms[int(table[s, t])][s] = t
        candidate = OneFactorization(c, tuple(tuple(perm) for perm in perms), name=f'shuffled({seed})')
        if candidate.perms != cyclic.perms or c == 1:
            return candidate
    return candidate


def build_H(spec: ColourSpec, fac: OneFactorization) -> MixedGraph:
    """
    The member of H_{c,c} given by a 1-factorization: vertices a_1..a_c are
    0..c-1 and b_1..b_c are c..2c-1.

    Args:
        spec (ColourSpec): Colour specification
        fac (OneFactorization): Factorization of K_{c,c} with c = m+2n

    Returns:
        MixedGraph: The bipartite mixed graph
    """
    c = spec.c
    if fac.c != c:
        raise CodeDomainError(f"factorization has size {fac.c}, expected m+2n = {c}")
    # factor i+1 seen from its A endpoint has code i+1 under the code convention
    adjacencies = [(j, c + partner, i + 1) for i, perm in enumerate(fac.perms) for j, partner in enumerate(perm)]
    labels = [f"a{j + 1}" for j in range(c)] + [f"b{j + 1}" for j in range(c)]
    H = build_graph(spec, 2 * c, adjacencies, labels=labels)
    _check_h_member(H)
    return H


def _check_h_member(H: MixedGraph):
    c = H.spec.c
    if H.p != 2 * c:
        raise CodeDomainError(f"H must have {2 * c} vertices, got {H.p}")
    if np.count_nonzero(H.code[:c, :c]) or np.count_nonzero(H.code[c:, c:]):
        raise CodeDomainError("H must be bipartite between its first and last c vertices")
    every_code = np.arange(1, c + 1)
    for row in H.code[:c, c:]:
        if not np.array_equal(np.sort(row), every_code):
            raise CodeDomainError("some vertex of H misses an edge colour or an arc colour/orientation")
    for column in H.code[:c, c:].T:
        if not np.array_equal(np.sort(column), every_code):
            raise CodeDomainError("some vertex of H misses an edge colour or an arc colour/orientation")


def z_vertices(q: int, c: int) -> List[ZVertex]:
    """All Z vertices ordered by index, then coordinates lexicographically."""
    vertices = []
    for index in range(1, q + 1):
        for rest in itertools.product(range(1, c + 1), repeat=q - 1):
            vertices.append(ZVertex(index, rest[:index - 1] + (0,) + rest[index - 1:]))
    return vertices


def z_vertex_id(vertex: ZVertex, c: int) -> int:
    """Position of a vertex in the z_vertices order."""
    q = len(vertex.coords)
    position = 0
    for pos, value in enumerate(vertex.coords):
        if pos != vertex.index - 1:
            position = position * c + (value - 1)
    return (vertex.index - 1) * c ** (q - 1) + position


def build_Z(spec: ColourSpec, q: int, H: MixedGraph) -> MixedGraph:
    """
    Build the member of Z_{m,n,q} defined by H. Vertices carry ZVertex labels.

    Args:
        spec (ColourSpec): Colour specification
        q (int): Number of index classes
        H (MixedGraph): A member of H_{c,c} from build_H

    Returns:
        MixedGraph: Graph on q * c^(q-1) vertices, complete q-partite underneath
    """
    if q < 1:
        raise CodeDomainError(f"q must be positive, got {q}")
    if H.spec != spec:
        raise CodeDomainError(f"H has colour specification {H.spec}, expected {spec}")
    _check_h_member(H)
    c = spec.c
    table = np.asarray(H.code[:c, c:])

    vertices = z_vertices(q, c)
    index = np.array([v.index - 1 for v in vertices])
    coords = np.array([v.coords for v in vertices], dtype=np.int64).reshape(len(vertices), q)

    # s = v's coordinate at w's index, t = w's coordinate at v's index
    s = coords[:, index]
    t = s.T
    lower = index[:, None] < index[None, :]
    codes = table[np.clip(s - 1, 0, None), np.clip(t - 1, 0, None)]
    upper = np.where(lower, codes, 0).astype(CODE_DTYPE)
    matrix = upper + spec.dual_table[upper.T]

    logger.info(f"Built Z_{{{spec.m},{spec.n},{q}}} on {len(vertices)} vertices")
    return MixedGraph(spec, matrix, tuple(vertices))


def build_universal_target(spec: ColourSpec, k: int, fac: Optional[OneFactorization] = None) -> MixedGraph:
    """Z_{m,n,2k-1}, cyclic factorization unless one is given."""
    fac = fac or cyclic_factorization(spec.c)
    return build_Z(spec, 2 * k - 1, build_H(spec, fac))


class _RepairFailed(Exception):
    pass


Slot = Tuple[int, int]


class _SlotBindings:
    """
    Coordinates of mapped vertices tied together by bijections.

    A slot (v, j) is coordinate j of the image of v. All slots of one
    component are determined by a shared root value r in 1..c: slot s takes
    the value perm[s][r], and r must stay inside the component's allowed set.
    """

    def __init__(self, c: int):
        self.c = c
        self.root: Dict[Slot, int] = {}
        self.perm: Dict[Slot, Tuple[int, ...]] = {}
        self.members: Dict[int, Tuple[Slot, ...]] = {}
        self.allowed: Dict[int, FrozenSet[int]] = {}
        self._next = 0

    def copy(self) -> '_SlotBindings':
        other = _SlotBindings(self.c)
        other.root, other.perm = dict(self.root), dict(self.perm)
        other.members, other.allowed = dict(self.members), dict(self.allowed)
        other._next = self._next
        return other

    def _ensure(self, slot: Slot):
        if slot not in self.root:
            self.root[slot] = self._next
            self.perm[slot] = tuple(range(self.c + 1))
            self.members[self._next] = (slot,)
            self.allowed[self._next] = frozenset(range(1, self.c + 1))
            self._next += 1

    def bind(self, a: Slot, b: Slot, sigma: Sequence[int]) -> bool:
        """
        Require value(b) = sigma[value(a)].

        Returns:
            bool: False once the merged component has no consistent value left
        """
        self._ensure(a)
        self._ensure(b)
        ra, rb = self.root[a], self.root[b]
        pa, pb = self.perm[a], self.perm[b]
        if ra == rb:
            allowed = frozenset(r for r in self.allowed[ra] if sigma[pa[r]] == pb[r])
            self.allowed[ra] = allowed
            return bool(allowed)
        if len(self.members[rb]) > len(self.members[ra]):
            inverse = [0] * (self.c + 1)
            for s in range(1, self.c + 1):
                inverse[sigma[s]] = s
            return self.bind(b, a, inverse)

        # link[r]: root value of b's component when a's component has root value r
        inv_b = [0] * (self.c + 1)
        for r in range(1, self.c + 1):
            inv_b[pb[r]] = r
        link = [0] + [inv_b[sigma[pa[r]]] for r in range(1, self.c + 1)]
        for slot in self.members[rb]:
            old = self.perm[slot]
            self.perm[slot] = (0,) + tuple(old[link[r]] for r in range(1, self.c + 1))
            self.root[slot] = ra
        allowed = frozenset(r for r in self.allowed[ra] if link[r] in self.allowed[rb])
        self.members[ra] = self.members[ra] + self.members.pop(rb)
        del self.allowed[rb]
        self.allowed[ra] = allowed
        return bool(allowed)

    def value(self, slot: Slot) -> Optional[int]:
        """Value of a bound slot under the least allowed root value, None if unbound."""
        if slot not in self.root:
            return None
        return self.perm[slot][min(self.allowed[self.root[slot]])]


class UniversalColourer:
    """
    Homomorphisms into Z_{m,n,2k-1}. Vertices of G are inserted in id order,
    each on an index class unused by its mapped neighbours. An adjacency
    between index classes i < j fixes the coordinate of the higher vertex
    at i as a bijective function of the lower vertex's coordinate at j, so
    coordinates are solved exactly and only the index choices are searched.
    When a vertex has no consistent index the search backtracks, re-placing
    earlier vertices.
    """

    def __init__(self, config: Optional[Dict] = None, solver: Optional[ChromaticSolver] = None):
        """
        Initialize the colourer with configuration.

        Args:
            config (Optional[Dict]): Configuration dictionary from config.yaml
            solver (Optional[ChromaticSolver]): Solver used for the fallback search
        """
        self.config = config or default_config()
        self.solver = solver or ChromaticSolver(self.config)
        self.max_backtracks = self.config['universal']['max_backtracks']
        self.stats = {'backtracks': 0, 'fallbacks': 0}

    def _prepare(self, Z: MixedGraph, q: int):
        c = Z.spec.c
        if Z.labels is None or not all(isinstance(v, ZVertex) for v in Z.labels):
            raise CodeDomainError("target must be built by build_Z")
        if Z.p != q * c ** (q - 1) or any(len(v.coords) != q for v in Z.labels):
            raise CodeDomainError(f"target is not a member of Z_{{m,n,{q}}}")
        self.q, self.c, self.Z = q, c, Z

        # factor table read back from Z: F[s][t] = code from (1; ., s, 1..) to (2; t, ., 1..)
        rest = (1,) * (q - 2)
        table = np.zeros((c + 1, c + 1), dtype=np.int64)
        for s in range(1, c + 1):
            for t in range(1, c + 1):
                v = z_vertex_id(ZVertex(1, (0, s) + rest), c)
                w = z_vertex_id(ZVertex(2, (t, 0) + rest), c)
                table[s, t] = Z.code[v, w]
        # sigma[g][s] = t with F[s][t] = g
        self.sigma: Dict[int, List[int]] = {g: [0] * (c + 1) for g in range(1, c + 1)}
        for s in range(1, c + 1):
            for t in range(1, c + 1):
                self.sigma[int(table[s, t])][s] = t

    def _nearby_indices(self, G: MixedGraph, x: int, index: List[int]) -> Set[int]:
        # indices of earlier vertices sharing a neighbour with x
        nearby = set()
        for y in G.neighbours(x):
            for u in G.neighbours(y):
                if u < x:
                    nearby.add(index[u])
        return nearby

    def _candidates(self, G: MixedGraph, x: int, index: List[int]) -> List[int]:
        taken = {index[y] for y in G.neighbours(x) if y < x}
        nearby = self._nearby_indices(G, x, index)
        free = [i for i in range(1, self.q + 1) if i not in taken]
        return sorted(free, key=lambda i: (i in nearby, i))

    def _bind_vertex(self, G: MixedGraph, x: int, index: List[int], bindings: _SlotBindings) -> bool:
        for y in G.neighbours(x):
            if y >= x:
                continue
            lo, hi = (x, y) if index[x] < index[y] else (y, x)
            g = int(G.code[lo, hi])
            if not bindings.bind((lo, index[hi]), (hi, index[lo]), self.sigma[g]):
                return False
        return True

    def _assign_indices(self, G: MixedGraph) -> Tuple[List[int], _SlotBindings]:
        """
        Depth-first search for index classes whose coordinate constraints
        are consistent.

        Returns:
            Tuple[List[int], _SlotBindings]: Index of every vertex and the solved coordinates
        """
        index = [0] * G.p
        if G.p == 0:
            return index, _SlotBindings(self.c)
        stack: List[Tuple[List[int], _SlotBindings]] = [(self._candidates(G, 0, index), _SlotBindings(self.c))]
        backtracks = 0
        while stack:
            x = len(stack) - 1
            candidates, saved = stack[-1]
            if not candidates:
                stack.pop()
                index[x] = 0
                backtracks += 1
                self.stats['backtracks'] += 1
                if backtracks > self.max_backtracks:
                    raise _RepairFailed(f"gave up after {self.max_backtracks} backtracks")
                continue
            index[x] = candidates.pop(0)
            trial = saved.copy()
            if not self._bind_vertex(G, x, index, trial):
                continue
            if x + 1 == G.p:
                return index, trial
            stack.append((self._candidates(G, x + 1, index), trial))
        raise _RepairFailed("no assignment of index classes has consistent coordinates")

    def _insert_all(self, G: MixedGraph) -> List[int]:
        index, bindings = self._assign_indices(G)
        image = []
        for v in range(G.p):
            coords = []
            for j in range(1, self.q + 1):
                if j == index[v]:
                    coords.append(0)
                else:
                    value = bindings.value((v, j))
                    coords.append(1 if value is None else value)
            image.append(z_vertex_id(ZVertex(index[v], tuple(coords)), self.c))
        return image

    def universal_colouring(self, G: MixedGraph, Z: MixedGraph, q: int, k: int) -> VertexMap:
        """
        A homomorphism G -> Z for G of maximum degree at most k, Z in Z_{m,n,2k-1}.

        Args:
            G (MixedGraph): Source graph
            Z (MixedGraph): Target from build_Z
            q (int): Number of index classes of Z, 2k-1
            k (int): Degree bound, at least 2

        Returns:
            VertexMap: A validated homomorphism
        """
        if G.spec != Z.spec:
            raise CodeDomainError(f"colour specifications differ: {G.spec} vs {Z.spec}")
        if k < 2:
            raise ValueError(f"the universal family is proven for k >= 2, got k={k}")
        if q != 2 * k - 1:
            raise ValueError(f"q must equal 2k-1 = {2 * k - 1}, got {q}")
        if max_degree(G) > k:
            raise ValueError(f"maximum degree {max_degree(G)} exceeds k={k}")
        self._prepare(Z, q)

        try:
            f = VertexMap(G, Z, self._insert_all(G))
            if is_homomorphism(f):
                return f
            logger.warning("Inductive construction produced an invalid map")
        except _RepairFailed as e:
            logger.warning(f"Inductive construction stopped: {str(e)}")

        self.stats['fallbacks'] += 1
        logger.info(f"Falling back to complete search for {G!r} -> {Z!r}")
        f = self.solver.find_homomorphism(G, Z)
        if f is None:
            raise TheoremViolation(f"no homomorphism from {G!r} into Z_{{m,n,{q}}}", instance=(G, Z))
        return f
