#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Homomorphism search and exact (m,n)-mixed chromatic number.

A k-colouring of G is a homomorphism to some mixed graph on k vertices.
Its fibres partition V(G) into k independent blocks such that all
adjacencies between two blocks carry the same code; conversely every such
partition yields a colouring through its quotient. The exact solver
searches partitions; the oracle enumerates targets instead.
"""

import logging
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from utils.config_utils import default_config
from utils.errors import CodeDomainError, QuotientConflict
from utils.generators import all_graphs
from utils.mixed_graph import CODE_DTYPE, ColourSpec, MixedGraph, VertexMap

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Partition:
    """
    Assignment of each source vertex to a block 0..k-1; every block nonempty.
    """
    blocks: Tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(int(b) for b in self.blocks)
        if blocks and set(blocks) != set(range(max(blocks) + 1)):
            raise CodeDomainError(f"block ids must be contiguous from 0 and nonempty, got {sorted(set(blocks))}")
        object.__setattr__(self, 'blocks', blocks)

    @property
    def k(self) -> int:
        return max(self.blocks) + 1 if self.blocks else 0

    def members(self, block: int) -> List[int]:
        return [v for v, b in enumerate(self.blocks) if b == block]

    @classmethod
    def from_image(cls, image: Sequence[int]) -> 'Partition':
        """
        Fibres of a map, numbered in order of first appearance.
        """
        ids: Dict[int, int] = {}
        return cls(tuple(ids.setdefault(int(x), len(ids)) for x in image))


@dataclass(frozen=True)
class ChromaticResult:
    chi: int
    witness_target: MixedGraph
    witness_map: VertexMap
    partition: Partition


def fibres(f: VertexMap) -> Partition:
    """Partition of the source into the fibres of f."""
    return Partition.from_image(f.image)


def is_homomorphism(f: VertexMap) -> bool:
    """
    True iff every adjacency of the source is sent to an adjacency with the
    same code. Equal codes mean equal kind, colour and orientation.
    """
    if f.source.spec != f.target.spec:
        return False
    if f.source.p == 0:
        return True
    image = np.asarray(f.image, dtype=np.intp)
    adjacent = f.source.code != 0
    mapped = f.target.code[np.ix_(image, image)]
    return bool(np.array_equal(mapped[adjacent], f.source.code[adjacent]))


def quotient(G: MixedGraph, P: Partition) -> MixedGraph:
    """
    The k-vertex mixed graph induced by a partition.

    Args:
        G (MixedGraph): Source graph
        P (Partition): Partition of V(G)

    Returns:
        MixedGraph: Quotient graph on the blocks

    Raises:
        QuotientConflict: Adjacent vertices share a block, or two adjacencies
            between the same two blocks carry different codes
    """
    if len(P.blocks) != G.p:
        raise CodeDomainError(f"partition covers {len(P.blocks)} vertices, graph has {G.p}")
    k = P.k
    matrix = np.zeros((k, k), dtype=CODE_DTYPE)
    witness: Dict[Tuple[int, int], Tuple[int, int]] = {}
    dual = G.spec.dual_table
    for u, v, code in G.adjacencies():
        bu, bv = P.blocks[u], P.blocks[v]
        if bu == bv:
            raise QuotientConflict((u, v), 'same-block')
        if matrix[bu, bv] == 0:
            matrix[bu, bv] = code
            matrix[bv, bu] = dual[code]
            witness[(bu, bv)] = (u, v)
            witness[(bv, bu)] = (v, u)
        elif matrix[bu, bv] != code:
            raise QuotientConflict((u, v), 'code-mismatch', witness[(bu, bv)])
    return MixedGraph(G.spec, matrix)


def factors_through_quotient(f: VertexMap) -> bool:
    """
    True iff the fibres of f give a conflict-free quotient and the block map
    from the source onto that quotient is a homomorphism.
    """
    P = fibres(f)
    try:
        Q = quotient(f.source, P)
    except QuotientConflict:
        return False
    return is_homomorphism(VertexMap(f.source, Q, P.blocks))


class ChromaticSolver:
    """
    Exact homomorphism and colouring search.
    """

    def __init__(self, config: Optional[Dict] = None):
        """
        Initialize the solver with configuration.

        Args:
            config (Optional[Dict]): Configuration dictionary from config.yaml
        """
        self.config = config or default_config()
        self.oracle_max_vertices = self.config['solver']['oracle_max_vertices']
        self.nodes = 0
        self._targets: Dict[Tuple[ColourSpec, int], List[MixedGraph]] = {}

    @staticmethod
    def search_order(G: MixedGraph) -> List[int]:
        """Descending underlying degree, ties by vertex id."""
        degrees = G.degrees
        return sorted(range(G.p), key=lambda v: (-int(degrees[v]), v))

    def find_homomorphism(self, G: MixedGraph, H: MixedGraph) -> Optional[VertexMap]:
        """
        Complete backtracking search for a homomorphism G -> H with forward
        checking: mapping a vertex filters the candidate images of its
        unmapped neighbours by the required code.

        Args:
            G (MixedGraph): Source graph
            H (MixedGraph): Target graph

        Returns:
            Optional[VertexMap]: A homomorphism, or None if none exists
        """
        if G.spec != H.spec:
            raise CodeDomainError(f"colour specifications differ: {G.spec} vs {H.spec}")
        if G.p == 0:
            return VertexMap(G, H, ())
        if H.p == 0:
            return None

        # rows[g][y] marks the x with code_H[x][y] == g
        rows = [np.ascontiguousarray(H.code.T == g) for g in range(H.spec.c + 1)]
        order = self.search_order(G)
        neighbours = G.neighbour_lists
        code_g = G.code
        domains = [np.ones(H.p, dtype=bool) for _ in range(G.p)]
        image = [-1] * G.p
        self.nodes = 0

        def assign(depth: int) -> bool:
            if depth == G.p:
                return True
            v = order[depth]
            for y in np.flatnonzero(domains[v]):
                self.nodes += 1
                saved = []
                consistent = True
                for u in neighbours[v]:
                    if image[u] != -1:
                        continue
                    narrowed = domains[u] & rows[code_g[u, v]][y]
                    if not narrowed.any():
                        consistent = False
                        break
                    saved.append((u, domains[u]))
                    domains[u] = narrowed
                if consistent:
                    image[v] = int(y)
                    if assign(depth + 1):
                        return True
                    image[v] = -1
                for u, domain in reversed(saved):
                    domains[u] = domain
            return False

        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, G.p + 200))
        try:
            found = assign(0)
        finally:
            sys.setrecursionlimit(limit)

        logger.debug(f"Homomorphism search {G!r} -> {H!r}: {self.nodes} nodes, found={found}")
        if not found:
            return None
        f = VertexMap(G, H, image)
        if not is_homomorphism(f):
            raise RuntimeError("homomorphism search returned an invalid map")
        return f

    def colouring_with(self, G: MixedGraph, k: int) -> Optional[Partition]:
        """
        Search for a partition into exactly k blocks with a conflict-free
        quotient. A vertex may open at most one new block, which removes
        block-renaming symmetry.

        Args:
            G (MixedGraph): Source graph
            k (int): Number of blocks

        Returns:
            Optional[Partition]: A valid partition, or None
        """
        order = self.search_order(G)
        dual = [int(x) for x in G.spec.dual_table]
        adjacent = [[(u, int(G.code[v, u])) for u in G.neighbours(v)] for v in range(G.p)]
        block = [-1] * G.p
        between = [[0] * k for _ in range(k)]

        def place(depth: int, used: int) -> bool:
            if depth == G.p:
                return used == k
            v = order[depth]
            for b in range(min(used + 1, k)):
                self.nodes += 1
                opened = []
                consistent = True
                for u, code in adjacent[v]:
                    bu = block[u]
                    if bu == -1:
                        continue
                    if bu == b:
                        consistent = False
                        break
                    current = between[b][bu]
                    if current == 0:
                        between[b][bu] = code
                        between[bu][b] = dual[code]
                        opened.append(bu)
                    elif current != code:
                        consistent = False
                        break
                if consistent:
                    block[v] = b
                    if place(depth + 1, max(used, b + 1)):
                        return True
                    block[v] = -1
                for bu in opened:
                    between[b][bu] = 0
                    between[bu][b] = 0
            return False

        limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(limit, G.p + 200))
        try:
            found = place(0, 0)
        finally:
            sys.setrecursionlimit(limit)
        return Partition(tuple(block)) if found else None

    def chromatic_number(self, G: MixedGraph) -> ChromaticResult:
        """
        Exact chi(G, m, n) with a witness colouring.

        Args:
            G (MixedGraph): The graph

        Returns:
            ChromaticResult: chi, quotient target and the map onto it
        """
        self.nodes = 0
        for k in range(0, G.p + 1):
            partition = self.colouring_with(G, k)
            if partition is None:
                continue
            target = quotient(G, partition)
            f = VertexMap(G, target, partition.blocks)
            if not is_homomorphism(f):
                raise RuntimeError("partition search returned an invalid colouring")
            logger.debug(f"chi = {k} for {G!r} after {self.nodes} nodes")
            return ChromaticResult(k, target, f, partition)
        raise RuntimeError(f"no colouring found for {G!r}")

    def chromatic_number_oracle(self, G: MixedGraph, kmax: int) -> Optional[int]:
        """
        Independent brute force: the least k <= kmax such that some mixed
        graph on k vertices admits a homomorphism from G.

        Args:
            G (MixedGraph): A small graph
            kmax (int): Largest target order tried

        Returns:
            Optional[int]: The minimum k, or None
        """
        if G.p > self.oracle_max_vertices:
            raise CodeDomainError(f"oracle limited to {self.oracle_max_vertices} vertices, got {G.p}")
        for k in range(0, kmax + 1):
            key = (G.spec, k)
            if key not in self._targets:
                self._targets[key] = list(all_graphs(G.spec, k))
            for H in self._targets[key]:
                if self.find_homomorphism(G, H) is not None:
                    return k
        return None

    def verify_witness(self, G: MixedGraph, f: VertexMap) -> bool:
        """
        A colouring witness is valid when its map is a homomorphism and its
        fibres have a conflict-free quotient.
        """
        if f.source != G or not is_homomorphism(f):
            return False
        try:
            quotient(G, fibres(f))
        except QuotientConflict as e:
            logger.warning(f"Witness fibres conflict: {str(e)}")
            return False
        return True
