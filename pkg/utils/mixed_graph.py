#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Data model for (m,n)-coloured mixed graphs.

A mixed graph on vertices 0..p-1 is stored as a single p x p matrix of
adjacency codes. Entry code[x][y] records the adjacency between x and y
as seen from x:

    0                  x and y are not adjacent
    1 .. m             an edge of that colour
    m+1 .. m+n         an arc of colour code-m from x to y
    m+n+1 .. m+2n      an arc of colour code-m-n from y to x

Edge and arc colour classes are derived views of this matrix and are never
stored on their own, so a pair can never carry both an edge and an arc.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from utils.errors import CodeDomainError, ConflictError, LoopError, NotAdjacentError

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

CODE_DTYPE = np.int16

# a_G(x, X): the codes from x to each vertex of an ordered vertex list
CodeTuple = Tuple[int, ...]

Adjacency = Tuple[int, int, int]


@dataclass(frozen=True)
class ColourSpec:
    """
    Number of edge colours m and arc colours n.
    """
    m: int
    n: int

    def __post_init__(self):
        if int(self.m) != self.m or int(self.n) != self.n:
            raise CodeDomainError(f"colour counts must be integers, got m={self.m}, n={self.n}")
        if self.m < 0 or self.n < 0:
            raise CodeDomainError(f"colour counts must be non-negative, got m={self.m}, n={self.n}")
        if self.m + 2 * self.n < 1:
            raise CodeDomainError("m + 2n must be at least 1")

    @property
    def c(self) -> int:
        """Size of the adjacency code alphabet, m + 2n."""
        return self.m + 2 * self.n

    @cached_property
    def dual_table(self) -> np.ndarray:
        """Lookup array mapping every code 0..c to its dual."""
        return np.array([dual(code, self) for code in range(self.c + 1)], dtype=CODE_DTYPE)

    def describe(self, code: int) -> Tuple[str, int]:
        """
        Split a nonzero code into its kind and colour.

        Args:
            code (int): Adjacency code seen from the first endpoint

        Returns:
            Tuple[str, int]: ('edge', colour), ('out', colour) or ('in', colour)
        """
        if not 1 <= code <= self.c:
            raise CodeDomainError(f"code {code} outside 1..{self.c}")
        if code <= self.m:
            return 'edge', code
        if code <= self.m + self.n:
            return 'out', code - self.m
        return 'in', code - self.m - self.n


def dual(code: int, spec: ColourSpec) -> int:
    """
    The same adjacency seen from its other endpoint.

    Args:
        code (int): Adjacency code in 0..m+2n
        spec (ColourSpec): Colour specification

    Returns:
        int: Dual code; an involution fixing 0..m
    """
    code = int(code)
    if code < 0 or code > spec.c:
        raise CodeDomainError(f"code {code} outside 0..{spec.c}")
    if code <= spec.m:
        return code
    if code <= spec.m + spec.n:
        return code + spec.n
    return code - spec.n


@dataclass(frozen=True, eq=False)
class MixedGraph:
    """
    An immutable (m,n)-coloured mixed graph.
    """
    spec: ColourSpec
    code: np.ndarray
    labels: Optional[Tuple] = field(default=None)

    def __post_init__(self):
        matrix = np.array(self.code, dtype=CODE_DTYPE, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise CodeDomainError(f"code matrix must be square, got shape {matrix.shape}")
        if matrix.size and (matrix.min() < 0 or matrix.max() > self.spec.c):
            raise CodeDomainError(f"code matrix entries must lie in 0..{self.spec.c}")
        loops = np.flatnonzero(np.diag(matrix))
        if loops.size:
            raise LoopError(f"vertex {int(loops[0])} has a loop")
        mismatch = np.argwhere(matrix.T != self.spec.dual_table[matrix])
        if mismatch.size:
            u, v = (int(x) for x in mismatch[0])
            raise ConflictError(
                f"pair ({u}, {v}) carries code {int(matrix[u, v])} one way and "
                f"{int(matrix[v, u])} the other"
            )
        if self.labels is not None and len(self.labels) != matrix.shape[0]:
            raise CodeDomainError(f"{len(self.labels)} labels for {matrix.shape[0]} vertices")
        matrix.flags.writeable = False
        object.__setattr__(self, 'code', matrix)

    @classmethod
    def from_matrix(cls, spec: ColourSpec, code, labels: Optional[Sequence] = None) -> 'MixedGraph':
        """
        Ingest a raw code matrix, checking every invariant.

        Args:
            spec (ColourSpec): Colour specification
            code: Square array-like of codes
            labels (Optional[Sequence]): Optional vertex labels

        Returns:
            MixedGraph: The validated graph
        """
        return cls(spec, np.asarray(code), tuple(labels) if labels is not None else None)

    @property
    def p(self) -> int:
        return int(self.code.shape[0])

    @cached_property
    def degrees(self) -> np.ndarray:
        """Underlying degree of every vertex."""
        return np.count_nonzero(self.code, axis=1)

    @cached_property
    def neighbour_lists(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(int(u) for u in np.flatnonzero(row)) for row in self.code)

    def neighbours(self, v: int) -> Tuple[int, ...]:
        return self.neighbour_lists[v]

    def adjacencies(self) -> Iterator[Adjacency]:
        """
        Yields:
            Adjacency: (u, v, code[u][v]) for every adjacent pair u < v, sorted
        """
        rows, cols = np.nonzero(np.triu(self.code, k=1))
        for u, v in zip(rows, cols):
            yield int(u), int(v), int(self.code[u, v])

    def size(self) -> int:
        """Number of adjacencies."""
        return int(np.count_nonzero(self.code)) // 2

    def __eq__(self, other) -> bool:
        if not isinstance(other, MixedGraph):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.code, other.code)

    def __hash__(self) -> int:
        return hash((self.spec, self.code.shape, self.code.tobytes()))

    def __repr__(self) -> str:
        return f"MixedGraph(m={self.spec.m}, n={self.spec.n}, p={self.p}, adjacencies={self.size()})"


@dataclass(frozen=True, eq=False)
class VertexMap:
    """
    A candidate homomorphism source -> target. Validity is checked separately.
    """
    source: MixedGraph
    target: MixedGraph
    image: Tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(x) for x in self.image)
        if len(image) != self.source.p:
            raise CodeDomainError(f"map has {len(image)} images for {self.source.p} vertices")
        bad = [x for x in image if not 0 <= x < self.target.p]
        if bad:
            raise CodeDomainError(f"image {bad[0]} outside 0..{self.target.p - 1}")
        object.__setattr__(self, 'image', image)

    def __getitem__(self, v: int) -> int:
        return self.image[v]

    def __eq__(self, other) -> bool:
        if not isinstance(other, VertexMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.image == other.image

    def __hash__(self) -> int:
        return hash((self.source, self.target, self.image))

    def compose(self, after: 'VertexMap') -> 'VertexMap':
        """
        Args:
            after (VertexMap): A map whose source is this map's target

        Returns:
            VertexMap: after o self
        """
        if after.source != self.target:
            raise CodeDomainError("maps do not compose")
        return VertexMap(self.source, after.target, tuple(after.image[x] for x in self.image))


def build_graph(spec: ColourSpec, p: int, adjacencies: Iterable[Adjacency],
                labels: Optional[Sequence] = None) -> MixedGraph:
    """
    Build a mixed graph from a list of adjacencies.

    Args:
        spec (ColourSpec): Colour specification
        p (int): Number of vertices
        adjacencies (Iterable[Adjacency]): (u, v, code) triples, code seen from u
        labels (Optional[Sequence]): Optional vertex labels

    Returns:
        MixedGraph: The graph
    """
    if p < 0:
        raise CodeDomainError(f"vertex count must be non-negative, got {p}")
    matrix = np.zeros((p, p), dtype=CODE_DTYPE)
    for u, v, code in adjacencies:
        if not (0 <= u < p and 0 <= v < p):
            raise CodeDomainError(f"vertex of ({u}, {v}) outside 0..{p - 1}")
        if u == v:
            raise LoopError(f"loop at vertex {u}")
        if not 1 <= code <= spec.c:
            raise CodeDomainError(f"code {code} of ({u}, {v}) outside 1..{spec.c}")
        if matrix[u, v]:
            raise ConflictError(f"pair ({u}, {v}) listed twice")
        matrix[u, v] = code
        matrix[v, u] = dual(code, spec)
    return MixedGraph(spec, matrix, tuple(labels) if labels is not None else None)


def adjacency_vector(G: MixedGraph, x: int, X: Sequence[int]) -> CodeTuple:
    """
    Compute a_G(x, X).

    Args:
        G (MixedGraph): The graph
        x (int): A vertex adjacent to every vertex of X
        X (Sequence[int]): Ordered vertex list not containing x

    Returns:
        CodeTuple: Entry j is code[x][X[j]]
    """
    codes = []
    for v in X:
        code = int(G.code[x, v])
        if code == 0:
            raise NotAdjacentError(f"vertex {x} is not adjacent to {v}")
        codes.append(code)
    return tuple(codes)


def max_degree(G: MixedGraph) -> int:
    """Maximum degree of the underlying undirected graph."""
    return int(G.degrees.max()) if G.p else 0


def is_complete_subgraph(G: MixedGraph, X: Iterable[int]) -> bool:
    """True iff every two distinct vertices of X are adjacent."""
    vertices = sorted(set(int(v) for v in X))
    if len(vertices) <= 1:
        return True
    block = G.code[np.ix_(vertices, vertices)]
    return int(np.count_nonzero(block)) == len(vertices) * (len(vertices) - 1)


def edge_classes(G: MixedGraph) -> Dict[int, List[Tuple[int, int]]]:
    """E_i(G) for i in 1..m, as sorted lists of pairs u < v."""
    classes = {i: [] for i in range(1, G.spec.m + 1)}
    for u, v, code in G.adjacencies():
        if code <= G.spec.m:
            classes[code].append((u, v))
    return classes


def arc_classes(G: MixedGraph) -> Dict[int, List[Tuple[int, int]]]:
    """A_j(G) for j in 1..n, as lists of (tail, head)."""
    classes = {j: [] for j in range(1, G.spec.n + 1)}
    for u, v, code in G.adjacencies():
        kind, colour = G.spec.describe(code)
        if kind == 'out':
            classes[colour].append((u, v))
        elif kind == 'in':
            classes[colour].append((v, u))
    return classes


def to_networkx(G: MixedGraph) -> nx.Graph:
    """
    Underlying undirected graph; each edge keeps the code seen from its
    lower endpoint under the 'code' attribute.
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(G.p))
    graph.add_edges_from((u, v, {'code': code}) for u, v, code in G.adjacencies())
    return graph


def is_connected(G: MixedGraph) -> bool:
    return G.p > 0 and nx.is_connected(to_networkx(G))


def induced_subgraph(G: MixedGraph, vertices: Sequence[int]) -> MixedGraph:
    vertices = list(vertices)
    labels = tuple(G.labels[v] for v in vertices) if G.labels is not None else None
    return MixedGraph(G.spec, G.code[np.ix_(vertices, vertices)], labels)


def add_adjacency(G: MixedGraph, u: int, v: int, code: int) -> MixedGraph:
    """
    A copy of G with one more adjacency.
    """
    if u == v:
        raise LoopError(f"loop at vertex {u}")
    if G.code[u, v]:
        raise ConflictError(f"pair ({u}, {v}) already adjacent")
    if not 1 <= code <= G.spec.c:
        raise CodeDomainError(f"code {code} outside 1..{G.spec.c}")
    matrix = np.array(G.code)
    matrix[u, v] = code
    matrix[v, u] = dual(code, G.spec)
    return MixedGraph(G.spec, matrix, G.labels)


def disjoint_union(graphs: Sequence[MixedGraph]) -> MixedGraph:
    """
    Disjoint union, vertices renumbered consecutively in the given order.
    """
    if not graphs:
        raise CodeDomainError("disjoint union of no graphs")
    spec = graphs[0].spec
    if any(g.spec != spec for g in graphs):
        raise CodeDomainError("disjoint union of graphs with different colour specifications")
    total = sum(g.p for g in graphs)
    matrix = np.zeros((total, total), dtype=CODE_DTYPE)
    offset = 0
    for g in graphs:
        matrix[offset:offset + g.p, offset:offset + g.p] = g.code
        offset += g.p
    return MixedGraph(spec, matrix)
