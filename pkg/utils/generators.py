#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Instance generators: seeded random mixed graphs and exhaustive enumeration
of small ones.
"""

import itertools
import logging
from typing import Iterator, List, Optional, Sequence

import numpy as np

from utils.errors import CodeDomainError
from utils.mixed_graph import CODE_DTYPE, ColourSpec, MixedGraph, build_graph, disjoint_union

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def random_bounded_degree(spec: ColourSpec, p: int, max_deg: int, edge_probability: float,
                          seed: int) -> MixedGraph:
    """
    Random mixed graph with underlying maximum degree at most max_deg.

    Vertex pairs are visited in a seeded random order; each is kept with
    probability edge_probability when both endpoints still have room, and
    gets a uniform code in 1..c.

    Args:
        spec (ColourSpec): Colour specification
        p (int): Number of vertices
        max_deg (int): Degree cap
        edge_probability (float): Probability of keeping a pair
        seed (int): Random seed

    Returns:
        MixedGraph: The graph
    """
    if max_deg < 0:
        raise CodeDomainError(f"degree cap must be non-negative, got {max_deg}")
    rng = np.random.default_rng(seed)
    pairs = [(u, v) for u in range(p) for v in range(u + 1, p)]
    order = rng.permutation(len(pairs)) if pairs else []
    keep = rng.random(len(pairs))
    codes = rng.integers(1, spec.c + 1, size=len(pairs))
    degree = [0] * p
    adjacencies = []
    for idx in order:
        u, v = pairs[idx]
        if keep[idx] < edge_probability and degree[u] < max_deg and degree[v] < max_deg:
            degree[u] += 1
            degree[v] += 1
            adjacencies.append((u, v, int(codes[idx])))
    return build_graph(spec, p, adjacencies)


def random_complete(spec: ColourSpec, t: int, seed: int) -> MixedGraph:
    """
    Complete mixed graph on t vertices; every pair gets one of the c codes
    (seen from its lower endpoint) independently with probability 1/c.
    """
    if t < 1:
        raise CodeDomainError(f"order must be positive, got {t}")
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.integers(1, spec.c + 1, size=(t, t)), k=1).astype(CODE_DTYPE)
    return MixedGraph(spec, upper + spec.dual_table[upper.T])


def all_graphs(spec: ColourSpec, p: int) -> Iterator[MixedGraph]:
    """
    Every mixed graph on vertices 0..p-1 (labelled, no isomorph rejection).
    """
    pairs = [(u, v) for u in range(p) for v in range(u + 1, p)]
    for codes in itertools.product(range(spec.c + 1), repeat=len(pairs)):
        yield build_graph(spec, p, [(u, v, code) for (u, v), code in zip(pairs, codes) if code])


def path_graph(spec: ColourSpec, codes: Sequence[int]) -> MixedGraph:
    """
    Path 0-1-...-len(codes) where codes[i] is the code from i to i+1.
    """
    return build_graph(spec, len(codes) + 1, [(i, i + 1, code) for i, code in enumerate(codes)])


def path_orientations(vertices: int) -> List[MixedGraph]:
    """All 2^(vertices-1) orientations of the path, as (0,1)-coloured graphs."""
    spec = ColourSpec(0, 1)
    return [path_graph(spec, codes) for codes in itertools.product((1, 2), repeat=vertices - 1)]


def path_edge_colourings(vertices: int, colours: int = 2) -> List[MixedGraph]:
    """All edge colourings of the path with the given number of edge colours."""
    spec = ColourSpec(colours, 0)
    return [path_graph(spec, codes) for codes in itertools.product(range(1, colours + 1), repeat=vertices - 1)]


def directed_cycle(length: int, colour: int = 1, spec: Optional[ColourSpec] = None) -> MixedGraph:
    spec = spec or ColourSpec(0, 1)
    code = spec.m + colour
    return build_graph(spec, length, [(i, (i + 1) % length, code) for i in range(length)])


def one_of_each_colour(spec: ColourSpec) -> MixedGraph:
    """
    Disjoint union of m edges and n arcs, one of each colour.
    """
    parts = [build_graph(spec, 2, [(0, 1, code)]) for code in range(1, spec.m + spec.n + 1)]
    if not parts:
        return build_graph(spec, 1, [])
    return disjoint_union(parts)
