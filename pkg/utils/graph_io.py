#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Text formats for mixed graphs, vertex maps, chromatic witnesses and
1-factorizations.

Graph file (one graph per file, '#' starts a comment):

    mixed <m> <n> <p>
    e <u> <v> <colour>      edge, colour in 1..m
    a <u> <v> <colour>      arc u -> v, colour in 1..n
"""

import logging
import sys
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

from utils.errors import CodeDomainError, GraphFormatError
from utils.mixed_graph import ColourSpec, MixedGraph, VertexMap, build_graph

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def _content_lines(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0].strip()
        if content:
            lines.append((number, content.split()))
    return lines


def _int_token(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(line, f"{what} must be an integer, got '{token}'")


def _parse_graph_lines(lines: List[Tuple[int, List[str]]]) -> MixedGraph:
    if not lines:
        raise GraphFormatError(1, "missing 'mixed <m> <n> <p>' header")
    number, tokens = lines[0]
    if tokens[0] != 'mixed' or len(tokens) != 4:
        raise GraphFormatError(number, "expected header 'mixed <m> <n> <p>'")
    m, n, p = (_int_token(tok, number, name) for tok, name in zip(tokens[1:], ('m', 'n', 'p')))
    try:
        spec = ColourSpec(m, n)
    except CodeDomainError as e:
        raise GraphFormatError(number, str(e))
    if p < 0:
        raise GraphFormatError(number, f"vertex count must be non-negative, got {p}")

    adjacencies = []
    seen: Dict[Tuple[int, int], int] = {}
    for number, tokens in lines[1:]:
        kind = tokens[0]
        if kind not in ('e', 'a') or len(tokens) != 4:
            raise GraphFormatError(number, "expected 'e <u> <v> <colour>' or 'a <u> <v> <colour>'")
        u, v, colour = (_int_token(tok, number, name) for tok, name in zip(tokens[1:], ('u', 'v', 'colour')))
        for vertex in (u, v):
            if not 0 <= vertex < p:
                raise GraphFormatError(number, f"vertex {vertex} outside 0..{p - 1}")
        if u == v:
            raise GraphFormatError(number, f"loop at vertex {u}")
        limit = m if kind == 'e' else n
        if not 1 <= colour <= limit:
            raise GraphFormatError(number, f"{'edge' if kind == 'e' else 'arc'} colour {colour} outside 1..{limit}")
        pair = (min(u, v), max(u, v))
        if pair in seen:
            raise GraphFormatError(number, f"pair {pair} already given on line {seen[pair]}")
        seen[pair] = number
        adjacencies.append((u, v, colour if kind == 'e' else m + colour))
    return build_graph(spec, p, adjacencies)


def parse_graph(text: str) -> MixedGraph:
    """
    Parse a graph in the text format.

    Args:
        text (str): File contents

    Returns:
        MixedGraph: The parsed graph
    """
    return _parse_graph_lines(_content_lines(text))


def serialize_graph(G: MixedGraph, comments: Sequence[str] = ()) -> str:
    """
    Render a graph in the text format, adjacencies sorted by
    (min endpoint, max endpoint).

    Args:
        G (MixedGraph): The graph
        comments (Sequence[str]): Header comment lines, written after '# '

    Returns:
        str: The file contents
    """
    out = [f"# {comment}" for comment in comments]
    out.append(f"mixed {G.spec.m} {G.spec.n} {G.p}")
    for u, v, code in G.adjacencies():
        kind, colour = G.spec.describe(code)
        if kind == 'edge':
            out.append(f"e {u} {v} {colour}")
        elif kind == 'out':
            out.append(f"a {u} {v} {colour}")
        else:
            out.append(f"a {v} {u} {colour}")
    return "\n".join(out) + "\n"


def read_graph(path: str) -> MixedGraph:
    """
    Read a graph file ('-' reads stdin).
    """
    try:
        if path == '-':
            return parse_graph(sys.stdin.read())
        with open(path, 'r') as file:
            return parse_graph(file.read())
    except GraphFormatError as e:
        logger.error(f"Error parsing {path}: {str(e)}")
        raise


def write_text(text: str, path: Optional[str] = None, stream: Optional[TextIO] = None):
    """
    Write text to a file, or to the given stream (stdout by default).
    """
    if path and path != '-':
        with open(path, 'w') as file:
            file.write(text)
        logger.info(f"Wrote {path}")
    else:
        (stream or sys.stdout).write(text)


def serialize_map(f: VertexMap, keyword: str = 'map') -> str:
    return "".join(f"{keyword} {v} {x}\n" for v, x in enumerate(f.image))


def parse_map_lines(lines: List[Tuple[int, List[str]]], p: int, keyword: str = 'map') -> List[int]:
    image: Dict[int, int] = {}
    for number, tokens in lines:
        if tokens[0] != keyword or len(tokens) != 3:
            raise GraphFormatError(number, f"expected '{keyword} <v> <image>'")
        v, x = _int_token(tokens[1], number, 'v'), _int_token(tokens[2], number, 'image')
        if not 0 <= v < p:
            raise GraphFormatError(number, f"vertex {v} outside 0..{p - 1}")
        if v in image:
            raise GraphFormatError(number, f"vertex {v} mapped twice")
        image[v] = x
    missing = [v for v in range(p) if v not in image]
    if missing:
        last = lines[-1][0] if lines else 1
        raise GraphFormatError(last, f"vertex {missing[0]} has no image")
    return [image[v] for v in range(p)]


def _check_images(lines: List[Tuple[int, List[str]]], q: int) -> None:
    for number, tokens in lines:
        x = int(tokens[2])
        if not 0 <= x < q:
            raise GraphFormatError(number, f"image {x} of vertex {tokens[1]} outside 0..{q - 1}")


def parse_map(text: str, source: MixedGraph, target: MixedGraph) -> VertexMap:
    """
    Parse 'map <v> <image>' lines into a vertex map.
    """
    lines = _content_lines(text)
    image = parse_map_lines(lines, source.p)
    _check_images(lines, target.p)
    try:
        return VertexMap(source, target, image)
    except CodeDomainError as e:
        raise GraphFormatError(lines[0][0] if lines else 1, str(e))


def serialize_witness(chi: int, target: MixedGraph, f: VertexMap) -> str:
    """
    Chromatic witness: 'chi <k>', the quotient graph, then 'map' lines.
    """
    return f"chi {chi}\n" + serialize_graph(target) + serialize_map(f)


def parse_witness(text: str, source: MixedGraph) -> Tuple[int, MixedGraph, VertexMap]:
    """
    Parse a chromatic witness written by serialize_witness.

    Returns:
        Tuple[int, MixedGraph, VertexMap]: Claimed chi, target graph and map
    """
    lines = _content_lines(text)
    chi_lines = [entry for entry in lines if entry[1][0] == 'chi']
    map_lines = [entry for entry in lines if entry[1][0] == 'map']
    graph_lines = [entry for entry in lines if entry[1][0] not in ('chi', 'map')]
    if len(chi_lines) != 1 or len(chi_lines[0][1]) != 2:
        raise GraphFormatError(chi_lines[1][0] if len(chi_lines) > 1 else 1, "expected exactly one 'chi <k>' line")
    number, tokens = chi_lines[0]
    chi = _int_token(tokens[1], number, 'chi')
    target = _parse_graph_lines(graph_lines)
    image = parse_map_lines(map_lines, source.p)
    _check_images(map_lines, target.p)
    try:
        return chi, target, VertexMap(source, target, image)
    except CodeDomainError as e:
        raise GraphFormatError(map_lines[0][0] if map_lines else 1, str(e))


def parse_factorization(text: str) -> List[List[int]]:
    """
    Parse a factorization file: 'factorization <c>' then c permutations of 0..c-1.

    Returns:
        List[List[int]]: perms[i][j] is the B-partner of A-vertex j in factor i+1
    """
    lines = _content_lines(text)
    if not lines:
        raise GraphFormatError(1, "missing 'factorization <c>' header")
    number, tokens = lines[0]
    if tokens[0] != 'factorization' or len(tokens) != 2:
        raise GraphFormatError(number, "expected header 'factorization <c>'")
    c = _int_token(tokens[1], number, 'c')
    if c < 1:
        raise GraphFormatError(number, f"size must be positive, got {c}")
    if len(lines) - 1 != c:
        raise GraphFormatError(lines[-1][0], f"expected {c} permutation lines, got {len(lines) - 1}")
    perms = []
    for number, tokens in lines[1:]:
        perm = [_int_token(tok, number, 'entry') for tok in tokens]
        if sorted(perm) != list(range(c)):
            raise GraphFormatError(number, f"not a permutation of 0..{c - 1}")
        perms.append(perm)
    return perms


def serialize_factorization(perms: Sequence[Sequence[int]]) -> str:
    out = [f"factorization {len(perms)}"]
    out.extend(" ".join(str(x) for x in perm) for perm in perms)
    return "\n".join(out) + "\n"
