#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Property P_{a,b}: for every complete subgraph X with |X| <= a and every
code tuple L over X, at least b vertices x satisfy a(x, X) = L.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from multiprocess import Pool

from utils.mixed_graph import MixedGraph

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

EXHAUSTIVE = 'exhaustive'
SAMPLED = 'sampled'

# (X, L, number of vertices found)
Counterexample = Tuple[Tuple[int, ...], Tuple[int, ...], int]


@dataclass(frozen=True)
class PropertyReport:
    """
    Outcome of a Property P_{a,b} check. A sampled report that holds only
    means no violation was found.
    """
    a: int
    b: int
    holds: bool
    counterexample: Optional[Counterexample]
    mode: str
    trials: Optional[int] = None
    seed: Optional[int] = None
    checked: int = 0

    @property
    def certified(self) -> bool:
        return self.mode == EXHAUSTIVE and self.holds

    def mode_label(self) -> str:
        if self.mode == SAMPLED:
            return f"sampled({self.trials},{self.seed})"
        return self.mode

    def to_row(self) -> dict:
        X, L, found = self.counterexample if self.counterexample else (None, None, None)
        return {
            'a': self.a,
            'b': self.b,
            'holds': self.holds,
            'mode': self.mode_label(),
            'checked': self.checked,
            'X': '' if X is None else ','.join(map(str, X)),
            'L': '' if L is None else ','.join(map(str, L)),
            'found': '' if found is None else found,
        }


def property_work(t: int, i: int, c: int) -> int:
    """Work estimate C(t,i) * c^i * t of checking the |X| = i layer."""
    return math.comb(t, i) * c ** i * t


def complete_subgraphs(G: MixedGraph, size: int) -> Iterator[Tuple[int, ...]]:
    """
    Complete vertex subsets of the given size, in lexicographic order.
    """
    adjacent = G.code != 0

    def extend(clique: List[int], candidates: np.ndarray):
        if len(clique) == size:
            yield tuple(clique)
            return
        for pos, v in enumerate(candidates):
            rest = candidates[pos + 1:]
            yield from extend(clique + [int(v)], rest[adjacent[v, rest]])

    yield from extend([], np.arange(G.p))


def tuple_counts(code: np.ndarray, c: int, X: Sequence[int]) -> np.ndarray:
    """
    For every tuple L in {1..c}^|X| (lexicographic order), the number of
    vertices x with a(x, X) = L.
    """
    columns = code[:, list(X)]
    common = np.all(columns != 0, axis=1)
    weights = c ** np.arange(len(X) - 1, -1, -1, dtype=np.int64)
    keys = (columns[common].astype(np.int64) - 1) @ weights
    return np.bincount(keys, minlength=c ** len(X))


def _decode(key: int, c: int, length: int) -> Tuple[int, ...]:
    digits = []
    for _ in range(length):
        key, digit = divmod(key, c)
        digits.append(digit + 1)
    return tuple(reversed(digits))


def first_deficit(code: np.ndarray, c: int, b: int, X: Sequence[int]) -> Optional[Counterexample]:
    """
    The lexicographically first tuple over X with fewer than b witnesses.
    """
    X = tuple(int(v) for v in X)
    if not X:
        found = code.shape[0]
        return ((), (), found) if found < b else None
    counts = tuple_counts(code, c, X)
    short = np.flatnonzero(counts < b)
    if short.size == 0:
        return None
    key = int(short[0])
    return X, _decode(key, c, len(X)), int(counts[key])


def _scan(args) -> Optional[Counterexample]:
    code, c, b, chunk = args
    for X in chunk:
        deficit = first_deficit(code, c, b, X)
        if deficit is not None:
            return deficit
    return None


def _chunks(items: list, parts: int) -> List[list]:
    size = max(1, math.ceil(len(items) / parts))
    return [items[i:i + size] for i in range(0, len(items), size)]


def has_property_P(G: MixedGraph, a: int, b: int, mode: str = EXHAUSTIVE, trials: int = 10000,
                   seed: Optional[int] = None, jobs: int = 1, from_size: int = 0) -> PropertyReport:
    """
    Check Property P_{a,b}.

    Exhaustive mode walks every complete X with 0 <= |X| <= a in order of
    size, then lexicographically, and reports the first deficit. Sampled mode
    draws up to `trials` uniform vertex subsets per size, keeps the complete
    ones and checks every tuple over each; it can refute but never certify.

    Args:
        G (MixedGraph): The graph
        a (int): Largest subgraph size
        b (int): Required number of witnesses
        mode (str): 'exhaustive' or 'sampled'
        trials (int): Draws per size in sampled mode
        seed (Optional[int]): Seed for sampled mode
        jobs (int): Worker processes for exhaustive mode
        from_size (int): Smallest |X| checked; sizes below it are assumed
            covered by an earlier check

    Returns:
        PropertyReport: The verdict
    """
    if a < 0 or b < 1:
        raise ValueError(f"need a >= 0 and b >= 1, got a={a}, b={b}")
    if mode not in (EXHAUSTIVE, SAMPLED):
        raise ValueError(f"unknown mode '{mode}'")
    code = np.asarray(G.code)
    c = G.spec.c

    deficit = first_deficit(code, c, b, ()) if from_size == 0 else None
    if deficit is not None:
        return PropertyReport(a, b, False, deficit, mode, trials if mode == SAMPLED else None, seed, 1)

    if mode == EXHAUSTIVE:
        checked = 1
        for size in range(max(1, from_size), a + 1):
            if jobs > 1:
                subsets = list(complete_subgraphs(G, size))
                checked += len(subsets)
                with Pool(jobs) as pool:
                    found = pool.map(_scan, [(code, c, b, chunk) for chunk in _chunks(subsets, jobs * 4)])
                deficit = next((result for result in found if result is not None), None)
            else:
                deficit = None
                for X in complete_subgraphs(G, size):
                    checked += 1
                    deficit = first_deficit(code, c, b, X)
                    if deficit is not None:
                        break
            if deficit is not None:
                logger.info(f"P_{{{a},{b}}} fails at X={deficit[0]}, L={deficit[1]}: {deficit[2]} found")
                return PropertyReport(a, b, False, deficit, mode, checked=checked)
        logger.debug(f"P_{{{a},{b}}} holds after {checked} complete subgraphs")
        return PropertyReport(a, b, True, None, mode, checked=checked)

    rng = np.random.default_rng(seed)
    checked = 1
    for size in range(max(1, from_size), min(a, G.p) + 1):
        for _ in range(trials):
            X = np.sort(rng.choice(G.p, size=size, replace=False))
            block = code[np.ix_(X, X)]
            if np.count_nonzero(block) != size * (size - 1):
                continue
            checked += 1
            deficit = first_deficit(code, c, b, X)
            if deficit is not None:
                logger.info(f"Sampling refuted P_{{{a},{b}}} at X={deficit[0]}, L={deficit[1]}")
                return PropertyReport(a, b, False, deficit, mode, trials, seed, checked)
    return PropertyReport(a, b, True, None, mode, trials, seed, checked)
