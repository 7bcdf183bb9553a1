#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Closed-form bounds on the (m,n)-mixed chromatic number in terms of the
maximum degree, all in exact integer arithmetic.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Dict, Optional

import pandas as pd

from utils.mixed_graph import ColourSpec

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundTable:
    """
    None marks an entry outside its validity range ("n/a").
    """
    delta: int
    m: int
    n: int
    sopena: Optional[int]
    sopena_noted: Optional[int]
    ksz: int
    dns: Optional[int]
    lower_floor: int
    lower_ceil: int
    best_proven: Optional[int]
    min_one_universal: int

    def to_frame(self) -> pd.DataFrame:
        row = {key: ('n/a' if value is None else value) for key, value in asdict(self).items()}
        return pd.DataFrame([row])


def _root_bounds(c: int, delta: int):
    # floor and ceil of c^(delta/2)
    if delta % 2 == 0:
        exact = c ** (delta // 2)
        return exact, exact
    power = c ** delta
    floor = math.isqrt(power)
    return floor, floor if floor * floor == power else floor + 1


def min_one_universal_size(spec: ColourSpec) -> int:
    """
    Smallest positive c with binom(c, 2) >= m + n: the order of a smallest
    1-hom-universal (m,n)-coloured mixed graph.
    """
    c = 1
    while math.comb(c, 2) < spec.m + spec.n:
        c += 1
    return c


def bounds(delta: int, spec: ColourSpec) -> BoundTable:
    """
    Evaluate the degree bounds.

    sopena: (2D-1) c^(2D-2), proven for D >= 2 (for D = 1 the formula gives 1,
        kept as the noted value, while connected graphs need 2).
    ksz: D^2 c^(D+1).
    dns: 2 (D-1)^c c^(D - min(c,3) + 2), only for c >= 2 and D >= 5.
    lower: c^(D/2) as a floor/ceil pair.

    Args:
        delta (int): Maximum degree
        spec (ColourSpec): Colour specification

    Returns:
        BoundTable: The evaluated bounds
    """
    if delta < 0:
        raise ValueError(f"maximum degree must be non-negative, got {delta}")
    c = spec.c
    sopena_value = (2 * delta - 1) * c ** (2 * delta - 2) if delta >= 1 else None
    sopena = sopena_value if delta >= 2 else None
    noted = sopena_value if delta == 1 else None
    ksz = delta * delta * c ** (delta + 1)
    dns = 2 * (delta - 1) ** c * c ** (delta - min(c, 3) + 2) if c >= 2 and delta >= 5 else None
    lower_floor, lower_ceil = _root_bounds(c, delta)

    # smallest applicable upper bound; Delta = 1 is settled by the
    # 1-hom-universal minimum and Delta = 0 needs one colour
    if delta == 0:
        best = 1
    elif delta == 1:
        best = min_one_universal_size(spec)
    else:
        candidates = [x for x in (sopena, ksz, dns) if x is not None]
        best = min(candidates)

    table = BoundTable(delta, spec.m, spec.n, sopena, noted, ksz, dns,
                       lower_floor, lower_ceil, best, min_one_universal_size(spec))
    logger.debug(f"Bounds for delta={delta}, m={spec.m}, n={spec.n}: {table}")
    return table
