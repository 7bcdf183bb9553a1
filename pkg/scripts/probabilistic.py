#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Random complete targets and the greedy colouring that uses them.

A random complete (m,n)-coloured mixed graph on t vertices, every pair
getting one of the c = m+2n codes with probability 1/c, has property
P_{i,(k-i)(k-1)+1} for i = 1..k with positive probability once
t = k^2 c^(k+1). This module evaluates that probability argument exactly,
searches for such targets by rejection sampling, and runs the greedy
extension that maps any graph of maximum degree k into one.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from scipy.special import logsumexp

from scripts.properties import EXHAUSTIVE, SAMPLED, PropertyReport, has_property_P, property_work
from scripts.solver import is_homomorphism
from utils.config_utils import default_config
from utils.errors import CodeDomainError
from utils.generators import random_complete
from utils.mixed_graph import ColourSpec, MixedGraph, VertexMap, is_complete_subgraph, max_degree

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

LOG = 'log'
EXACT = 'exact'

Probability = Union[float, Fraction]


@dataclass(frozen=True)
class LemmaParams:
    """
    Degree bound k, code alphabet size c and target order t (default k^2 c^(k+1)).
    """
    k: int
    c: int
    t: Optional[int] = None

    def __post_init__(self):
        if self.k < 1 or self.c < 1:
            raise ValueError(f"need k >= 1 and c >= 1, got k={self.k}, c={self.c}")
        if self.t is None:
            object.__setattr__(self, 't', self.k * self.k * self.c ** (self.k + 1))
        if self.t < self.k:
            raise ValueError(f"need t >= k, got t={self.t}, k={self.k}")

    def witnesses_needed(self, i: int) -> int:
        return (self.k - i) * (self.k - 1) + 1


def _logsumexp(values: List[float]) -> float:
    if not values or max(values) == -math.inf:
        return -math.inf
    return float(logsumexp(values))


def log_tail_probability(params: LemmaParams, i: int) -> float:
    """Natural log of tail_probability, computed term by term in log space."""
    _check_layer(params, i)
    trials = params.t - i
    cutoff = params.witnesses_needed(i) - 1
    if cutoff >= trials:
        return 0.0
    log_p = -i * math.log(params.c)
    log_q = math.log1p(-params.c ** -i) if params.c > 1 else -math.inf
    terms = []
    for j in range(cutoff + 1):
        if params.c == 1 and j < trials:
            continue
        terms.append(math.log(math.comb(trials, j)) + j * log_p + (trials - j) * log_q)
    return _logsumexp(terms)


def _check_layer(params: LemmaParams, i: int):
    if not 1 <= i <= params.k:
        raise ValueError(f"layer {i} outside 1..{params.k}")
    if params.t <= i:
        raise ValueError(f"need t > i, got t={params.t}, i={i}")


def tail_probability(params: LemmaParams, i: int, backend: str = LOG) -> Probability:
    """
    Probability that at most (k-i)(k-1) of t-i independent trials with
    success probability c^-i succeed: the chance that a fixed i-set X and
    code tuple b violate P_{i,(k-i)(k-1)+1}.

    Args:
        params (LemmaParams): k, c, t
        i (int): Layer, 1 <= i <= k
        backend (str): 'log' for floats, 'exact' for Fractions

    Returns:
        Probability: The binomial lower tail
    """
    if backend == LOG:
        return math.exp(log_tail_probability(params, i))
    if backend != EXACT:
        raise ValueError(f"unknown backend '{backend}'")
    _check_layer(params, i)
    trials = params.t - i
    cutoff = params.witnesses_needed(i) - 1
    if cutoff >= trials:
        return Fraction(1)
    p = Fraction(1, params.c ** i)
    q = 1 - p
    return sum((math.comb(trials, j) * p ** j * q ** (trials - j) for j in range(cutoff + 1)), Fraction(0))


def _log_events(params: LemmaParams, i: int) -> float:
    # log of C(t,i) c^i, the number of (X, b) pairs in layer i
    return math.log(math.comb(params.t, i)) + i * math.log(params.c)


def log_union_bound(params: LemmaParams) -> float:
    return _logsumexp([_log_events(params, i) + log_tail_probability(params, i) for i in range(1, params.k + 1)])


def union_bound(params: LemmaParams, backend: str = LOG) -> Probability:
    """
    Sum over i = 1..k of C(t,i) c^i times the exact tail: an upper bound on
    the probability that a random complete target misses some layer.
    """
    if backend == LOG:
        return math.exp(log_union_bound(params))
    return sum((math.comb(params.t, i) * params.c ** i * tail_probability(params, i, EXACT)
                for i in range(1, params.k + 1)), Fraction(0))


def log_chained_bound(params: LemmaParams) -> float:
    """
    Log of the sum over i = 1..k of C(t,i) c^i e^(-t c^-i) t^((k-i)(k-1)+1),
    the per-event exponential estimate summed over all events.
    """
    k, c, t = params.k, params.c, params.t
    return _logsumexp([
        _log_events(params, i) - t * c ** -i + params.witnesses_needed(i) * math.log(t)
        for i in range(1, k + 1)
    ])


def log_power_chain(params: LemmaParams) -> float:
    """Log of c^k sum_{i=0..k} e^(-t c^-i) t^((k-i)(k-1)+1+i)."""
    k, c, t = params.k, params.c, params.t
    return k * math.log(c) + _logsumexp([
        -t * c ** -i + (params.witnesses_needed(i) + i) * math.log(t) for i in range(0, k + 1)
    ])


def log_closed_form(params: LemmaParams) -> float:
    """Log of (c/(c-1)) e^(-ck^2) k^(2+2k) c^((k+1)^2+k), meaningful for c >= 2."""
    k, c = params.k, params.c
    if c < 2:
        return math.inf
    return math.log(c / (c - 1)) - c * k * k + (2 + 2 * k) * math.log(k) + ((k + 1) ** 2 + k) * math.log(c)


def log_ratio_margin(params: LemmaParams) -> float:
    """
    Log of the smallest ratio of consecutive power-chain terms minus log c;
    positive means every ratio exceeds c.
    """
    k, c, t = params.k, params.c, params.t
    return t * (c - 1) * c ** -k - (k - 2) * math.log(t) - math.log(c)


def lemma_inequalities(k: int, c: int) -> Tuple[float, float]:
    """
    Left-minus-right margins of the two logarithmic inequalities behind the
    existence argument; both positive for k >= 4, c >= 3.

    Args:
        k (int): Degree bound, at least 1
        c (int): Alphabet size, at least 2

    Returns:
        Tuple[float, float]: (margin1, margin2)
    """
    if k < 1 or c < 2:
        raise ValueError(f"need k >= 1 and c >= 2, got k={k}, c={c}")
    margin1 = k * k * (c - 1) * c - ((2 * k - 4) * math.log(k) + ((k + 1) * (k - 2) + 1) * math.log(c))
    margin2 = (math.log(c - 1) + c * k * k) - ((2 * k + 2) * math.log(k) + (k + 1) * (k + 2) * math.log(c))
    return margin1, margin2


@dataclass(frozen=True)
class ProbabilityLedger:
    """
    Everything the existence argument computes for one (k, c, t). Exact
    entries are None when t exceeds the rational backend's limit.
    """
    params: LemmaParams
    tails: Tuple[float, ...]
    tails_exact: Optional[Tuple[Fraction, ...]]
    union_bound: float
    log_union_bound: float
    union_bound_exact: Optional[Fraction]
    log_chained_bound: float
    log_power_chain: float
    log_closed_form: float
    log_ratio_margin: float
    margin1: Optional[float]
    margin2: Optional[float]

    def layers_frame(self) -> pd.DataFrame:
        rows = []
        for i, tail in enumerate(self.tails, start=1):
            rows.append({
                'i': i,
                'b': self.params.witnesses_needed(i),
                'events': math.comb(self.params.t, i) * self.params.c ** i,
                'tail_log': repr(tail),
                'tail_exact': 'n/a' if self.tails_exact is None else repr(float(self.tails_exact[i - 1])),
            })
        return pd.DataFrame(rows)

    def summary_frame(self) -> pd.DataFrame:
        exact = 'n/a' if self.union_bound_exact is None else repr(float(self.union_bound_exact))
        rows = [
            ('k', self.params.k),
            ('c', self.params.c),
            ('t', self.params.t),
            ('union_bound_log', repr(self.union_bound)),
            ('union_bound_exact', exact),
            ('ln_union_bound', repr(self.log_union_bound)),
            ('ln_chained_bound', repr(self.log_chained_bound)),
            ('ln_power_chain', repr(self.log_power_chain)),
            ('ln_closed_form', repr(self.log_closed_form)),
            ('ln_ratio_margin', repr(self.log_ratio_margin)),
            ('margin1', 'n/a' if self.margin1 is None else repr(self.margin1)),
            ('margin2', 'n/a' if self.margin2 is None else repr(self.margin2)),
        ]
        return pd.DataFrame(rows, columns=['quantity', 'value'])


def probability_ledger(params: LemmaParams, exact_limit: int = 5000) -> ProbabilityLedger:
    """
    Evaluate every quantity of the existence argument with both backends.

    Args:
        params (LemmaParams): k, c, t
        exact_limit (int): Largest t evaluated with Fractions

    Returns:
        ProbabilityLedger: The ledger
    """
    k = params.k
    tails = tuple(tail_probability(params, i) for i in range(1, k + 1))
    tails_exact = None
    union_exact = None
    if params.t <= exact_limit:
        logger.debug(f"Exact rational evaluation for t={params.t}")
        tails_exact = tuple(tail_probability(params, i, EXACT) for i in range(1, k + 1))
        union_exact = sum((math.comb(params.t, i) * params.c ** i * tails_exact[i - 1] for i in range(1, k + 1)),
                          Fraction(0))
    margins = lemma_inequalities(k, params.c) if params.c >= 2 else (None, None)
    log_union = log_union_bound(params)
    return ProbabilityLedger(
        params=params,
        tails=tails,
        tails_exact=tails_exact,
        union_bound=math.exp(log_union),
        log_union_bound=log_union,
        union_bound_exact=union_exact,
        log_chained_bound=log_chained_bound(params),
        log_power_chain=log_power_chain(params),
        log_closed_form=log_closed_form(params),
        log_ratio_margin=log_ratio_margin(params),
        margin1=margins[0],
        margin2=margins[1],
    )


def layered_property_check(H: MixedGraph, k: int, mode: str = 'auto', work_budget: float = 1e10,
                           sample_trials: int = 10000, seed: Optional[int] = None,
                           jobs: int = 1) -> List[PropertyReport]:
    """
    Check P_{i,(k-i)(k-1)+1} for i = 1..k on a complete target. Each layer
    only inspects |X| = i; smaller sets are covered by the earlier layers,
    whose thresholds are larger.

    Args:
        H (MixedGraph): Complete mixed graph
        k (int): Degree bound
        mode (str): 'auto' (exhaustive where the work fits the budget), 'exhaustive' or 'sampled'
        work_budget (float): Largest C(t,i) c^i t checked exhaustively in auto mode
        sample_trials (int): Draws per layer in sampled mode
        seed (Optional[int]): Seed for sampled layers
        jobs (int): Worker processes for exhaustive layers

    Returns:
        List[PropertyReport]: One report per layer
    """
    if not is_complete_subgraph(H, range(H.p)):
        raise CodeDomainError("layered property check needs a complete target")
    if mode not in ('auto', EXHAUSTIVE, SAMPLED):
        raise ValueError(f"unknown mode '{mode}'")
    reports = []
    for i in range(1, k + 1):
        b = (k - i) * (k - 1) + 1
        layer_mode = mode
        if mode == 'auto':
            layer_mode = EXHAUSTIVE if property_work(H.p, i, H.spec.c) <= work_budget else SAMPLED
        layer_seed = None if seed is None else int(np.random.SeedSequence([seed, i]).generate_state(1)[0])
        report = has_property_P(H, i, b, layer_mode, trials=sample_trials, seed=layer_seed, jobs=jobs,
                                from_size=i)
        reports.append(report)
        logger.debug(f"Layer {i}: P_{{{i},{b}}} {'holds' if report.holds else 'fails'} ({report.mode_label()})")
        if not report.holds:
            break
    return reports


@dataclass(frozen=True)
class TargetSearch:
    """A target that passed every layer, with the trial that produced it."""
    graph: MixedGraph
    k: int
    trial: int
    seed: int
    trial_seed: int
    reports: Tuple[PropertyReport, ...]

    @property
    def certified(self) -> bool:
        return all(report.certified for report in self.reports)

    def header(self) -> List[str]:
        lines = [f"target k={self.k} t={self.graph.p} seed={self.seed} trial={self.trial}"]
        for report in self.reports:
            lines.append(f"layer P_{{{report.a},{report.b}}} {report.mode_label()}")
        return lines


class TargetFinder:
    """
    Rejection sampling of random complete targets with the layered property.
    """

    def __init__(self, config: Optional[Dict] = None):
        """
        Initialize the finder with configuration.

        Args:
            config (Optional[Dict]): Configuration dictionary from config.yaml
        """
        self.config = config or default_config()
        self.work_budget = float(self.config['property']['work_budget'])
        self.sample_trials = int(self.config['property']['sample_trials'])
        self.jobs = int(self.config['property']['jobs'])

    @staticmethod
    def trial_seed(seed: int, trial: int) -> int:
        return int(np.random.SeedSequence([seed, trial]).generate_state(1)[0])

    def find_target(self, spec: ColourSpec, k: int, t: int, max_trials: int, seed: int) -> Optional[TargetSearch]:
        """
        The first random complete graph on t vertices, in trial order, whose
        layers all pass in the strongest affordable mode.

        Args:
            spec (ColourSpec): Colour specification
            k (int): Degree bound
            t (int): Target order
            max_trials (int): Number of graphs drawn at most
            seed (int): Master seed; trial j uses SeedSequence([seed, j])

        Returns:
            Optional[TargetSearch]: The accepted target, or None
        """
        if k < 1 or t < k:
            raise ValueError(f"need k >= 1 and t >= k, got k={k}, t={t}")
        # every code must be seen from some vertex by (k-1)^2 + 1 others
        if t - 1 < spec.c * ((k - 1) ** 2 + 1):
            logger.info(f"t={t} is too small to host the layer-1 witnesses for k={k}")
            return None

        logger.info(f"Searching targets: m={spec.m}, n={spec.n}, k={k}, t={t}, up to {max_trials} trials")
        for trial in range(max_trials):
            trial_seed = self.trial_seed(seed, trial)
            H = random_complete(spec, t, trial_seed)
            reports = layered_property_check(H, k, 'auto', self.work_budget, self.sample_trials,
                                             trial_seed, self.jobs)
            if len(reports) == k and all(report.holds for report in reports):
                logger.info(f"Trial {trial} produced a target")
                return TargetSearch(H, k, trial, seed, trial_seed, tuple(reports))
        logger.info(f"No target found in {max_trials} trials")
        return None


@dataclass(frozen=True)
class GreedyStep:
    vertex: int
    W: Tuple[int, ...]
    b: Tuple[int, ...]
    X_size: int
    Y_size: int
    Z_size: int
    image: Optional[int]

    def to_row(self) -> dict:
        return {
            'vertex': self.vertex,
            'W': ','.join(map(str, self.W)),
            'b': ','.join(map(str, self.b)),
            'X': self.X_size,
            'Y': self.Y_size,
            'Z': self.Z_size,
            'image': '' if self.image is None else self.image,
        }


@dataclass(frozen=True)
class GreedyTrace:
    """
    Steps of the greedy extension. `stuck_at` is the step index where no
    candidate remained, None when the whole graph was mapped.
    """
    order: Tuple[int, ...]
    steps: Tuple[GreedyStep, ...]
    stuck_at: Optional[int] = None
    colouring: Optional[VertexMap] = field(default=None)

    @property
    def succeeded(self) -> bool:
        return self.colouring is not None

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([step.to_row() for step in self.steps])


def greedy_colouring(G: MixedGraph, H: MixedGraph, k: int) -> GreedyTrace:
    """
    Map G into a complete target vertex by vertex in id order.

    For vertex v: W are its mapped neighbours, b their codes seen from v,
    X the vertices x of H outside f(W) with a_H(x, f(W)) = b, Y its unmapped
    neighbours and Z the mapped vertices adjacent to some vertex of Y.
    v goes to the least vertex of X - f(Z), which keeps the images of the
    mapped neighbours of every unmapped vertex pairwise distinct.

    Args:
        G (MixedGraph): Source graph of maximum degree at most k
        H (MixedGraph): Complete target
        k (int): Degree bound

    Returns:
        GreedyTrace: Steps and outcome; getting stuck is an outcome
    """
    if G.spec != H.spec:
        raise CodeDomainError(f"colour specifications differ: {G.spec} vs {H.spec}")
    if max_degree(G) > k:
        raise ValueError(f"maximum degree {max_degree(G)} exceeds k={k}")
    if not is_complete_subgraph(H, range(H.p)):
        raise CodeDomainError("greedy colouring needs a complete target")

    order = tuple(range(G.p))
    image = [-1] * G.p
    steps = []
    for step, v in enumerate(order):
        W = tuple(w for w in G.neighbours(v) if image[w] != -1)
        b = tuple(int(G.code[v, w]) for w in W)
        fW = [image[w] for w in W]
        candidates = np.ones(H.p, dtype=bool)
        candidates[fW] = False
        for target, code in zip(fW, b):
            candidates &= H.code[:, target] == code
        X_size = int(np.count_nonzero(candidates))

        Y = [y for y in G.neighbours(v) if image[y] == -1]
        Z = sorted({z for y in Y for z in G.neighbours(y) if image[z] != -1 and z != v})
        candidates[[image[z] for z in Z]] = False
        free = np.flatnonzero(candidates)
        if len(set(fW)) != len(fW) or free.size == 0:
            steps.append(GreedyStep(v, W, b, X_size, len(Y), len(Z), None))
            logger.info(f"Greedy colouring stuck at vertex {v} (|X|={X_size}, |Z|={len(Z)})")
            return GreedyTrace(order, tuple(steps), stuck_at=step)
        image[v] = int(free[0])
        steps.append(GreedyStep(v, W, b, X_size, len(Y), len(Z), image[v]))

    f = VertexMap(G, H, image)
    if not is_homomorphism(f):
        raise RuntimeError("greedy colouring produced an invalid map")
    return GreedyTrace(order, tuple(steps), colouring=f)


def greedy_invariant_holds(G: MixedGraph, trace: GreedyTrace) -> bool:
    """
    Replay a trace and confirm that after every step the mapped neighbours
    of each unmapped vertex have pairwise distinct images.
    """
    image: Dict[int, int] = {}
    position = {v: pos for pos, v in enumerate(trace.order)}
    for step in trace.steps:
        if step.image is None:
            break
        image[step.vertex] = step.image
        for y in trace.order[position[step.vertex] + 1:]:
            seen = [image[u] for u in G.neighbours(y) if u in image]
            if len(seen) != len(set(seen)):
                return False
    return True
