#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Command-line interface.

    python -m scripts.cli [--config PATH] [-v|-q] [--jobs N] [--pretty] <subcommand> ...

Results go to stdout (graph text format or TSV), diagnostics to stderr.
Exit codes: 0 success, 1 the answer is none/false, 2 usage or input error.
"""

import argparse
import logging
import sys
from typing import Dict, List, Optional

import pandas as pd
from tabulate import tabulate

from scripts.bounds import bounds
from scripts.constructive import (OneFactorization, UniversalColourer, build_H, build_Z, cyclic_factorization,
                                  shuffled_factorization)
from scripts.probabilistic import LOG, LemmaParams, TargetFinder, greedy_colouring, probability_ledger
from scripts.properties import EXHAUSTIVE, SAMPLED, has_property_P
from scripts.repro import ReproRunner
from scripts.solver import ChromaticSolver, is_homomorphism
from utils.config_utils import load_config
from utils.errors import MixedGraphError, TheoremViolation
from utils.generators import random_bounded_degree, random_complete
from utils.graph_io import (parse_map, parse_witness, read_graph, serialize_graph, serialize_map,
                            serialize_witness, write_text)
from utils.mixed_graph import ColourSpec

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

EXPERIMENTS = ['p5', 'oracle', 'proposition', 'universal', 'delta-one', 'inequalities', 'union-bound', 'greedy',
               'properties', 'all']


def _frame_text(frame: pd.DataFrame, pretty: bool) -> str:
    if pretty:
        return tabulate(frame, headers='keys', tablefmt='github', showindex=False) + "\n"
    return frame.to_csv(sep='\t', index=False)


def _read_text(path: str) -> str:
    if path == '-':
        return sys.stdin.read()
    with open(path, 'r') as file:
        return file.read()


def _factorization(args, spec: ColourSpec, config: Dict) -> OneFactorization:
    if getattr(args, 'factorization', None):
        fac = OneFactorization.from_text(_read_text(args.factorization))
    elif getattr(args, 'shuffle', False) or config['universal']['factorization'] == 'shuffled':
        if args.seed is None:
            raise MixedGraphError("a shuffled factorization needs --seed")
        fac = shuffled_factorization(spec.c, args.seed)
    else:
        fac = cyclic_factorization(spec.c)
    return fac


def cmd_chi(args, config: Dict) -> int:
    G = read_graph(args.graph)
    solver = ChromaticSolver(config)
    if args.verify:
        chi, target, f = parse_witness(_read_text(args.verify), G)
        valid = solver.verify_witness(G, f) and target.p == chi
        optimal = valid and solver.chromatic_number(G).chi == chi
        write_text(f"{'valid' if valid else 'invalid'}\n{'optimal' if optimal else 'not optimal'}\n", args.output)
        return 0 if valid and optimal else 1
    result = solver.chromatic_number(G)
    write_text(serialize_witness(result.chi, result.witness_target, result.witness_map), args.output)
    return 0


def cmd_hom(args, config: Dict) -> int:
    G = read_graph(args.source)
    H = read_graph(args.target)
    if args.map:
        f = parse_map(_read_text(args.map), G, H)
        valid = is_homomorphism(f)
        write_text(f"{'valid' if valid else 'invalid'}\n", args.output)
        return 0 if valid else 1
    f = ChromaticSolver(config).find_homomorphism(G, H)
    if f is None:
        write_text("none\n", args.output)
        return 1
    write_text(serialize_map(f), args.output)
    return 0


def cmd_build_h(args, config: Dict) -> int:
    spec = ColourSpec(args.m, args.n)
    fac = _factorization(args, spec, config)
    H = build_H(spec, fac)
    write_text(serialize_graph(H, [f"H m={spec.m} n={spec.n} factorization={fac.name}"]), args.output)
    return 0


def cmd_build_z(args, config: Dict) -> int:
    spec = ColourSpec(args.m, args.n)
    fac = _factorization(args, spec, config)
    Z = build_Z(spec, args.q, build_H(spec, fac))
    comments = [f"Z m={spec.m} n={spec.n} q={args.q} factorization={fac.name}"]
    comments.extend(f"factor {i + 1}: {' '.join(map(str, perm))}" for i, perm in enumerate(fac.perms))
    if args.labels:
        comments.extend(f"vertex {v} = {label}" for v, label in enumerate(Z.labels))
    write_text(serialize_graph(Z, comments), args.output)
    return 0


def cmd_check_p(args, config: Dict) -> int:
    G = read_graph(args.graph)
    if args.mode == SAMPLED and args.seed is None:
        raise MixedGraphError("sampled mode needs --seed")
    report = has_property_P(G, args.a, args.b, args.mode, trials=args.trials or config['property']['sample_trials'],
                            seed=args.seed, jobs=config['property']['jobs'])
    write_text(_frame_text(pd.DataFrame([report.to_row()]), args.pretty), args.output)
    return 0 if report.holds else 1


def cmd_universal(args, config: Dict) -> int:
    G = read_graph(args.graph)
    fac = _factorization(args, G.spec, config)
    q = 2 * args.k - 1
    Z = build_Z(G.spec, q, build_H(G.spec, fac))
    colourer = UniversalColourer(config)
    f = colourer.universal_colouring(G, Z, q, args.k)
    lines = [f"# target Z m={G.spec.m} n={G.spec.n} q={q} factorization={fac.name} vertices={Z.p}",
             f"# backtracks={colourer.stats['backtracks']} fallbacks={colourer.stats['fallbacks']}"]
    lines.extend(f"map {v} {x}  # {Z.labels[x]}" for v, x in enumerate(f.image))
    write_text("\n".join(lines) + "\n", args.output)
    return 0


def cmd_greedy(args, config: Dict) -> int:
    G = read_graph(args.source)
    H = read_graph(args.target)
    trace = greedy_colouring(G, H, args.k)
    text = _frame_text(trace.to_frame(), args.pretty) + "\n" if args.trace else ""
    if not trace.succeeded:
        write_text(text + f"stuck {trace.stuck_at}\n", args.output)
        return 1
    write_text(text + serialize_map(trace.colouring), args.output)
    return 0


def cmd_find_target(args, config: Dict) -> int:
    spec = ColourSpec(args.m, args.n)
    trials = args.trials or config['find_target']['max_trials']
    found = TargetFinder(config).find_target(spec, args.k, args.t, trials, args.seed)
    if found is None:
        write_text("none\n", args.output)
        return 1
    write_text(serialize_graph(found.graph, found.header()), args.output)
    return 0


def cmd_prob(args, config: Dict) -> int:
    params = LemmaParams(args.k, args.c, args.t)
    exact_limit = config['probability']['exact_limit'] if args.backend != LOG else -1
    ledger = probability_ledger(params, exact_limit)
    text = _frame_text(ledger.summary_frame(), args.pretty)
    if args.layers:
        text += "\n" + _frame_text(ledger.layers_frame(), args.pretty)
    write_text(text, args.output)
    return 0


def cmd_bounds(args, config: Dict) -> int:
    write_text(_frame_text(bounds(args.delta, ColourSpec(args.m, args.n)).to_frame(), args.pretty), args.output)
    return 0


def cmd_gen(args, config: Dict) -> int:
    spec = ColourSpec(args.m, args.n)
    if args.kind == 'bounded':
        G = random_bounded_degree(spec, args.p, args.max_degree, args.edge_probability, args.seed)
        comment = (f"random bounded m={spec.m} n={spec.n} p={args.p} max_degree={args.max_degree} "
                   f"edge_probability={args.edge_probability} seed={args.seed}")
    else:
        G = random_complete(spec, args.p, args.seed)
        comment = f"random complete m={spec.m} n={spec.n} t={args.p} seed={args.seed}"
    write_text(serialize_graph(G, [comment]), args.output)
    return 0


def cmd_repro(args, config: Dict) -> int:
    runner = ReproRunner(config)
    names = list(runner.experiments) if 'all' in args.names else args.names
    results = [runner.run(name) for name in names]
    header = f"# repro seed={runner.seed} instances={runner.instances}\n"
    if len(results) == 1:
        write_text(header + results[0].to_text(), args.output)
    else:
        write_text(header + "".join(f"== {result.name}\n{result.to_text()}" for result in results), args.output)
    return 0 if all(result.ok for result in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='mixcol', description="(m,n)-mixed graph colouring toolkit")
    parser.add_argument("--config", help="Path to the YAML configuration file")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging")
    parser.add_argument("--quiet", "-q", action="store_true", help="Warnings and errors only")
    parser.add_argument("--jobs", type=int, help="Worker processes for exhaustive property checks")
    parser.add_argument("--pretty", action="store_true", help="Render tables with tabulate instead of TSV")
    parser.add_argument("--output", "-o", help="Write results to this file instead of stdout")
    sub = parser.add_subparsers(dest='command', required=True)

    def spec_args(p, required=True):
        p.add_argument("-m", type=int, required=required, help="Number of edge colours")
        p.add_argument("-n", type=int, required=required, help="Number of arc colours")

    def factorization_args(p):
        p.add_argument("--factorization", help="Factorization file")
        p.add_argument("--shuffle", action="store_true", help="Use a shuffled factorization (needs --seed)")
        p.add_argument("--seed", type=int)

    p = sub.add_parser('chi', help="Exact chromatic number with a witness")
    p.add_argument("graph")
    p.add_argument("--verify", metavar="WITNESS", help="Check a witness file instead")
    p.set_defaults(handler=cmd_chi)

    p = sub.add_parser('hom', help="Find a homomorphism between two graphs")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--map", help="Check this map file instead of searching")
    p.set_defaults(handler=cmd_hom)

    p = sub.add_parser('build-h', help="Emit the bipartite graph of a 1-factorization")
    spec_args(p)
    factorization_args(p)
    p.set_defaults(handler=cmd_build_h)

    p = sub.add_parser('build-z', help="Emit Z_{m,n,q}")
    spec_args(p)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--labels", action="store_true", help="List vertex labels in the header")
    factorization_args(p)
    p.set_defaults(handler=cmd_build_z)

    p = sub.add_parser('check-p', help="Property P_{a,b} report")
    p.add_argument("graph")
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("--mode", choices=[EXHAUSTIVE, SAMPLED], default=EXHAUSTIVE)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(handler=cmd_check_p)

    p = sub.add_parser('universal', help="Constructive colouring into Z_{m,n,2k-1}")
    p.add_argument("graph")
    p.add_argument("-k", type=int, required=True)
    factorization_args(p)
    p.set_defaults(handler=cmd_universal)

    p = sub.add_parser('greedy', help="Greedy colouring against a complete target")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--trace", action="store_true", help="Print the step table first")
    p.set_defaults(handler=cmd_greedy)

    p = sub.add_parser('find-target', help="Rejection sampling of a target with the layered property")
    spec_args(p)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-t", type=int, required=True)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(handler=cmd_find_target)

    p = sub.add_parser('prob', help="Probability ledger of the existence argument")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-c", type=int, required=True)
    p.add_argument("-t", type=int)
    p.add_argument("--backend", choices=[LOG, 'both'], default='both')
    p.add_argument("--layers", action="store_true", help="Also print the per-layer table")
    p.set_defaults(handler=cmd_prob)

    p = sub.add_parser('bounds', help="Degree bounds on the mixed chromatic number")
    p.add_argument("--delta", type=int, required=True)
    spec_args(p)
    p.set_defaults(handler=cmd_bounds)

    p = sub.add_parser('gen', help="Random instance generators")
    p.add_argument("kind", choices=['bounded', 'complete'])
    spec_args(p)
    p.add_argument("-p", type=int, required=True, help="Number of vertices")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--edge-probability", type=float, default=0.5)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser('repro', help="Run named experiments")
    p.add_argument("names", nargs='+', choices=EXPERIMENTS)
    p.set_defaults(handler=cmd_repro)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments and run one subcommand.

    Args:
        argv (Optional[List[str]]): Arguments without the program name

    Returns:
        int: Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    root = logging.getLogger()
    if args.verbose:
        root.setLevel(logging.DEBUG)
    elif args.quiet:
        root.setLevel(logging.WARNING)

    try:
        config = load_config(args.config)
        if not args.verbose and not args.quiet:
            root.setLevel(config['logging']['level'])
        if args.jobs:
            config['property']['jobs'] = args.jobs
        return args.handler(args, config)
    except (ValueError, OSError) as e:
        logger.error(f"{args.command}: {str(e)}")
        print(f"error: {str(e)}", file=sys.stderr)
        return 2
    except TheoremViolation as e:
        logger.error(f"{args.command}: {str(e)}")
        print(f"theorem violation: {str(e)}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
