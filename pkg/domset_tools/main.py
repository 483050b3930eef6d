import argparse
import csv
import sys
from typing import Iterable, List, Optional

from . import __version__, utils
from .bench import BenchError, emit_report, read_bench_spec, run_bench
from .bench.BenchReport import BenchReportError
from .bench.BenchSpec import BenchSpecError
from .dynamic import DynamicError, DynamicState, read_updates, replay_updates
from .engine import EngineError, RunConfig, read_solution, write_solution
from .engine.RunConfig import RunConfigError
from .graph import (
    Graph,
    GraphError,
    GraphFileError,
    LoadOptions,
    LoadOptionsError,
    load_graph,
)
from .kdistance import KConfig, KDistanceError, solve_kdistance
from .logging import logger
from .oracles import (
    OracleError,
    exact_mds,
    is_dominating,
    is_k_dominating,
    run_ratio_trials,
    summarize_trials,
)
from .setcover import SetSystemError, read_set_system, solve_setcover

LIBRARY_ERRORS = (
    BenchError,
    BenchReportError,
    BenchSpecError,
    DynamicError,
    EngineError,
    GraphError,
    GraphFileError,
    KDistanceError,
    LoadOptionsError,
    OracleError,
    RunConfigError,
    SetSystemError,
    utils.UtilsError,
)


def _add_graph_args(parser: argparse.ArgumentParser, flag: str = '--input'):
    parser.add_argument(
        flag, metavar='FILE', required=True, help='Graph file. May be gzipped.'
    )
    parser.add_argument(
        '--format',
        default=None,
        help=(
            'Graph format: edgelist, dimacs or mtx. Inferred from the extension '
            'if not given.'
        )
    )
    parser.add_argument(
        '--reject-directed',
        action='store_true',
        help='Reject graphs that declare themselves directed.'
    )


def _add_run_args(parser: argparse.ArgumentParser):
    parser.add_argument(
        '--m', type=int, default=0, help='Refinement rounds (default: 0)'
    )
    parser.add_argument(
        '--seed', type=int, default=0, help='Random seed (default: 0)'
    )
    parser.add_argument(
        '--isolated',
        default='error',
        help=(
            'What to do with isolated vertices: error or include '
            '(default: error)'
        )
    )


def _load(args: argparse.Namespace, path: Optional[str] = None) -> Graph:
    path = path or args.input
    kwargs = {'treat_directed_as_undirected': not args.reject_directed}
    opts = LoadOptions(args.format, **kwargs) if args.format else \
        LoadOptions.infer(path, **kwargs)
    return load_graph(path, opts)


def _write_rows(rows: Iterable[dict], path: Optional[str]):
    rows = list(rows)
    if not rows:
        return
    f = utils.open_as_text(path, 'w') if path else sys.stdout
    try:
        writer = csv.DictWriter(f, fieldnames=list(rows[0]), lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if path:
            f.close()


def setup_solve_args(parser: argparse._SubParsersAction):
    parser_solve = parser.add_parser(
        'solve',
        description='Compute a total dominating set by local marking.',
        help='Compute a total dominating set by local marking',
    )
    _add_graph_args(parser_solve)
    _add_run_args(parser_solve)
    parser_solve.add_argument(
        '--k', type=int, default=1, help='Neighborhood radius (default: 1)'
    )
    parser_solve.add_argument(
        '--mode',
        default='seq',
        help='Execution mode: seq or sim (default: seq)'
    )
    parser_solve.add_argument(
        '--threads',
        type=int,
        default=1,
        help='Threads used within a round in seq mode (default: 1)'
    )
    parser_solve.add_argument(
        '--emit-marked',
        action='store_true',
        help='Include the marked node ids in the output'
    )
    parser_solve.add_argument(
        '--out', metavar='JSON', default=None, help='Output solution JSON'
    )
    return parser_solve


def parse_solve(args: argparse.Namespace) -> int:
    graph = _load(args)
    config = RunConfig(
        seed=args.seed,
        m=args.m,
        mode=args.mode,
        isolated_policy=args.isolated,
        n_threads=args.threads,
    )
    solution = solve_kdistance(graph, KConfig(k=args.k, base=config))
    logger.info(
        f'Marked {solution.size} of {graph.n} nodes in {solution.rounds} '
        f'rounds ({solution.messages} messages, {solution.elapsed:.4f}s)'
    )
    if args.out:
        write_solution(
            solution,
            args.out,
            graph=graph,
            instance=args.input,
            emit_marked=args.emit_marked
        )
        logger.info(f'Wrote solution to {args.out}')
    return 0


def setup_bench_args(parser: argparse._SubParsersAction):
    parser_bench = parser.add_parser(
        'bench',
        description='Run a benchmark described by a TOML file.',
        help='Run a benchmark described by a TOML file',
    )
    parser_bench.add_argument(
        '--spec', metavar='TOML', required=True, help='Benchmark specification'
    )
    parser_bench.add_argument(
        '--out',
        metavar='FILE',
        required=True,
        help='Output report (.csv, .json or .md)'
    )
    parser_bench.add_argument(
        '--threads',
        type=int,
        default=1,
        help='Seeds solved in parallel (default: 1)'
    )
    return parser_bench


def parse_bench(args: argparse.Namespace) -> int:
    spec = read_bench_spec(args.spec)
    report = run_bench(spec, n_threads=args.threads, show_progress=True)
    emit_report(report, args.out)
    logger.info(f'Wrote {len(report)} rows to {args.out}')
    return 1 if report.failures else 0


def setup_verify_args(parser: argparse._SubParsersAction):
    parser_verify = parser.add_parser(
        'verify',
        description='Check a solution against a graph.',
        help='Check a solution against a graph',
    )
    _add_graph_args(parser_verify, '--graph')
    parser_verify.add_argument(
        '--solution', metavar='JSON', required=True, help='Solution JSON'
    )
    parser_verify.add_argument(
        '--total',
        action='store_true',
        help='Check total domination of the non-isolated part'
    )
    parser_verify.add_argument(
        '--k', type=int, default=1, help='Distance (default: 1)'
    )
    return parser_verify


def parse_verify(args: argparse.Namespace) -> int:
    graph = _load(args, args.graph)
    solution = read_solution(args.solution)
    if solution.marked.size and solution.marked[-1] >= graph.n:
        raise EngineError(
            f'Solution references node {solution.marked[-1]}, '
            f'but the graph has {graph.n} nodes'
        )
    if args.k == 1 and not args.total:
        valid = is_dominating(graph, solution.marked)
    else:
        valid = is_k_dominating(
            graph,
            solution.marked,
            args.k,
            total=args.total,
            ignore_isolated=args.total
        )
    kind = 'total dominating' if args.total else 'dominating'
    if args.k > 1:
        kind = f'{args.k}-distance {kind}'
    if valid:
        logger.info(f'Solution of size {solution.size} is a valid {kind} set')
        return 0
    logger.error(f'Solution of size {solution.size} is NOT a {kind} set')
    return 1


def setup_exact_args(parser: argparse._SubParsersAction):
    parser_exact = parser.add_parser(
        'exact',
        description='Exact minimum (total) dominating set of a small graph.',
        help='Exact minimum (total) dominating set of a small graph',
    )
    _add_graph_args(parser_exact)
    parser_exact.add_argument(
        '--total',
        action='store_true',
        help='Only compute the minimum total dominating set'
    )
    parser_exact.add_argument(
        '--budget',
        type=int,
        default=24,
        help='Maximum number of nodes (default: 24)'
    )
    parser_exact.add_argument(
        '--out', metavar='JSON', default=None, help='Output JSON'
    )
    return parser_exact


def parse_exact(args: argparse.Namespace) -> int:
    graph = _load(args)
    result = exact_mds(graph, total=True if args.total else None,
                       budget=args.budget)
    logger.info(f'gamma={result.gamma} gamma_t={result.gamma_t}')
    if args.out:
        data = {
            'instance': args.input,
            'n': graph.n,
            'gamma': result.gamma,
            'gamma_t': result.gamma_t,
            'witnesses': {
                kind: witness.tolist()
                for kind, witness in result.witnesses.items()
            },
        }
        utils.write_json(data, args.out, indent=2)
    return 0


def setup_dynamic_args(parser: argparse._SubParsersAction):
    parser_dynamic = parser.add_parser(
        'dynamic',
        description=(
            'Replay edge updates and report the solution size after each.'
        ),
        help='Replay edge updates and report the solution size after each',
    )
    _add_graph_args(parser_dynamic)
    _add_run_args(parser_dynamic)
    parser_dynamic.add_argument(
        '--updates',
        metavar='FILE',
        required=True,
        help='Update stream of `+ u v` and `- u v` lines'
    )
    parser_dynamic.add_argument(
        '--out',
        metavar='CSV',
        default=None,
        help='Output size-over-time CSV (default: standard output)'
    )
    return parser_dynamic


def parse_dynamic(args: argparse.Namespace) -> int:
    graph = _load(args)
    updates = read_updates(args.updates)
    config = RunConfig(
        seed=args.seed, m=args.m, isolated_policy=args.isolated
    )
    if config.m > 0:
        logger.warning(
            f'Incremental maintenance requires m=0. Recomputing from scratch '
            f'after every update with m={config.m}.'
        )
    state = DynamicState(graph, config)
    rows = [row._asdict() for row in replay_updates(state, updates)]
    _write_rows(rows, args.out)
    logger.info(
        f'Replayed {len(updates)} updates. Final solution size '
        f'{rows[-1]["size"]}'
    )
    return 0


def setup_ratio_trials_args(parser: argparse._SubParsersAction):
    parser_ratio = parser.add_parser(
        'ratio-trials',
        description=(
            'Compare solution sizes against exact optima on random '
            'triangle-free planar graphs.'
        ),
        help='Approximation ratios on random triangle-free planar graphs',
    )
    parser_ratio.add_argument(
        '--trials', type=int, default=100, help='Number of trials'
    )
    parser_ratio.add_argument(
        '--m', type=int, default=0, help='Refinement rounds (default: 0)'
    )
    parser_ratio.add_argument(
        '--seed', type=int, default=0, help='First seed (default: 0)'
    )
    parser_ratio.add_argument(
        '--n-min', type=int, default=6, help='Minimum nodes (default: 6)'
    )
    parser_ratio.add_argument(
        '--n-max', type=int, default=20, help='Maximum nodes (default: 20)'
    )
    parser_ratio.add_argument(
        '--density',
        type=float,
        default=0.8,
        help='Grid edge density (default: 0.8)'
    )
    parser_ratio.add_argument(
        '--threads', type=int, default=1, help='Parallel workers (default: 1)'
    )
    parser_ratio.add_argument(
        '--out',
        metavar='CSV',
        default=None,
        help='Output CSV of ratios (default: standard output)'
    )
    return parser_ratio


def parse_ratio_trials(args: argparse.Namespace) -> int:
    trials = run_ratio_trials(
        args.trials,
        args.m,
        seed=args.seed,
        n_range=(args.n_min, args.n_max),
        density=args.density,
        n_threads=args.threads,
        show_progress=True,
    )
    _write_rows([trial._asdict() for trial in trials], args.out)
    for row in summarize_trials(trials):
        logger.info(
            f'm={row["m"]}: {row["trials"]} trials, max ratio '
            f'{row["max_ratio_mtds"]:.3f} (total) {row["max_ratio_mds"]:.3f}, '
            f'mean size {row["mean_size"]:.2f}'
        )
    return 0


def setup_setcover_args(parser: argparse._SubParsersAction):
    parser_setcover = parser.add_parser(
        'setcover',
        description='Compute a set cover by local marking.',
        help='Compute a set cover by local marking',
    )
    parser_setcover.add_argument(
        '--input',
        metavar='FILE',
        required=True,
        help=(
            'Set system: `n_elements n_subsets`, then one line of 1-based '
            'element ids per subset'
        )
    )
    parser_setcover.add_argument(
        '--m', type=int, default=0, help='Refinement rounds (default: 0)'
    )
    parser_setcover.add_argument(
        '--seed', type=int, default=0, help='Random seed (default: 0)'
    )
    parser_setcover.add_argument(
        '--out', metavar='JSON', default=None, help='Output JSON'
    )
    return parser_setcover


def parse_setcover(args: argparse.Namespace) -> int:
    system = read_set_system(args.input)
    cover = solve_setcover(system, RunConfig(seed=args.seed, m=args.m))
    logger.info(
        f'Picked {cover.size} of {system.n_subsets} subsets covering '
        f'{system.n_elements} elements'
    )
    if args.out:
        data = {
            'instance': args.input,
            'n_elements': system.n_elements,
            'n_subsets': system.n_subsets,
            'seed': args.seed,
            'm': args.m,
            'size': int(cover.size),
            'subsets': cover.tolist(),
        }
        utils.write_json(data, args.out, indent=2)
    return 0


COMMAND_TO_FUNCTION = {
    'solve': parse_solve,
    'bench': parse_bench,
    'verify': parse_verify,
    'exact': parse_exact,
    'dynamic': parse_dynamic,
    'ratio-trials': parse_ratio_trials,
    'setcover': parse_setcover,
}


def main(argv: Optional[List[str]] = None):
    parser = argparse.ArgumentParser(
        prog='domset',
        description=f'domset-tools {__version__}: local dominating set solvers',
    )
    parser.add_argument(
        '--verbose', action='store_true', help='Print debugging information'
    )
    subparsers = parser.add_subparsers(dest='command', metavar='<command>')
    subparsers.required = True
    setup_solve_args(subparsers)
    setup_bench_args(subparsers)
    setup_verify_args(subparsers)
    setup_exact_args(subparsers)
    setup_dynamic_args(subparsers)
    setup_ratio_trials_args(subparsers)
    setup_setcover_args(subparsers)

    args = parser.parse_args(argv)
    logger.set_verbose(args.verbose)
    logger.debug(f'Arguments: {args}')

    try:
        with logger.namespaced_context(args.command):
            status = COMMAND_TO_FUNCTION[args.command](args)
    except LIBRARY_ERRORS as e:
        logger.error(str(e))
        sys.exit(1)
    except Exception:
        logger.exception('An unexpected error occurred')
        sys.exit(1)
    sys.exit(status)
