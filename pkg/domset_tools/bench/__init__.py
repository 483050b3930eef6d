import os
from typing import List, Optional, Tuple

import numpy as np
from joblib import delayed

from .. import utils
from ..engine import RunConfig
from ..graph import Graph, load_graph
from ..kdistance import KConfig, solve_kdistance
from ..logging import logger
from ..oracles import is_k_dominating
from .BenchReport import (
    COLUMNS,
    BenchReport,
    BenchReportError,
    BenchRow,
)
from .BenchSpec import BenchInstance, BenchSpec, BenchSpecError, read_bench_spec

REPORT_FORMATS = {
    'csv': 'csv',
    'json': 'json',
    'markdown': 'markdown',
    'markdowntable': 'markdown',
    'md': 'markdown',
}


class BenchError(Exception):
    pass


def run_cell(graph: Graph, k: int, config: RunConfig) -> Tuple[int, float]:
    """Solve one (graph, m, k, seed) cell and verify the solution before it is
    recorded.

    Args:
        graph: The graph
        k: Neighborhood radius
        config: Run configuration

    Returns:
        Solution size
        Solve wall time, in seconds

    Raises:
        BenchError: If the solution is not a valid (k-distance) total dominating
            set of the non-isolated part of the graph
    """
    solution = solve_kdistance(graph, KConfig(k=k, base=config))
    if not is_k_dominating(graph, solution.marked, k, total=True,
                           ignore_isolated=True):
        raise BenchError(
            f'Solution with seed={config.seed}, m={config.m}, k={k} failed '
            'verification'
        )
    return solution.size, solution.elapsed


def run_bench(
    spec: BenchSpec,
    n_threads: int = 1,
    show_progress: bool = False,
) -> BenchReport:
    """Run a benchmark. Every instance is loaded once and solved for every
    ``m`` with every seed. Each row records the best (``Dmin``) and average
    (``Davg``) solution size and the average solve time over the seeds. A cell
    that fails to load, solve or verify is recorded with its error and the run
    continues.

    Args:
        spec: Benchmark specification
        n_threads: Number of seeds solved in parallel. Defaults to 1.
        show_progress: Whether to display a progress bar. Defaults to False.

    Returns:
        The report
    """
    report = BenchReport()
    for instance in spec.instances:
        logger.info(f'Running {instance.name} ({instance.path})')
        try:
            graph = load_graph(instance.path, instance.load_options())
        except Exception as e:
            logger.warning(f'Failed to load {instance.name}: {e}')
            for m in spec.m_values:
                report.add(
                    BenchRow(
                        instance.name, None, None, m, spec.k, None, None, None,
                        spec.mode, error=f'load: {e}'
                    )
                )
            continue

        for m in spec.m_values:
            try:
                results = utils.ParallelWithProgress(
                    n_jobs=n_threads,
                    total=len(spec.seeds),
                    desc=f'{instance.name} m={m}',
                    disable=not show_progress,
                )(
                    delayed(run_cell)(graph, spec.k, spec.config(m, seed))
                    for seed in spec.seeds
                )
            except Exception as e:
                logger.warning(f'{instance.name} with m={m} failed: {e}')
                report.add(
                    BenchRow(
                        instance.name, graph.n, graph.m_edges, m, spec.k, None,
                        None, None, spec.mode, error=f'solve: {e}'
                    )
                )
                continue

            sizes = [size for size, _ in results]
            times = [elapsed for _, elapsed in results]
            over = spec.time_limit is not None and max(times) > spec.time_limit
            if over:
                logger.warning(
                    f'{instance.name} with m={m} exceeded the time limit of '
                    f'{spec.time_limit}s'
                )
            row = BenchRow(
                instance.name, graph.n, graph.m_edges, m, spec.k,
                int(min(sizes)), float(np.mean(sizes)), float(np.mean(times)),
                spec.mode, over
            )
            logger.info(
                f'{instance.name} m={m}: Dmin={row.Dmin} Davg={row.Davg:.2f} '
                f'time={row.time_avg_s:.4f}s'
            )
            report.add(row)
    return report


def emit_report(
    report: BenchReport, path: str, format: Optional[str] = None
) -> str:
    """Write a report as CSV, JSON or a Markdown table. Columns are always in
    the order of ``COLUMNS``.

    Args:
        report: The report
        path: Path to the output file
        format: ``csv``, ``json`` or ``markdown``. Defaults to None, which
            infers it from the extension of ``path``.

    Returns:
        Path to the written file

    Raises:
        BenchReportError: If the report is empty, the format is unknown or the
            file could not be written
    """
    if not len(report):
        raise BenchReportError('Can not emit an empty report')
    if format is None:
        format = os.path.splitext(path)[1].lstrip('.') or 'csv'
    try:
        format = utils.resolve_name(format, REPORT_FORMATS, 'report format')
        if format == 'csv':
            return report.to_csv(path)
        if format == 'json':
            return report.to_json(path)
        return report.to_markdown(path)
    except (OSError, utils.UtilsError) as e:
        raise BenchReportError(str(e))
