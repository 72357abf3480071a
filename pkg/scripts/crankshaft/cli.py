#!/usr/bin/env python3
"""
crankshaft command line front end

Usage:
    python -m crankshaft table --stat u --m 0 --to 10
    python -m crankshaft verify --check all --to 20 --k 1..3
    python -m crankshaft biject --map thm1 --n 4 --witness
    python -m crankshaft series --name partition_gf --order 5
"""

import argparse
import json
import logging
import os
import sys
from datetime import datetime
from typing import List, Optional, TextIO

from crankshaft import bijections, identities, qseries
from crankshaft.config import CrankshaftConfig
from crankshaft.errors import BackendMismatchError, CrankshaftError, UsageError
from crankshaft.reports import format_summary, reports_to_json
from crankshaft.statistics import BACKENDS, STATISTICS, StatisticsEngine

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def parse_range(text: Optional[str]) -> Optional[List[int]]:
    """
    Parse "a..b", "a,b,c" or "a" into a list of integers

    Args:
        text: Range text or None

    Returns:
        Integers in the given order, or None when text is None
    """
    if text is None:
        return None
    values = []
    for chunk in text.split(','):
        chunk = chunk.strip()
        try:
            if '..' in chunk:
                lo, hi = (int(v) for v in chunk.split('..', 1))
                values.extend(range(lo, hi + 1))
            elif chunk:
                values.append(int(chunk))
        except ValueError as e:
            raise UsageError(f"invalid range {text!r}") from e
    if not values:
        raise UsageError(f"empty range {text!r}")
    return values


def max_pentagonal_offset(k_values: List[int]) -> int:
    """
    Largest k(3k+1)/2 over the requested k
    """
    return max((k * (3 * k + 1) // 2 for k in k_values), default=0)


def setup_logging(config: CrankshaftConfig, log_file: bool = False):
    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        path = os.path.join(config.output_dir, f'crankshaft_{datetime.now().strftime("%Y%m%d_%H%M%S")}.log')
        os.makedirs(config.output_dir, exist_ok=True)
        handlers.append(logging.FileHandler(path, encoding='utf-8'))
    logging.basicConfig(level=config.log_level, format=LOG_FORMAT, handlers=handlers, force=True)


def _output_path(args, config: CrankshaftConfig, key: str) -> Optional[str]:
    if args.save and args.output is None:
        return config.get_output_path(key)
    return args.output


def _open_output(path: Optional[str]) -> TextIO:
    if path is None:
        return sys.stdout
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    return open(path, 'w', encoding='utf-8', newline='')


def _params(args, names) -> dict:
    params = {}
    for name in names:
        values = parse_range(getattr(args, name, None))
        if values is None:
            continue
        if len(values) != 1:
            raise UsageError(f"--{name} takes a single value here")
        params[name] = values[0]
    return params


def cmd_table(args, config: CrankshaftConfig) -> int:
    """
    Tabulate one statistic over a range of n
    """
    if args.stat not in STATISTICS:
        raise UsageError(f"unknown statistic {args.stat!r}; choose from {sorted(STATISTICS)}")
    n_from = args.n_from if args.n_from is not None else 0
    n_to = args.n_to if args.n_to is not None else 20
    if args.order is None:
        config.series_order = max(config.series_order, n_to)
    elif args.order < n_to:
        raise UsageError(f"--order {args.order} is below the last n {n_to}")
    engine = StatisticsEngine(config)
    table = engine.table(args.stat, _params(args, ("m", "k")), n_from, n_to, args.backend)

    out = _open_output(_output_path(args, config, "table"))
    try:
        if args.format == 'json':
            out.write(table.dumps() + "\n")
        else:
            table.to_csv(out)
    finally:
        if out is not sys.stdout:
            out.close()
    if not table.all_match():
        logger.error(f"FAILED: enumeration and series disagree for {args.stat}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_verify(args, config: CrankshaftConfig) -> int:
    """
    Run identity checks; exit 0 iff all pass
    """
    names = [name.strip() for name in args.check.split(',')]
    m_values = parse_range(args.m) or list(identities.M_VALUES)
    k_values = parse_range(args.k) or list(identities.K_VALUES)
    if any(m not in identities.M_VALUES for m in m_values):
        raise UsageError(f"m values must lie in {identities.M_VALUES}")
    if args.strict:
        config.strictness = "assert"
    requests = identities.expand_requests(names, m_values, k_values, args.n_to)
    n_max = max(params["n_max"] for _, params in requests)
    if args.order is None:
        config.series_order = n_max + 2 * max_pentagonal_offset(k_values)
    elif args.order < n_max:
        raise UsageError(f"--order {args.order} is below n_max {n_max}")
    logger.info(f"Series order N = {config.series_order} for n_max = {n_max}")

    reports = identities.run_checks(requests, config, progress=args.progress)

    out = _open_output(_output_path(args, config, "report"))
    try:
        out.write(reports_to_json(reports, args.timing) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    sys.stderr.write(format_summary(reports) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_biject(args, config: CrankshaftConfig) -> int:
    """
    Exhaustively verify one map, optionally streaming witnesses
    """
    if args.map not in bijections.VERIFIERS:
        raise UsageError(f"unknown map {args.map!r}; choose from {sorted(bijections.VERIFIERS)}")
    sizes = parse_range(args.n)
    if sizes is None:
        raise UsageError("biject needs --n")

    requests = []
    for n in sizes:
        if args.map == "sec5_psi":
            js = parse_range(args.j) or bijections.valid_staircases(n)
            for m in parse_range(args.m) or [0, 1, 2]:
                for j in js:
                    requests.append((n, {"m": m, "j": j}))
        elif args.map == "sec6_g":
            for k in parse_range(args.k) or [2, 3, 4]:
                requests.append((n, {"k": k}))
        else:
            requests.append((n, {}))

    out = _open_output(_output_path(args, config, "witnesses" if args.witness else "report"))
    callback = None
    if args.witness:
        def callback(witness):
            out.write(json.dumps(witness.to_json()) + "\n")

    reports = []
    try:
        for n, params in requests:
            reports.append(bijections.verify_bijection(args.map, params, n, callback, progress=args.progress))
        if not args.witness:
            out.write(reports_to_json(reports, args.timing) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    sys.stderr.write(format_summary(reports) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def cmd_series(args, config: CrankshaftConfig) -> int:
    """
    Print the coefficients 0..N of a named series
    """
    order = args.order if args.order is not None else 20
    params = {}
    for name in ("m", "k", "s", "jlo", "jhi"):
        value = getattr(args, name, None)
        if value is not None:
            params[name] = int(value)
    if args.n is not None:
        params["n"] = int(args.n)
    series = qseries.build_series(args.name, params, order)

    out = _open_output(args.output)
    try:
        if args.format == 'json':
            document = {"name": args.name, "params": params, **series.to_json()}
            out.write(json.dumps(document) + "\n")
        else:
            out.write(",".join(str(c) for c in series.coeffs) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='crankshaft',
        description='Exact tables, identity checks and bijections for unimodal compositions and partition cranks',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Tabulate u_0(n) for n <= 10
  python -m crankshaft table --stat u --m 0 --to 10

  # Compare enumeration with series coefficients
  python -m crankshaft table --stat Ptilde --k 2 --to 17 --backend both

  # Verify every identity for k = 1..3 up to n = 20
  python -m crankshaft verify --check all --to 20 --k 1..3

  # Stream bijection witnesses
  python -m crankshaft biject --map thm1 --n 4 --witness

  # Expand a series
  python -m crankshaft series --name mk_gf --k 3 --order 18

Exit status: 0 ok, 1 check failed, 2 usage error
        """
    )
    # shared by every subcommand so options may follow the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--conf', default=None, help='Path to conf.json (default: built-in defaults)')
    common.add_argument('--properties', default='crankshaft.properties',
                        help='Path to crankshaft.properties (default: crankshaft.properties)')
    common.add_argument('--log-file', action='store_true', help='Also log to a timestamped file in the output directory')
    common.add_argument('--progress', action='store_true', help='Show progress bars')
    common.add_argument('--output', default=None, help='Write results to this file instead of stdout')
    common.add_argument('--save', action='store_true',
                        help='Write results to the path configured in the conf.json output section')
    common.add_argument('--order', type=int, default=None, help='Series truncation order N')
    common.add_argument('--timing', action='store_true',
                        help='Include elapsed seconds in JSON reports (output is then not reproducible)')

    sub = parser.add_subparsers(dest='command', required=True)

    table = sub.add_parser('table', parents=[common], help='Tabulate a statistic')
    table.add_argument('--stat', required=True, help=f'One of {", ".join(STATISTICS)}')
    table.add_argument('--m', help='m parameter (u, C)')
    table.add_argument('--k', help='k parameter (crank, M, Ptilde, NV, Mmissing)')
    table.add_argument('--from', dest='n_from', type=int, default=None, help='First n (default 0)')
    table.add_argument('--to', dest='n_to', type=int, default=None, help='Last n (default 20)')
    table.add_argument('--backend', choices=BACKENDS, default='auto')
    table.add_argument('--format', choices=('csv', 'json'), default='csv')

    verify = sub.add_parser('verify', parents=[common], help='Run identity checks')
    verify.add_argument('--check', default='all', help='Comma-separated check names or "all"')
    verify.add_argument('--m', help='m values, e.g. 0..2')
    verify.add_argument('--k', help='k values, e.g. 1..4')
    verify.add_argument('--to', dest='n_to', type=int, default=None, help='n_max (default: per check)')
    verify.add_argument('--strict', action='store_true', help='Fail on equality where strictness is claimed')

    biject = sub.add_parser('biject', parents=[common], help='Verify a bijection exhaustively')
    biject.add_argument('--map', required=True, help=f'One of {", ".join(bijections.VERIFIERS)}')
    biject.add_argument('--n', help='Size or range of sizes')
    biject.add_argument('--m', help='m values (sec5_psi)')
    biject.add_argument('--j', help='Staircase indices (sec5_psi, default: all valid)')
    biject.add_argument('--k', help='k values (sec6_g)')
    biject.add_argument('--witness', action='store_true', help='Stream one JSON line per domain object')

    series = sub.add_parser('series', parents=[common], help='Expand a named series')
    series.add_argument('--name', required=True, help=f'One of {", ".join(qseries.SERIES_BUILDERS)}')
    for name in ('m', 'k', 's', 'n', 'jlo', 'jhi'):
        series.add_argument(f'--{name}', type=int, default=None)
    series.add_argument('--format', choices=('csv', 'json'), default='csv')

    return parser


COMMANDS = {
    'table': cmd_table,
    'verify': cmd_verify,
    'biject': cmd_biject,
    'series': cmd_series,
}


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main entry point

    Returns:
        Process exit status
    """
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        config = CrankshaftConfig(conf_json_path=args.conf, properties_path=args.properties,
                                  series_order=args.order)
        setup_logging(config, args.log_file)
        config.log_summary()
        return COMMANDS[args.command](args, config)
    except UsageError as e:
        logger.error(f"FAILED: {e}")
        return EXIT_USAGE
    except BackendMismatchError as e:
        logger.error(f"FAILED: {e}")
        return EXIT_FAILED
    except CrankshaftError as e:
        logger.error(f"FAILED: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
