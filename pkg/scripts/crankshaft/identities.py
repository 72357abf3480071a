"""
Named identity checks over finite ranges

Every check evaluates both sides of one identity with a StatisticsEngine and
returns a CheckReport holding the first counterexample, if any. Infinite
sums are cut where every remaining term has a negative argument and so
vanishes; each bound is stated next to the check that uses it.
"""

import itertools
import logging
import time
from dataclasses import dataclass
from functools import wraps
from multiprocessing import Pool
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from crankshaft import bijections, objects, qseries
from crankshaft.config import CrankshaftConfig
from crankshaft.errors import BackendMismatchError, UsageError
from crankshaft.qseries import pentagonal
from crankshaft.reports import CheckReport, FAIL
from crankshaft.statistics import StatisticsEngine

logger = logging.getLogger(__name__)

M_VALUES = (0, 1, 2)
K_VALUES = (1, 2, 3, 4)


@dataclass
class CheckSpec:
    """
    Registry entry: the check callable, the parameters it is swept over and
    its default upper bound
    """
    name: str
    func: Callable
    params: Tuple[str, ...]
    n_max: int


REGISTRY: Dict[str, CheckSpec] = {}


def register(name: str, params: Tuple[str, ...] = (), n_max: int = 30):
    """
    Add a check to REGISTRY; the wrapped check times itself and turns a
    backend disagreement into a failing report
    """
    def decorator(func):
        @wraps(func)
        def wrapper(engine: StatisticsEngine, n_max: int, **kwargs) -> CheckReport:
            started = time.perf_counter()
            try:
                report = func(engine, n_max, **kwargs)
            except BackendMismatchError as e:
                report = CheckReport(name, {"n_max": n_max, **kwargs})
                report.fail(reason="backend mismatch", statistic=e.statistic, params=e.params,
                            n=e.n, enum=e.enum_value, series=e.series_value)
            report.elapsed = time.perf_counter() - started
            return report

        REGISTRY[name] = CheckSpec(name, wrapper, params, n_max)
        return wrapper

    return decorator


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _u_window(engine: StatisticsEngine, m: int, n: int, jlo: int, jhi: int) -> int:
    """
    sum_{j=jlo}^{jhi} (-1)^j u_m(n - j(3j-1)/2)
    """
    return sum(_sign(j) * engine.u(m, n - pentagonal(j)) for j in range(jlo, jhi + 1))


def _p_window(engine: StatisticsEngine, n: int, jlo: int, jhi: int, offset: Callable[[int], int]) -> int:
    return sum(_sign(j) * engine.p(n - offset(j)) for j in range(jlo, jhi + 1))


def _thm2_lhs(engine, m, k, n):
    return _sign(k) * (engine.C(m, n) - _u_window(engine, m, n, 1 - k, k))


def _thm3_lhs(engine, m, k, n):
    return _sign(k - 1) * (engine.C(m, n) - _u_window(engine, m, n, -k, k))


def _convolve_c(engine, m, n, stat: Callable[[int], int]) -> int:
    """
    sum_{j=0}^{n} C_m(j) * stat(n - j)
    """
    return sum(engine.C(m, j) * stat(n - j) for j in range(n + 1))


def _check_m(m: int):
    if m not in M_VALUES:
        raise UsageError(f"m must be 0, 1 or 2, got {m}")


def _check_k(k: int):
    if k < 1:
        raise UsageError(f"k must be positive, got {k}")


# ----------------------------------------------------------------------
# unimodal compositions and cranks
# ----------------------------------------------------------------------

@register("thm1", n_max=25)
def check_thm1(engine: StatisticsEngine, n_max: int) -> CheckReport:
    """
    u_0(n) = u_1(n) - u_2(n) for 0 <= n <= n_max
    """
    report = CheckReport("thm1", {"n_max": n_max})
    for n in range(n_max + 1):
        lhs = engine.u(0, n)
        rhs = engine.u(1, n) - engine.u(2, n)
        if lhs != rhs:
            return report.fail(n=n, lhs=lhs, rhs=rhs)
    return report


@register("thm2", ("m", "k"), n_max=100)
def check_thm2(engine: StatisticsEngine, n_max: int, m: int, k: int) -> CheckReport:
    """
    (-1)^k (C_m(n) - sum_{j=1-k}^{k} (-1)^j u_m(n - j(3j-1)/2)) = sum_{j=0}^{n} C_m(j) M_k(n-j)
    """
    _check_m(m)
    _check_k(k)
    report = CheckReport("thm2", {"m": m, "k": k, "n_max": n_max})
    for n in range(n_max + 1):
        lhs = _thm2_lhs(engine, m, k, n)
        rhs = _convolve_c(engine, m, n, lambda i: engine.M(k, i))
        if lhs != rhs:
            return report.fail(n=n, lhs=lhs, rhs=rhs)
    return report


@register("thm3", ("m", "k"), n_max=100)
def check_thm3(engine: StatisticsEngine, n_max: int, m: int, k: int) -> CheckReport:
    """
    (-1)^(k-1) (C_m(n) - sum_{j=-k}^{k} (-1)^j u_m(n - j(3j-1)/2)) = sum_{j=0}^{n} C_m(j) P~_k(n-j)
    """
    _check_m(m)
    _check_k(k)
    report = CheckReport("thm3", {"m": m, "k": k, "n_max": n_max})
    for n in range(n_max + 1):
        lhs = _thm3_lhs(engine, m, k, n)
        rhs = _convolve_c(engine, m, n, lambda i: engine.P_tilde(k, i))
        if lhs != rhs:
            return report.fail(n=n, lhs=lhs, rhs=rhs)
    return report


@register("cor2", ("m", "k"), n_max=100)
def check_cor2(engine: StatisticsEngine, n_max: int, m: int, k: int) -> CheckReport:
    """
    The thm2 left side is non-negative, and claimed positive once
    n >= k(3k+1)/2

    Zero values past the threshold are listed in details["non_strict"];
    they only fail the check when the configured strictness is "assert".
    """
    _check_m(m)
    _check_k(k)
    strictness = engine.config.strictness
    threshold = k * (3 * k + 1) // 2
    report = CheckReport("cor2", {"m": m, "k": k, "n_max": n_max, "strictness": strictness})
    non_strict = []
    for n in range(1, n_max + 1):
        lhs = _thm2_lhs(engine, m, k, n)
        if lhs < 0:
            return report.fail(n=n, lhs=lhs, rhs=0, reason="negative")
        if lhs == 0 and n >= threshold:
            if strictness == "assert":
                return report.fail(n=n, lhs=lhs, rhs=0, reason="equality past the strictness threshold")
            non_strict.append(n)
    report.details.update(strict_from=threshold, non_strict=non_strict)
    if non_strict:
        logger.info(f"cor2 m={m} k={k}: equality at n={non_strict[:10]} past n={threshold}")
    return report


@register("cor4_ineq", ("m", "k"), n_max=100)
def check_cor4_ineq(engine: StatisticsEngine, n_max: int, m: int, k: int) -> CheckReport:
    """
    The thm3 left side is non-negative
    """
    _check_m(m)
    _check_k(k)
    report = CheckReport("cor4_ineq", {"m": m, "k": k, "n_max": n_max})
    for n in range(1, n_max + 1):
        lhs = _thm3_lhs(engine, m, k, n)
        if lhs < 0:
            return report.fail(n=n, lhs=lhs, rhs=0, reason="negative")
    return report


@register("cor4", ("m",), n_max=100)
def check_cor4(engine: StatisticsEngine, n_max: int, m: int) -> CheckReport:
    """
    C_m(n) = sum_j (-1)^j u_m(n - j(3j-1)/2); terms with j(3j-1)/2 > n vanish,
    so j runs over the Euler window of n
    """
    _check_m(m)
    report = CheckReport("cor4", {"m": m, "n_max": n_max})
    for n in range(n_max + 1):
        jlo, jhi = qseries.euler_window(n)
        lhs = engine.C(m, n)
        rhs = _u_window(engine, m, n, jlo, jhi)
        if lhs != rhs:
            return report.fail(n=n, lhs=lhs, rhs=rhs)
    return report


@register("cor5", ("m", "k"), n_max=40)
def check_cor5(engine: StatisticsEngine, n_max: int, m: int, k: int) -> CheckReport:
    """
    u_m(n) = sum_{j>=0} C_m(n + b - j)(M_k(j) + P~_k(j)), b = k(3k+1)/2

    C_m vanishes at negative arguments, so j stops at n + b. The same sum
    with M_k + P~_k replaced by p(j - b) is evaluated as a cross-check.
    """
    _check_m(m)
    _check_k(k)
    b = k * (3 * k + 1) // 2
    report = CheckReport("cor5", {"m": m, "k": k, "n_max": n_max})
    for n in range(n_max + 1):
        lhs = engine.u(m, n)
        rhs = sum(engine.C(m, n + b - j) * (engine.M(k, j) + engine.P_tilde(k, j)) for j in range(n + b + 1))
        via_p = sum(engine.C(m, n + b - j) * engine.p(j - b) for j in range(n + b + 1))
        if lhs != rhs or rhs != via_p:
            return report.fail(n=n, lhs=lhs, rhs=rhs, via_p=via_p)
    return report


@register("max_parts", n_max=25)
def check_max_parts(engine: StatisticsEngine, n_max: int) -> CheckReport:
    """
    u_1(n) equals the number of maximal parts summed over U_0(n), n >= 1
    """
    report = CheckReport("max_parts", {"n_max": n_max})
    for n in range(1, n_max + 1):
        lhs = engine.u(1, n)
        rhs = objects.total_maximal_parts(n)
        if lhs != rhs:
            return report.fail(n=n, lhs=lhs, rhs=rhs)
    return report


@register("crank_vector", n_max=14)
def check_crank_vector(engine: StatisticsEngine, n_max: int) -> CheckReport:
    """
    N_V(k, n) = crank_count(k, n) for 2 <= n <= n_max and every k; at n = 1
    the two differ in the pattern (1, -1, 1) against (1, 0, 0) for k = -1, 0, 1
    """
    report = CheckReport("crank_vector", {"n_max": n_max})
    vector_at_1 = tuple(engine.N_V(k, 1) for k in (-1, 0, 1))
    crank_at_1 = tuple(engine.crank_count(k, 1) for k in (-1, 0, 1))
    report.details.update(n1_vector=list(vector_at_1), n1_crank=list(crank_at_1))
    if vector_at_1 != (1, -1, 1) or crank_at_1 != (1, 0, 0):
        return report.fail(n=1, lhs=list(vector_at_1), rhs=list(crank_at_1), reason="unexpected n = 1 pattern")
    for n in range(2, n_max + 1):
        for k in range(-n, n + 1):
            lhs = engine.N_V(k, n)
            rhs = engine.crank_count(k, n)
            if lhs != rhs:
                return report.fail(n=n, k=k, lhs=lhs, rhs=rhs)
    return report


# ----------------------------------------------------------------------
# truncated pentagonal number theorems
# ----------------------------------------------------------------------

@register("xz", ("k",), n_max=60)
def check_xz(engine: StatisticsEngine, n_max: int, k: int) -> CheckReport:
    """
    (-1)^k sum_{j=-k}^{k} (-1)^j p(n - j(3j+1)/2) = P~_k(n), n >= 1
    """
    _check_k(k)
    report = CheckReport("xz", {"k": k, "n_max": n_max})
    for n in range(1, n_max + 1):
        lhs = _sign(k) * _p_window(engine, n, -k, k, lambda j: j * (3 * j + 1) // 2)
        rhs = engine.P_tilde(k, n)
        if lhs != rhs:
            return report.fail(n=n, lhs=lhs, rhs=rhs)
    return report


@register("k1_genk", ("k",), n_max=60)
def check_k1_genk(engine: StatisticsEngine, n_max: int, k: int) -> CheckReport:
    """
    p(n-1) + p(n-2) - p(n) = P~_1(n) for k = 1, and
    p(n - k(3k-1)/2) + p(n - k(3k+1)/2) = P~_{k-1}(n) + P~_k(n) for k >= 2
    """
    _check_k(k)
    report = CheckReport("k1_genk", {"k": k, "n_max": n_max})
    for n in range(1, n_max + 1):
        if k == 1:
            lhs = engine.p(n - 1) + engine.p(n - 2) - engine.p(n)
            rhs = engine.P_tilde(1, n)
        else:
            lhs = engine.p(n - k * (3 * k - 1) // 2) + engine.p(n - k * (3 * k + 1) // 2)
            rhs = engine.P_tilde(k - 1, n) + engine.P_tilde(k, n)
        if lhs != rhs:
            return report.fail(n=n, lhs=lhs, rhs=rhs)
    return report


@register("am", ("k",), n_max=60)
def check_am(engine: StatisticsEngine, n_max: int, k: int) -> CheckReport:
    """
    (-1)^(k-1) sum_{j=1-k}^{k} (-1)^j p(n - j(3j-1)/2) = M_k(n), n >= 1
    """
    _check_k(k)
    report = CheckReport("am", {"k": k, "n_max": n_max})
    for n in range(1, n_max + 1):
        lhs = _sign(k - 1) * _p_window(engine, n, 1 - k, k, pentagonal)
        rhs = engine.M(k, n)
        if lhs != rhs:
            return report.fail(n=n, lhs=lhs, rhs=rhs)
    return report


@register("mp", ("k",), n_max=60)
def check_mp(engine: StatisticsEngine, n_max: int, k: int) -> CheckReport:
    """
    p(n - k(3k+1)/2) = M_k(n) + P~_k(n)
    """
    _check_k(k)
    report = CheckReport("mp", {"k": k, "n_max": n_max})
    b = k * (3 * k + 1) // 2
    for n in range(1, n_max + 1):
        lhs = engine.p(n - b)
        rhs = engine.M(k, n) + engine.P_tilde(k, n)
        if lhs != rhs:
            return report.fail(n=n, lhs=lhs, rhs=rhs)
    return report


@register("thm2_thm3_consistency", ("k",), n_max=30)
def check_thm2_thm3_consistency(engine: StatisticsEngine, n_max: int, k: int) -> CheckReport:
    """
    Adding the thm2 and thm3 left sides leaves the single term
    u_m(n - k(3k+1)/2); the right sides must add up to the same value
    """
    _check_k(k)
    b = k * (3 * k + 1) // 2
    report = CheckReport("thm2_thm3_consistency", {"k": k, "n_max": n_max})
    for m in M_VALUES:
        for n in range(n_max + 1):
            step = engine.u(m, n - b)
            lhs = _thm2_lhs(engine, m, k, n) + _thm3_lhs(engine, m, k, n)
            rhs = _convolve_c(engine, m, n, lambda i: engine.M(k, i) + engine.P_tilde(k, i))
            if lhs != step or rhs != step:
                return report.fail(m=m, n=n, lhs=lhs, rhs=rhs, step=step)
    return report


@register("missing_k", ("k",), n_max=30)
def check_missing_k(engine: StatisticsEngine, n_max: int, k: int) -> CheckReport:
    """
    Compare M_k(n) with the number of partitions in P~_{k-1}(n) without a
    part k. Exploratory: the outcome is recorded, never failed.
    """
    _check_k(k)
    report = CheckReport("missing_k", {"k": k, "n_max": n_max})
    upper = min(n_max, engine.config.partition_cutoff)
    agree, disagree = 0, []
    for n in range(1, upper + 1):
        m_k = engine.M(k, n)
        other = engine.M_via_missing_k(k, n)
        if m_k == other:
            agree += 1
        else:
            disagree.append({"n": n, "M": m_k, "missing_k": other})
    report.details.update(agree=agree, disagree=len(disagree), first_disagreements=disagree[:5], n_upper=upper)
    return report


@register("franklin_reduction", ("k",), n_max=10)
def check_franklin_reduction(engine: StatisticsEngine, n_max: int, k: int) -> CheckReport:
    """
    Vector-partition reduction to staircase triples, for 0 <= n <= n_max
    """
    report = CheckReport("franklin_reduction", {"k": k, "n_max": n_max})
    for n in range(n_max + 1):
        single = bijections.franklin_reduction(n, k, engine)
        if not single.passed:
            return report.fail(**single.counterexample)
    return report


# ----------------------------------------------------------------------
# coefficient-wise series identities
# ----------------------------------------------------------------------

def _compare(report: CheckReport, identity: str, left: qseries.TruncatedSeries,
             right: qseries.TruncatedSeries) -> bool:
    exponent = left.first_difference(right)
    if exponent is None:
        report.details.setdefault("identities", []).append(identity)
        return True
    report.fail(identity=identity, exponent=exponent, lhs=left[exponent], rhs=right[exponent])
    return False


@register("series_identities", n_max=300)
def check_series_identities(engine: StatisticsEngine, n_max: int, k_max: int = 6) -> CheckReport:
    """
    Pentagonal number theorem, the two Stanley identities, the master
    relation, both truncated pentagonal theorems, Gaussian binomials against
    bounded partition counts and the crank split, to order n_max

    Args:
        engine: Statistics engine (unused by the pure series identities)
        n_max: Truncation order N
        k_max: Largest k for the truncated theorems
    """
    N = n_max
    report = CheckReport("series_identities", {"N": N, "k_max": k_max})
    p_gf = qseries.partition_gf(N)
    one = qseries.TruncatedSeries.one(N)

    jlo, jhi = qseries.euler_window(N)
    if not _compare(report, "pentagonal", qseries.pochhammer_inf(1, N), qseries.pentagonal_sum(jlo, jhi, N)):
        return report

    p_squared = qseries.ts_mul(p_gf, p_gf)
    if not _compare(report, "stanley_u0", qseries.u_gf(0, N), -qseries.ts_mul(p_squared, qseries.triangular_sum(1, N))):
        return report
    if not _compare(report, "stanley_u1", qseries.u_gf(1, N), qseries.ts_mul(p_squared, qseries.triangular_sum(0, N))):
        return report

    for m in M_VALUES:
        if not _compare(report, f"master_m{m}", qseries.u_gf(m, N),
                        qseries.ts_mul(p_gf, qseries.crank_cumulative_gf(m, N))):
            return report

    for k in range(1, k_max + 1):
        truncated = qseries.ts_mul(p_gf, qseries.pentagonal_sum(1 - k, k, N)).scale(_sign(k - 1))
        if not _compare(report, f"tpnt_k{k}", truncated, one.scale(_sign(k - 1)) + qseries.mk_gf(k, N)):
            return report
        truncated = qseries.ts_mul(p_gf, qseries.pentagonal_sum(-k, k, N))
        if not _compare(report, f"tpnt2_k{k}", truncated, one + qseries.pk_tilde_gf(k, N).scale(_sign(k))):
            return report

    # Gaussian binomials [n, k] count partitions in a k x (n - k) box
    for n in range(0, 11):
        for k in range(0, n + 1):
            box = k * (n - k)
            binom = qseries.gaussian_binomial(n, k, box)
            counts = qseries.TruncatedSeries([objects.bounded_partition_count(k, n - k, s) for s in range(box + 1)], box)
            if not _compare(report, f"qbin_{n}_{k}", binom, counts):
                return report

    # sum_k N_V(k, n) = p(n) for every n, the n = 1 discrepancies cancel
    split_order = min(N, 60)
    total = qseries.TruncatedSeries.zero(split_order)
    for k in range(-split_order, split_order + 1):
        total = total + qseries.nv_gf(k, split_order)
    expected = qseries.partition_gf(split_order)
    if not _compare(report, "crank_split", total, expected):
        return report
    return report


# ----------------------------------------------------------------------
# orchestration
# ----------------------------------------------------------------------

def expand_requests(names: Sequence[str], m_values: Iterable[int] = M_VALUES,
                    k_values: Iterable[int] = K_VALUES, n_max: Optional[int] = None) -> List[Tuple[str, Dict]]:
    """
    Turn check names and parameter ranges into (name, params) requests

    Args:
        names: Check names, or ["all"]
        m_values: Values swept for checks taking m
        k_values: Values swept for checks taking k
        n_max: Upper bound for every request; registry defaults when None

    Returns:
        Requests in a deterministic order
    """
    if list(names) == ["all"]:
        names = list(REGISTRY)
    m_values = list(m_values)
    k_values = list(k_values)
    requests = []
    for name in names:
        spec = REGISTRY.get(name)
        if spec is None:
            raise UsageError(f"unknown check {name!r}; choose from {sorted(REGISTRY)}")
        ranges = []
        for param in spec.params:
            values = m_values if param == "m" else k_values
            if name == "franklin_reduction":
                values = [-1, 0, 1]
            ranges.append(values)
        if not all(ranges):
            raise UsageError(f"empty parameter range for check {name}")
        for combo in itertools.product(*ranges):
            params = dict(zip(spec.params, combo))
            params["n_max"] = spec.n_max if n_max is None else n_max
            requests.append((name, params))
    return requests


_worker_engine: Optional[StatisticsEngine] = None


def _init_worker(config: CrankshaftConfig):
    global _worker_engine
    _worker_engine = StatisticsEngine(config)


def _run_one(request: Tuple[str, Dict], engine: Optional[StatisticsEngine] = None) -> CheckReport:
    name, params = request
    params = dict(params)
    n_max = params.pop("n_max")
    engine = engine or _worker_engine
    return REGISTRY[name].func(engine, n_max, **params)


def run_checks(requests: List[Tuple[str, Dict]], config: Optional[CrankshaftConfig] = None,
               engine: Optional[StatisticsEngine] = None, progress: bool = False) -> List[CheckReport]:
    """
    Run (check, params) requests, serially or across a worker pool

    Args:
        requests: Output of expand_requests
        config: Run configuration; config.threads caps the pool size
        engine: Engine reused for serial runs
        progress: Show a tqdm bar

    Returns:
        Reports in request order
    """
    config = config or (engine.config if engine is not None else CrankshaftConfig())
    threads = min(config.threads, len(requests)) if requests else 1
    reports = []
    with tqdm(total=len(requests), desc="Checks", unit=" check", disable=not progress) as progress_bar:
        if threads <= 1:
            engine = engine or StatisticsEngine(config)
            for request in requests:
                reports.append(_run_one(request, engine))
                progress_bar.update(1)
        else:
            logger.info(f"Running {len(requests)} checks on {threads} workers")
            with Pool(processes=threads, initializer=_init_worker, initargs=(config,)) as pool:
                for report in pool.imap(_run_one, requests):
                    reports.append(report)
                    progress_bar.update(1)
    failed = [r for r in reports if r.status == FAIL]
    for report in failed:
        logger.warning(f"FAILED: {report.check_name} {report.params}: {report.counterexample}")
    logger.info(f"{len(reports) - len(failed)}/{len(reports)} checks passed")
    return reports
