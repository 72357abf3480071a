"""
Memoized partition statistics with an enumeration and a series backend

Each statistic can be evaluated by scanning combinatorial objects or by
reading a coefficient of its generating function. The `auto` backend
enumerates up to the configured cutoff (cross-checking against the series
there) and reads the series beyond it.
"""

import csv
import io
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, TextIO, Tuple

from crankshaft import objects, qseries
from crankshaft.config import CrankshaftConfig
from crankshaft.errors import BackendMismatchError, UsageError

logger = logging.getLogger(__name__)

BACKENDS = ("enum", "series", "auto", "both")

# n = 0 values are the constant terms of the C_m generating functions,
# n = 1 values are decreed
C_BOUNDARY = {
    0: {0: 0, 1: 1},
    1: {0: 1, 1: 0},
    2: {0: 1, 1: -1},
}


@dataclass
class PartitionProfile:
    """
    Everything a single scan over the partitions of n yields
    """
    n: int
    crank: Counter = field(default_factory=Counter)
    m_k: Counter = field(default_factory=Counter)
    p_tilde: Counter = field(default_factory=Counter)
    missing_k: Counter = field(default_factory=Counter)
    total: int = 0


@dataclass
class StatTable:
    """
    Tabulated values of one statistic over a range of n
    """
    name: str
    params: Dict[str, int]
    values: Dict[int, int]
    provenance: str
    series_values: Optional[Dict[int, int]] = None

    def rows(self) -> List[Dict]:
        rows = []
        for n in sorted(self.values):
            if self.series_values is None:
                rows.append({"n": n, "value": self.values[n]})
            else:
                enum_value = self.values[n]
                series_value = self.series_values[n]
                rows.append({"n": n, "enum": enum_value, "series": series_value,
                             "match": enum_value == series_value})
        return rows

    def all_match(self) -> bool:
        return all(row.get("match", True) for row in self.rows())

    def to_csv(self, stream: Optional[TextIO] = None) -> str:
        """
        Write the table as CSV (header row, decimal values)

        Args:
            stream: Optional text stream to write to

        Returns:
            The CSV text
        """
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if self.series_values is None:
            writer.writerow(["n", "value"])
            for row in self.rows():
                writer.writerow([row["n"], str(row["value"])])
        else:
            writer.writerow(["n", "enum", "series", "match"])
            for row in self.rows():
                writer.writerow([row["n"], str(row["enum"]), str(row["series"]),
                                 "true" if row["match"] else "false"])
        text = buffer.getvalue()
        if stream is not None:
            stream.write(text)
        return text

    def to_json(self) -> Dict:
        document = {"name": self.name, "params": dict(self.params), "provenance": self.provenance}
        document["rows"] = [
            {key: (str(value) if isinstance(value, int) and not isinstance(value, bool) and key != "n" else value)
             for key, value in row.items()}
            for row in self.rows()
        ]
        return document

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


class StatisticsEngine:
    """
    Evaluates p, u_m, crank counts, C_m, M_k, P~_k and N_V with caching
    """

    def __init__(self, config: Optional[CrankshaftConfig] = None):
        """
        Initialize engine

        Args:
            config: Run configuration (cutoffs and default series order)
        """
        self.config = config or CrankshaftConfig()
        self._values: Dict[Tuple, int] = {}
        self._series: Dict[Tuple, qseries.TruncatedSeries] = {}
        self._profiles: Dict[int, PartitionProfile] = {}
        self._vector_profiles: Dict[int, Counter] = {}
        self._p_table: List[int] = [1]

    # ------------------------------------------------------------------
    # plumbing
    # ------------------------------------------------------------------

    def _series_coeff(self, name: str, params: Tuple, n: int,
                      builder: Callable[[int], qseries.TruncatedSeries]) -> int:
        key = (name, params)
        series = self._series.get(key)
        if series is None or series.order < n:
            order = max(n, self.config.series_order, 2 * series.order if series is not None else 0)
            logger.debug(f"Building {name}{params} to order {order}")
            series = builder(order)
            self._series[key] = series
        return series[n]

    def _resolve(self, name: str, params: Tuple, n: int, backend: str, cutoff: int,
                 enum_fn: Callable[[], int], series_fn: Callable[[], int]) -> int:
        if backend not in BACKENDS:
            raise UsageError(f"unknown backend {backend!r}; choose from {BACKENDS}")
        key = (name, params, n, backend if backend in ("enum", "series") else "checked")
        if key in self._values:
            return self._values[key]

        if backend == "enum":
            value = enum_fn()
        elif backend == "series":
            value = series_fn()
        elif backend == "auto" and n > cutoff:
            value = series_fn()
        else:
            enum_value = enum_fn()
            series_value = series_fn()
            if enum_value != series_value:
                raise BackendMismatchError(name, dict(_param_names(name, params)), n, enum_value, series_value)
            value = enum_value

        self._values[key] = value
        return value

    def partition_profile(self, n: int) -> PartitionProfile:
        """
        Scan the partitions of n once, recording crank, M_k, P~_k and the
        'partitions of P~_{k-1}(n) without a part k' counts
        """
        profile = self._profiles.get(n)
        if profile is not None:
            return profile
        profile = PartitionProfile(n)
        for lam in objects.partitions_of(n):
            profile.total += 1
            if not lam.parts:
                continue
            profile.crank[objects.crank(lam)] += 1
            mult = Counter(lam.parts)
            values = sorted(mult)
            # least positive integer that is not a part
            least_missing = 1
            while least_missing in mult:
                least_missing += 1
            below = sum(mult[v] for v in range(1, least_missing))
            if lam.length - below > below:
                profile.m_k[least_missing] += 1
            for k in range(1, least_missing):
                # values[0..k-1] are exactly 1..k, so values[k] is the first part above k
                if len(values) > k and mult[values[k]] >= k + 1:
                    profile.p_tilde[k] += 1
            # membership in P~_{k-1} with k = least_missing (k - 1 = 0 means any nonempty partition)
            k = least_missing
            if k == 1 or (len(values) > k - 1 and mult[values[k - 1]] >= k):
                profile.missing_k[k] += 1
        self._profiles[n] = profile
        return profile

    def vector_profile(self, n: int) -> Counter:
        """
        Signed vector-partition counts of size n keyed by crank
        """
        counts = self._vector_profiles.get(n)
        if counts is None:
            counts = Counter()
            for vec in objects.vector_partitions_of(n):
                counts[vec.crank] += vec.sign
            self._vector_profiles[n] = counts
        return counts

    # ------------------------------------------------------------------
    # statistics
    # ------------------------------------------------------------------

    def p(self, n: int, backend: str = "auto") -> int:
        """
        Number of partitions of n, p(n) = 0 for n < 0
        """
        if n < 0:
            return 0
        # the series side is Euler's recurrence, read off the pentagonal number theorem
        return self._resolve("p", (), n, backend, self.config.partition_cutoff,
                             lambda: self.partition_profile(n).total, lambda: self._p_recurrence(n))

    def _p_recurrence(self, n: int) -> int:
        # Euler's pentagonal recurrence
        table = self._p_table
        while len(table) <= n:
            m = len(table)
            total = 0
            j = 1
            while j * (3 * j - 1) // 2 <= m:
                sign = 1 if j % 2 else -1
                total += sign * table[m - j * (3 * j - 1) // 2]
                second = j * (3 * j + 1) // 2
                if second <= m:
                    total += sign * table[m - second]
                j += 1
            table.append(total)
        return table[n]

    def u(self, m: int, n: int, backend: str = "auto") -> int:
        """
        u_m(n), with u_0(0) = 0, u_1(0) = u_2(0) = 1 and u_m(n) = 0 for n < 0
        """
        if m not in (0, 1, 2):
            raise UsageError(f"m must be 0, 1 or 2, got {m}")
        if n < 0:
            return 0

        def enumerate_u():
            return sum(1 for _ in objects.unimodal_family(n, m))

        return self._resolve("u", (m,), n, backend, self.config.composition_cutoff, enumerate_u,
                             lambda: self._series_coeff("u_gf", (m,), n, lambda N: qseries.u_gf(m, N)))

    def crank_count(self, k: int, n: int, backend: str = "auto") -> int:
        """
        Number of partitions of n with crank k (n >= 1; n = 1 gives the raw count)
        """
        if n < 1:
            raise UsageError(f"crank counts are defined for n >= 1, got {n}")

        def from_series():
            if n == 1:
                # the vector-partition series differs from ordinary cranks only here
                return 1 if k == -1 else 0
            return self._series_coeff("nv_gf", (abs(k),), n, lambda N: qseries.nv_gf(k, N))

        return self._resolve("crank_count", (k,), n, backend, self.config.partition_cutoff,
                             lambda: self.partition_profile(n).crank[k], from_series)

    def C(self, m: int, n: int, backend: str = "auto") -> int:
        """
        C_0/C_1/C_2: partitions of n with crank > 0 / >= 0 / == 0
        """
        if m not in (0, 1, 2):
            raise UsageError(f"m must be 0, 1 or 2, got {m}")
        if n < 0:
            return 0
        if n in C_BOUNDARY[m]:
            return C_BOUNDARY[m][n]

        def enumerate_c():
            hist = self.partition_profile(n).crank
            if m == 0:
                return sum(count for k, count in hist.items() if k > 0)
            if m == 1:
                return sum(count for k, count in hist.items() if k >= 0)
            return hist[0]

        return self._resolve("C", (m,), n, backend, self.config.partition_cutoff, enumerate_c,
                             lambda: self._series_coeff("crank_gf", (m,), n,
                                                        lambda N: qseries.crank_cumulative_gf(m, N)))

    def M(self, k: int, n: int, backend: str = "auto") -> int:
        """
        M_k(n): k is the least missing part and parts > k outnumber parts < k
        """
        if k < 1:
            raise UsageError(f"k must be positive, got {k}")
        if n <= 0:
            return 0
        return self._resolve("M", (k,), n, backend, self.config.partition_cutoff,
                             lambda: self.partition_profile(n).m_k[k],
                             lambda: self._series_coeff("mk_gf", (k,), n, lambda N: qseries.mk_gf(k, N)))

    def P_tilde(self, k: int, n: int, backend: str = "auto") -> int:
        """
        P~_k(n): parts 1..k all present, a part above k exists and the smallest
        such part occurs at least k + 1 times
        """
        if k < 1:
            raise UsageError(f"k must be positive, got {k}")
        if n <= 0:
            return 0
        return self._resolve("P_tilde", (k,), n, backend, self.config.partition_cutoff,
                             lambda: self.partition_profile(n).p_tilde[k],
                             lambda: self._series_coeff("pk_tilde_gf", (k,), n,
                                                        lambda N: qseries.pk_tilde_gf(k, N)))

    def N_V(self, k: int, n: int, backend: str = "auto") -> int:
        """
        Signed count of vector partitions of n with crank k
        """
        if n < 0:
            return 0
        return self._resolve("N_V", (k,), n, backend, self.config.vector_cutoff,
                             lambda: self.vector_profile(n)[k],
                             lambda: self._series_coeff("nv_gf", (abs(k),), n, lambda N: qseries.nv_gf(k, N)))

    def M_via_missing_k(self, k: int, n: int, backend: str = "auto") -> int:
        """
        Partitions in P~_{k-1}(n) without a part equal to k

        Only the enumeration backend exists for this count; "series" and
        "both" are rejected.
        """
        if backend not in ("auto", "enum"):
            raise UsageError(f"Mmissing has no series backend, got backend {backend!r}")
        if k < 1:
            raise UsageError(f"k must be positive, got {k}")
        if n <= 0:
            return 0
        return self.partition_profile(n).missing_k[k]

    # ------------------------------------------------------------------
    # tables
    # ------------------------------------------------------------------

    def evaluate(self, name: str, params: Dict[str, int], n: int, backend: str = "auto") -> int:
        spec = STATISTICS.get(name)
        if spec is None:
            raise UsageError(f"unknown statistic {name!r}; choose from {sorted(STATISTICS)}")
        method_name, param_names = spec
        args = []
        for param in param_names:
            if param not in params:
                raise UsageError(f"statistic {name} needs parameter --{param}")
            args.append(params[param])
        method = getattr(self, method_name)
        return method(*args, n, backend=backend)

    def table(self, name: str, params: Dict[str, int], n_from: int, n_to: int,
              backend: str = "auto") -> StatTable:
        """
        Tabulate a statistic for n_from <= n <= n_to

        Args:
            name: Statistic name (see STATISTICS)
            params: Parameters such as {"m": 0} or {"k": 2}
            n_from: First n
            n_to: Last n
            backend: enum | series | auto | both

        Returns:
            StatTable; with backend "both" it carries both columns
        """
        if n_to < n_from:
            raise UsageError(f"empty range {n_from}..{n_to}")
        if backend not in BACKENDS:
            raise UsageError(f"unknown backend {backend!r}; choose from {BACKENDS}")
        needed = {param: params[param] for param in STATISTICS.get(name, (None, ()))[1] if param in params}
        if name == "crank":
            n_from = max(n_from, 1)
        if backend == "both":
            enum_values = {n: self.evaluate(name, params, n, "enum") for n in range(n_from, n_to + 1)}
            series_values = {n: self.evaluate(name, params, n, "series") for n in range(n_from, n_to + 1)}
            return StatTable(name, needed, enum_values, "both", series_values)
        values = {n: self.evaluate(name, params, n, backend) for n in range(n_from, n_to + 1)}
        return StatTable(name, needed, values, backend)


# statistic name -> (engine method, parameter names)
STATISTICS = {
    "p": ("p", ()),
    "u": ("u", ("m",)),
    "crank": ("crank_count", ("k",)),
    "C": ("C", ("m",)),
    "M": ("M", ("k",)),
    "Ptilde": ("P_tilde", ("k",)),
    "NV": ("N_V", ("k",)),
    "Mmissing": ("M_via_missing_k", ("k",)),
}


def _param_names(name: str, params: Tuple) -> List[Tuple[str, int]]:
    names = {"u": ("m",), "C": ("m",), "crank_count": ("k",), "M": ("k",),
             "P_tilde": ("k",), "N_V": ("k",)}.get(name, ())
    return list(zip(names, params))
