"""
Exact truncated power series in q and the generating functions built from them

Coefficients are arbitrary-precision Python integers held in numpy object
arrays, so vectorised slicing works without ever leaving exact arithmetic.
Every series carries a truncation order N and keeps the coefficients of
q^0 .. q^N; mixing orders in one operation is a usage error.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

import numpy as np

from crankshaft.errors import DomainError, UsageError

logger = logging.getLogger(__name__)


class TruncatedSeries:
    """
    Immutable formal power series truncated at a fixed order
    """

    __slots__ = ('_coeffs',)

    def __init__(self, coeffs: Iterable[int], order: Optional[int] = None):
        """
        Build a series from its leading coefficients

        Args:
            coeffs: coeffs[i] is the coefficient of q^i
            order: Truncation order N; defaults to len(coeffs) - 1. Shorter
                coefficient lists are zero-padded, longer ones are truncated.
        """
        values = [int(c) for c in coeffs]
        if order is None:
            order = len(values) - 1
        if order < 0:
            raise UsageError(f"series order must be non-negative, got {order}")
        arr = np.zeros(order + 1, dtype=object)
        values = values[:order + 1]
        arr[:len(values)] = values
        arr.setflags(write=False)
        self._coeffs = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> 'TruncatedSeries':
        obj = cls.__new__(cls)
        arr = np.array(arr, dtype=object)
        arr.setflags(write=False)
        obj._coeffs = arr
        return obj

    @classmethod
    def zero(cls, order: int) -> 'TruncatedSeries':
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> 'TruncatedSeries':
        return cls([1], order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> 'TruncatedSeries':
        """
        coeff * q^exponent, dropped to zero when exponent > order
        """
        if exponent < 0:
            raise UsageError(f"negative exponent {exponent}")
        arr = np.zeros(order + 1, dtype=object)
        if exponent <= order:
            arr[exponent] = int(coeff)
        return cls._wrap(arr)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return tuple(int(c) for c in self._coeffs)

    def __getitem__(self, index: int) -> int:
        return int(self._coeffs[index])

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __repr__(self) -> str:
        shown = ', '.join(str(c) for c in self.coeffs[:8])
        tail = ', ...' if self.order >= 8 else ''
        return f"TruncatedSeries(order={self.order}, coeffs=[{shown}{tail}])"

    def __add__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        return ts_add(self, other)

    def __sub__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        return ts_add(self, -other)

    def __neg__(self) -> 'TruncatedSeries':
        return self.scale(-1)

    def __mul__(self, other: 'TruncatedSeries') -> 'TruncatedSeries':
        return ts_mul(self, other)

    def scale(self, factor: int) -> 'TruncatedSeries':
        return TruncatedSeries._wrap(self._coeffs * int(factor))

    def shift(self, k: int) -> 'TruncatedSeries':
        """
        Multiply by q^k keeping the same order
        """
        if k < 0:
            raise UsageError(f"negative shift {k}")
        arr = np.zeros(self.order + 1, dtype=object)
        if k <= self.order:
            arr[k:] = self._coeffs[:self.order + 1 - k]
        return TruncatedSeries._wrap(arr)

    def multiply_one_minus(self, s: int) -> 'TruncatedSeries':
        """
        Multiply by (1 - q^s)
        """
        if s < 1:
            raise UsageError(f"factor exponent must be positive, got {s}")
        return self - self.shift(s)

    def divide_one_minus(self, s: int) -> 'TruncatedSeries':
        """
        Exact division by (1 - q^s): b[n] = a[n] + b[n - s]

        Processed in blocks of length s; each block only reads the finished
        block before it.
        """
        if s < 1:
            raise UsageError(f"factor exponent must be positive, got {s}")
        out = np.array(self._coeffs, dtype=object)
        size = self.order + 1
        for start in range(s, size, s):
            stop = min(start + s, size)
            out[start:stop] = out[start:stop] + out[start - s:stop - s]
        return TruncatedSeries._wrap(out)

    def nonzero_terms(self) -> List[Tuple[int, int]]:
        return [(i, int(c)) for i, c in enumerate(self._coeffs) if c != 0]

    def first_difference(self, other: 'TruncatedSeries') -> Optional[int]:
        """
        Smallest exponent where the two series differ, or None
        """
        _check_orders(self, other)
        for i, (a, b) in enumerate(zip(self._coeffs, other._coeffs)):
            if a != b:
                return i
        return None

    def to_json(self) -> Dict:
        return {"order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Dict) -> 'TruncatedSeries':
        try:
            return cls([int(c) for c in data["coeffs"]], int(data["order"]))
        except (KeyError, TypeError, ValueError) as e:
            raise UsageError(f"invalid series document: {e}") from e


def _check_orders(a: TruncatedSeries, b: TruncatedSeries):
    if a.order != b.order:
        raise UsageError(f"mismatched series orders {a.order} and {b.order}")


def ts_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """
    Coefficient-wise sum of two series of the same order
    """
    _check_orders(a, b)
    return TruncatedSeries._wrap(a._coeffs + b._coeffs)


def ts_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """
    Truncated Cauchy product: c[n] = sum_{i=0}^{n} a[i] * b[n - i]

    When one factor is sparse the product is accumulated as scaled shifts of
    the other factor; otherwise each output coefficient is one object dot.
    """
    _check_orders(a, b)
    size = a.order + 1
    terms_a = a.nonzero_terms()
    terms_b = b.nonzero_terms()
    if len(terms_b) < len(terms_a):
        a, b = b, a
        terms_a = terms_b
    out = np.zeros(size, dtype=object)
    if len(terms_a) <= size // 2:
        dense = b._coeffs
        for exponent, coeff in terms_a:
            out[exponent:] = out[exponent:] + coeff * dense[:size - exponent]
        return TruncatedSeries._wrap(out)
    x, y = a._coeffs, b._coeffs
    for n in range(size):
        out[n] = np.dot(x[:n + 1], y[n::-1])
    return TruncatedSeries._wrap(out)


def ts_inverse(a: TruncatedSeries) -> TruncatedSeries:
    """
    Multiplicative inverse of a series whose constant term is +1 or -1
    """
    a0 = a[0]
    if a0 not in (1, -1):
        raise DomainError(f"constant term {a0} is not a unit; series is not invertible over the integers")
    x = a._coeffs
    out = np.zeros(a.order + 1, dtype=object)
    out[0] = a0
    for n in range(1, a.order + 1):
        out[n] = -a0 * np.dot(x[1:n + 1], out[n - 1::-1])
    return TruncatedSeries._wrap(out)


def pochhammer(s: int, n: int, N: int) -> TruncatedSeries:
    """
    (q^s; q)_n = prod_{i=0}^{n-1} (1 - q^{s+i}) truncated at N
    """
    if s < 1:
        raise UsageError(f"pochhammer base exponent must be positive, got {s}")
    if n < 0:
        raise UsageError(f"pochhammer length must be non-negative, got {n}")
    result = TruncatedSeries.one(N)
    for i in range(n):
        # Factors with s + i > N are the identity modulo q^(N+1)
        if s + i > N:
            break
        result = result.multiply_one_minus(s + i)
    return result


def pochhammer_inf(s: int, N: int) -> TruncatedSeries:
    """
    (q^s; q)_infinity truncated at N
    """
    if s < 1:
        raise UsageError(f"pochhammer base exponent must be positive, got {s}")
    return pochhammer(s, max(N + 1 - s, 0), N)


def reciprocal_pochhammer(s: int, n: int, N: int) -> TruncatedSeries:
    """
    1 / (q^s; q)_n truncated at N, by successive exact divisions
    """
    result = TruncatedSeries.one(N)
    for i in range(n):
        if s + i > N:
            break
        result = result.divide_one_minus(s + i)
    return result


@lru_cache(maxsize=32)
def partition_gf(N: int) -> TruncatedSeries:
    """
    1 / (q;q)_infinity; the coefficient of q^n is p(n)
    """
    return ts_inverse(pochhammer_inf(1, N))


def _gaussian_rows(k_max: int, N: int) -> Iterator[List[TruncatedSeries]]:
    """
    Yield rows [[i, 0], ..., [i, min(i, k_max)]] for i = 0, 1, 2, ...

    Pascal-type recurrence [i, k] = [i-1, k-1] + q^k [i-1, k], so every entry
    is an integer polynomial without any division.
    """
    row = [TruncatedSeries.one(N)]
    while True:
        yield row
        width = len(row)
        nxt = [TruncatedSeries.one(N)]
        for k in range(1, min(width, k_max) + 1):
            upper = row[k].shift(k) if k < width else TruncatedSeries.zero(N)
            nxt.append(row[k - 1] + upper)
        row = nxt


def gaussian_binomial(n: int, k: int, N: int) -> TruncatedSeries:
    """
    Gaussian binomial [n, k] truncated at N; zero unless 0 <= k <= n
    """
    if n < 0 or k < 0 or k > n:
        return TruncatedSeries.zero(N)
    for i, row in enumerate(_gaussian_rows(k, N)):
        if i == n:
            return row[k]


def pentagonal(j: int) -> int:
    """
    Generalised pentagonal number j(3j-1)/2, j in Z
    """
    return j * (3 * j - 1) // 2


def euler_window(N: int) -> Tuple[int, int]:
    """
    Smallest window [jlo, jhi] holding every j with j(3j-1)/2 <= N
    """
    jhi = 0
    while pentagonal(jhi + 1) <= N:
        jhi += 1
    jlo = 0
    while pentagonal(jlo - 1) <= N:
        jlo -= 1
    return jlo, jhi


def pentagonal_sum(jlo: int, jhi: int, N: int) -> TruncatedSeries:
    """
    sum_{j=jlo}^{jhi} (-1)^j q^{j(3j-1)/2}, exponents above N dropped
    """
    if jlo > jhi:
        raise UsageError(f"empty pentagonal window [{jlo}, {jhi}]")
    lo_eff, hi_eff = euler_window(N)
    arr = np.zeros(N + 1, dtype=object)
    for j in range(max(jlo, lo_eff), min(jhi, hi_eff) + 1):
        e = pentagonal(j)
        if e <= N:
            arr[e] += (-1) ** (j % 2)
    return TruncatedSeries._wrap(arr)


def triangular_sum(start: int, N: int) -> TruncatedSeries:
    """
    sum_{n >= start} (-1)^n q^{n(n+1)/2} truncated at N
    """
    arr = np.zeros(N + 1, dtype=object)
    n = max(start, 0)
    while n * (n + 1) // 2 <= N:
        arr[n * (n + 1) // 2] += (-1) ** (n % 2)
        n += 1
    return TruncatedSeries._wrap(arr)


def u_gf(m: int, N: int) -> TruncatedSeries:
    """
    Generating function of u_m(n)

    m = 0: sum_{k>=1} q^k / ((q;q)_{k-1} (q;q)_k), minimal exponent k.
    m = 1, 2: sum_{k>=0} q^{mk} / (q;q)_k^2, minimal exponent mk.
    """
    if m not in (0, 1, 2):
        raise UsageError(f"m must be 0, 1 or 2, got {m}")
    total = TruncatedSeries.zero(N)
    if m == 0:
        # 1 / ((q;q)_0 (q;q)_1)
        denom = TruncatedSeries.one(N).divide_one_minus(1)
        k = 1
        while k <= N:
            total = total + denom.shift(k)
            denom = denom.divide_one_minus(k).divide_one_minus(k + 1)
            k += 1
        return total
    denom = TruncatedSeries.one(N)
    k = 0
    while m * k <= N:
        total = total + denom.shift(m * k)
        k += 1
        denom = denom.divide_one_minus(k).divide_one_minus(k)
    return total


def nv_gf(k: int, N: int) -> TruncatedSeries:
    """
    Generating function of N_V(k, n):
    (1/(q;q)_inf) sum_{n>=1} (-1)^{n-1} q^{n(n-1)/2 + n|k|} (1 - q^n),
    minimal exponent of the n-th summand n(n-1)/2 + n|k|.
    """
    k = abs(k)
    arr = np.zeros(N + 1, dtype=object)
    n = 1
    while n * (n - 1) // 2 + n * k <= N:
        e = n * (n - 1) // 2 + n * k
        sign = 1 if n % 2 == 1 else -1
        arr[e] += sign
        if e + n <= N:
            arr[e + n] -= sign
        n += 1
    return ts_mul(partition_gf(N), TruncatedSeries._wrap(arr))


def crank_cumulative_gf(m: int, N: int) -> TruncatedSeries:
    """
    Generating function of C_m(n), including C_0(1)=1, C_1(1)=0, C_2(1)=-1
    """
    if m not in (0, 1, 2):
        raise UsageError(f"m must be 0, 1 or 2, got {m}")
    positive = -ts_mul(partition_gf(N), triangular_sum(1, N))
    if m == 0:
        return positive
    non_negative = ts_mul(partition_gf(N), triangular_sum(0, N))
    if m == 1:
        return non_negative
    return non_negative - positive


def mk_gf(k: int, N: int) -> TruncatedSeries:
    """
    Generating function of M_k(n):
    sum_{n>=k} q^{C(k,2) + (k+1)n} / (q;q)_n * [n-1, k-1],
    minimal exponent of the n-th summand C(k,2) + (k+1)n.
    """
    if k < 1:
        raise UsageError(f"k must be positive, got {k}")
    base = k * (k - 1) // 2
    total = TruncatedSeries.zero(N)
    denom = TruncatedSeries.one(N)
    rows = _gaussian_rows(k - 1, N)
    row = next(rows)  # row index n - 1 == -1 is never used
    n = 0
    while True:
        exponent = base + (k + 1) * n
        if n >= k and exponent > N:
            break
        if n >= 1:
            denom = denom.divide_one_minus(n)
            if n >= 2:
                row = next(rows)
        if n >= k:
            binom = row[k - 1] if k - 1 < len(row) else TruncatedSeries.zero(N)
            total = total + ts_mul(denom, binom).shift(exponent)
        n += 1
    return total


def pk_tilde_gf(k: int, N: int) -> TruncatedSeries:
    """
    Generating function of P~_k(n):
    q^{k(k+1)/2}/(q;q)_k sum_{n>=0} q^{(n+k+1)(k+1)} / (q^{n+k+1};q)_inf,
    minimal exponent of the n-th summand (n+k+1)(k+1) + k(k+1)/2.
    """
    if k < 1:
        raise UsageError(f"k must be positive, got {k}")
    prefix = k * (k + 1) // 2
    s_min = k + 1
    s_max = s_min
    while (s_max + 1) * (k + 1) + prefix <= N:
        s_max += 1
    if s_min * (k + 1) + prefix > N:
        return TruncatedSeries.zero(N)

    inner = TruncatedSeries.zero(N)
    tail = TruncatedSeries.one(N)
    # 1/(q^s;q)_inf built downward from s = N, where it is 1 modulo q^(N+1)
    for s in range(N, s_min - 1, -1):
        tail = tail.divide_one_minus(s)
        if s <= s_max:
            inner = inner + tail.shift(s * (k + 1))
    for i in range(1, k + 1):
        inner = inner.divide_one_minus(i)
    return inner.shift(prefix)


SERIES_BUILDERS = {
    "partition_gf": lambda params, N: partition_gf(N),
    "pentagonal": lambda params, N: pochhammer_inf(1, N),
    "pentagonal_sum": lambda params, N: pentagonal_sum(params.get("jlo", 0), params.get("jhi", 0), N),
    "pochhammer": lambda params, N: pochhammer(params.get("s", 1), params.get("n", 0), N),
    "pochhammer_inf": lambda params, N: pochhammer_inf(params.get("s", 1), N),
    "gaussian_binomial": lambda params, N: gaussian_binomial(params.get("n", 0), params.get("k", 0), N),
    "u_gf": lambda params, N: u_gf(params.get("m", 0), N),
    "nv_gf": lambda params, N: nv_gf(params.get("k", 0), N),
    "crank_gf": lambda params, N: crank_cumulative_gf(params.get("m", 0), N),
    "mk_gf": lambda params, N: mk_gf(params.get("k", 1), N),
    "pk_tilde_gf": lambda params, N: pk_tilde_gf(params.get("k", 1), N),
}


def build_series(name: str, params: Dict, N: int) -> TruncatedSeries:
    """
    Build a named series; used by the command line front end

    Args:
        name: One of SERIES_BUILDERS
        params: Parameters such as m, k, s, n, jlo, jhi
        N: Truncation order

    Returns:
        The series truncated at N
    """
    builder = SERIES_BUILDERS.get(name)
    if builder is None:
        raise UsageError(f"unknown series {name!r}; choose from {sorted(SERIES_BUILDERS)}")
    logger.debug(f"Building series {name} {params} to order {N}")
    return builder(params, N)
