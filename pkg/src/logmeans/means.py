"""Summability transforms on finite sequence prefixes.

Logarithmic, Norlund and varying-order Cesaro means, general triangular
matrix transforms, and a finite-window report of the Toeplitz regularity
conditions. Exact-mode prefixes are evaluated in rational arithmetic and are
the reference against which floating evaluations are checked.

Two index conventions coexist and must not be confused:

* ``log_mean(s, n)`` averages ``s_0 .. s_{n-1}`` (no diagonal term), ``n >= 1``;
* ``norlund_mean(s, q, n)`` averages ``s_0 .. s_n``, ``n >= 0``.

For the logarithmic weights ``q_n = 1/(n+1)`` they agree after the shift
``norlund_mean(s, q, k) == log_mean(s, k + 1)``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, IndexRangeError, ModeError
from .scalars import EXACT, FLOAT, Mode, Scalar, as_mode, coerce, infer_mode, total, zero


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeqPrefix:
    """Finite prefix ``(s_0, ..., s_{N-1})`` of a real sequence.

    The scalar mode is inferred from the entries unless given: integers and
    fractions give exact mode, floats give floating mode. Mixed input is
    rejected.
    """

    values: Tuple[Scalar, ...]
    mode: Mode

    def __init__(self, values: Sequence, mode: Optional[Mode | str] = None):
        values = list(values)
        if not values:
            raise DomainError("a sequence prefix needs at least one entry")
        inferred = infer_mode(values)
        mode = inferred if mode is None else as_mode(mode)
        if mode is EXACT and inferred is FLOAT:
            raise ModeError("floating entries cannot form an exact prefix")
        object.__setattr__(self, "values", tuple(coerce(v, mode) for v in values))
        object.__setattr__(self, "mode", mode)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def array(self) -> np.ndarray:
        return np.array([float(v) for v in self.values], dtype=float)

    def to_float(self) -> "SeqPrefix":
        return SeqPrefix([float(v) for v in self.values], FLOAT)


class _Table:
    """Lazily extended table ``f(0), f(1), ...`` safe to share between threads."""

    def __init__(self, fn: Callable[[int, List], Scalar]):
        self._fn = fn
        self._data: List[Scalar] = []
        self._lock = threading.Lock()

    def upto(self, n: int) -> List[Scalar]:
        if len(self._data) <= n:
            with self._lock:
                while len(self._data) <= n:
                    self._data.append(self._fn(len(self._data), self._data))
        return self._data


@dataclass(frozen=True, eq=False)
class WeightScheme:
    """Norlund weights ``q_n`` with cached partial sums ``Q_n``.

    ``rule(n)`` should return an exact number (int or Fraction) when the
    weight is rational so that exact-mode evaluation is possible.
    ``length`` bounds explicitly listed schemes.
    """

    name: str
    rule: Callable[[int], Scalar]
    length: Optional[int] = None
    _tables: Dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def logarithmic(cls) -> "WeightScheme":
        return cls("logarithmic", lambda n: Fraction(1, n + 1))

    @classmethod
    def ones(cls) -> "WeightScheme":
        return cls("ones", lambda n: 1)

    @classmethod
    def geometric(cls, ratio) -> "WeightScheme":
        return cls(f"geometric:{ratio}", lambda n: ratio ** n)

    @classmethod
    def explicit(cls, values: Sequence, name: str = "explicit") -> "WeightScheme":
        vals = tuple(values)
        return cls(name, lambda n: vals[n], length=len(vals))

    def _table(self, kind: str, mode: Mode) -> _Table:
        key = (kind, mode)
        if key not in self._tables:
            if kind == "q":
                tab = _Table(lambda n, _: coerce(self.rule(n), mode))
            else:
                qtab = self._table("q", mode)
                tab = _Table(lambda n, data: qtab.upto(n)[n] + (data[n - 1] if n else zero(mode)))
            # setdefault keeps the first table if two threads race here
            self._tables.setdefault(key, tab)
        return self._tables[key]

    def _check(self, n: int) -> None:
        if n < 0:
            raise IndexRangeError(f"weight index {n} is negative")
        if self.length is not None and n >= self.length:
            raise IndexRangeError(f"scheme {self.name!r} has only {self.length} weights")

    def q(self, n: int, mode: Mode = EXACT) -> Scalar:
        self._check(n)
        return self._table("q", as_mode(mode)).upto(n)[n]

    def Q(self, n: int, mode: Mode = EXACT) -> Scalar:
        self._check(n)
        return self._table("Q", as_mode(mode)).upto(n)[n]

    def qs(self, n: int, mode: Mode = EXACT) -> List[Scalar]:
        """``[q_0, ..., q_n]``."""
        self._check(n)
        return list(self._table("q", as_mode(mode)).upto(n)[: n + 1])

    def Qs(self, n: int, mode: Mode = EXACT) -> List[Scalar]:
        """``[Q_0, ..., Q_n]``."""
        self._check(n)
        return list(self._table("Q", as_mode(mode)).upto(n)[: n + 1])


@dataclass(frozen=True, eq=False)
class VaryingCesaroParams:
    """Rule ``n -> alpha_n`` for Cesaro means of varying order.

    ``start`` is the first row the rule may be queried at; the
    ``tetunashvili`` rule ``alpha_n = c / ln n`` is only defined for
    ``n > m`` and is irrational, hence floating only.
    """

    name: str
    rule: Callable[[int], Scalar]
    start: int = 0
    exact_capable: bool = True

    @classmethod
    def constant(cls, alpha) -> "VaryingCesaroParams":
        if not 0 < alpha <= 1:
            raise DomainError(f"constant order {alpha} outside (0, 1]")
        return cls(f"const:{alpha}", lambda n: alpha, exact_capable=not isinstance(alpha, float))

    @classmethod
    def reciprocal(cls) -> "VaryingCesaroParams":
        return cls("reciprocal", lambda n: Fraction(1, n + 1))

    @classmethod
    def tetunashvili(cls, c: float, m: int = 1) -> "VaryingCesaroParams":
        if not 0 < c < math.log(2):
            raise DomainError(f"need 0 < c < ln 2, got c = {c}")
        if m < 1:
            raise DomainError("need m >= 1 so that ln n > 0")
        return cls(f"tetunashvili:{c}:{m}", lambda n: c / math.log(n), start=m + 1, exact_capable=False)

    def alpha(self, n: int, mode: Mode = EXACT) -> Scalar:
        mode = as_mode(mode)
        if n < self.start:
            raise DomainError(f"rule {self.name!r} is only defined for n >= {self.start}")
        if mode is EXACT and not self.exact_capable:
            raise ModeError(f"rule {self.name!r} has no exact values; use floating mode")
        a = coerce(self.rule(n), mode)
        if not 0 < a <= 1:
            raise DomainError(f"alpha_{n} = {a} outside (0, 1]")
        return a


@dataclass(frozen=True, eq=False)
class TriangularMatrix:
    """Lower-triangular summation matrix, entry ``t_{k,n}`` for ``0 <= k <= n``."""

    entry: Callable[[int, int], Scalar]
    provenance: str = "explicit-rule"
    name: str = ""
    first_row: int = 0

    def row(self, n: int, mode: Mode = EXACT) -> List[Scalar]:
        if n < self.first_row:
            raise IndexRangeError(f"matrix {self.name!r} has no row {n}")
        mode = as_mode(mode)
        return [coerce(self.entry(k, n), mode) for k in range(n + 1)]

    @classmethod
    def identity(cls) -> "TriangularMatrix":
        return cls(lambda k, n: 1 if k == n else 0, name="identity")

    @classmethod
    def logarithmic(cls) -> "TriangularMatrix":
        """``t_{k,n} = 1/((n-k) l_n)`` for ``k < n`` and zero diagonal; rows ``n >= 1``."""

        def entry(k, n):
            return 0 if k == n else Fraction(1, n - k) / harmonic_number(n)

        return cls(entry, name="logarithmic", first_row=1)

    @classmethod
    def norlund(cls, weights: WeightScheme) -> "TriangularMatrix":
        return cls(lambda k, n: Fraction(weights.q(n - k)) / weights.Q(n), name=f"norlund:{weights.name}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], name: str = "explicit") -> "TriangularMatrix":
        rows = [list(r) for r in rows]
        return cls(lambda k, n: rows[n][k], name=name)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def _harmonic_exact(n: int, data: List) -> Fraction:
    return data[n - 1] + Fraction(1, n) if n else Fraction(0)


_HARMONIC = _Table(_harmonic_exact)


def harmonic_number(n: int, mode: Mode = EXACT) -> Scalar:
    """``l_n = 1 + 1/2 + ... + 1/n``."""
    if n < 1:
        raise DomainError("harmonic number needs n >= 1")
    if as_mode(mode) is EXACT:
        return _HARMONIC.upto(n)[n]
    return math.fsum(1.0 / k for k in range(1, n + 1))


def _require(prefix: SeqPrefix, n: int, lo: int, need: int) -> None:
    if n < lo:
        raise IndexRangeError(f"index {n} below {lo}")
    if need > len(prefix):
        raise IndexRangeError(f"index {n} needs {need} entries, prefix has {len(prefix)}")


def log_mean(prefix: SeqPrefix, n: int) -> Scalar:
    """Logarithmic mean ``(1/l_n) sum_{k<n} s_k / (n - k)``; uses ``s_0..s_{n-1}``."""
    _require(prefix, n, 1, n)
    mode = prefix.mode
    s = prefix.values
    if mode is EXACT:
        num = sum((s[k] / (n - k) for k in range(n)), Fraction(0))
        return num / harmonic_number(n)
    # both sums correctly rounded, so |s| <= 1 gives |L_n| <= 1 bit-exactly
    num = math.fsum(s[k] * (1.0 / (n - k)) for k in range(n))
    return num / math.fsum(1.0 / (n - k) for k in range(n))


def log_means(prefix: SeqPrefix, nmax: Optional[int] = None) -> List[Scalar]:
    """All logarithmic means ``[L_1, ..., L_nmax]`` (default ``nmax = len(prefix)``).

    Floating mode evaluates every row with one direct convolution; each row
    is normalized by the convolution of ones with the same weights so the
    bound ``|L_n| <= max |s_k|`` survives rounding.
    """
    nmax = len(prefix) if nmax is None else nmax
    _require(prefix, nmax, 1, nmax)
    if prefix.mode is EXACT:
        return [log_mean(prefix, n) for n in range(1, nmax + 1)]
    s = prefix.array()[:nmax]
    w = 1.0 / np.arange(1, nmax + 1, dtype=float)
    num = np.convolve(s, w)[:nmax]
    den = np.convolve(np.ones(nmax), w)[:nmax]
    return [float(v) for v in num / den]


def norlund_mean(prefix: SeqPrefix, weights: WeightScheme, n: int) -> Scalar:
    """Norlund mean ``(1/Q_n) sum_{k<=n} q_{n-k} s_k``; uses ``s_0..s_n``."""
    _require(prefix, n, 0, n + 1)
    mode = prefix.mode
    q = weights.qs(n, mode)
    s = prefix.values
    return total((q[n - k] * s[k] for k in range(n + 1)), mode) / weights.Q(n, mode)


def norlund_means(prefix: SeqPrefix, weights: WeightScheme, nmax: Optional[int] = None) -> List[Scalar]:
    """``[N_0, ..., N_nmax]``; default ``nmax = len(prefix) - 1``."""
    nmax = len(prefix) - 1 if nmax is None else nmax
    return [norlund_mean(prefix, weights, n) for n in range(nmax + 1)]


def cesaro_coeff(n: int, alpha) -> Scalar:
    """``A_n^alpha = (1+alpha)(2+alpha)...(n+alpha) / n!`` by the recurrence
    ``A_n = A_{n-1} (n + alpha) / n``. Exact for rational ``alpha``."""
    return cesaro_coeffs(n, alpha)[n]


def cesaro_coeffs(n: int, alpha) -> List[Scalar]:
    """``[A_0^alpha, ..., A_n^alpha]``."""
    if n < 0:
        raise DomainError("Cesaro coefficient index must be >= 0")
    if alpha <= -1:
        raise DomainError(f"alpha = {alpha} <= -1 makes Cesaro factors vanish or change sign")
    if isinstance(alpha, float):
        one = 1.0
    else:
        alpha = Fraction(alpha)
        one = Fraction(1)
    out = [one]
    a = one
    for i in range(1, n + 1):
        a = a * (i + alpha) / i
        out.append(a)
    return out


def _cesaro_coeffs_np(n: int, alpha: float) -> np.ndarray:
    i = np.arange(1, n + 1, dtype=float)
    return np.concatenate(([1.0], np.cumprod((i + alpha) / i)))


def varying_cesaro_mean(prefix: SeqPrefix, params: VaryingCesaroParams, n: int) -> Scalar:
    """``sigma_n = (1/A_n^{a}) sum_{j<=n} A_{n-j}^{a-1} s_j`` with ``a = alpha_n``
    frozen for the whole row."""
    _require(prefix, n, 0, n + 1)
    mode = prefix.mode
    a = params.alpha(n, mode)
    inner = cesaro_coeffs(n, a - 1)
    s = prefix.values
    return total((inner[n - j] * s[j] for j in range(n + 1)), mode) / cesaro_coeff(n, a)


def varying_cesaro_means(
    prefix: SeqPrefix, params: VaryingCesaroParams, nmax: Optional[int] = None
) -> Dict[int, Scalar]:
    """``{n: sigma_n}`` for ``params.start <= n <= nmax``."""
    nmax = len(prefix) - 1 if nmax is None else nmax
    _require(prefix, nmax, 0, nmax + 1)
    rows = range(params.start, nmax + 1)
    if prefix.mode is EXACT:
        return {n: varying_cesaro_mean(prefix, params, n) for n in rows}
    s = prefix.array()
    out = {}
    for n in rows:
        a = params.alpha(n, FLOAT)
        inner = _cesaro_coeffs_np(n, a - 1.0)
        out[n] = float(np.dot(inner[::-1], s[: n + 1]) / _cesaro_coeffs_np(n, a)[n])
    return out


def matrix_transform(prefix: SeqPrefix, matrix: TriangularMatrix, n: int) -> Scalar:
    """``T_n = sum_{k<=n} t_{k,n} s_k``."""
    _require(prefix, n, 0, n + 1)
    mode = prefix.mode
    row = matrix.row(n, mode)
    return total((row[k] * prefix.values[k] for k in range(n + 1)), mode)


@dataclass
class RegularityRow:
    n: int
    sum_residual: Scalar  # |sum_k t_{k,n} - 1|
    abs_sum: Scalar  # sum_k |t_{k,n}|
    sum_ok: bool


@dataclass
class RegularityReport:
    """Finite-window statistics for conditions (a)-(c).

    Only condition (a) is judged (per row, against ``tol``). The column
    probe and the absolute row sums are measurements: a finite window
    cannot establish a limit or a supremum over all rows.
    """

    rows: List[RegularityRow]
    column_probe: Dict[int, List[Tuple[int, Scalar]]]  # k -> [(n, |t_{k,n}|)]
    column_tail_max: Dict[int, Scalar]  # k -> max |t_{k,n}| over the later half of the window
    max_abs_sum: Scalar
    tol: Scalar

    @property
    def sum_condition_holds(self) -> bool:
        return all(r.sum_ok for r in self.rows)

    @property
    def violations(self) -> List[int]:
        return [r.n for r in self.rows if not r.sum_ok]


def check_regularity(
    matrix: TriangularMatrix,
    window: Sequence[int],
    tol=0,
    probe_columns: Sequence[int] = (0, 1, 2),
    mode: Mode = EXACT,
) -> RegularityReport:
    window = list(window)
    if not window:
        raise DomainError("empty row window")
    mode = as_mode(mode)
    rows = []
    probe: Dict[int, List[Tuple[int, Scalar]]] = {k: [] for k in probe_columns}
    for n in window:
        t = matrix.row(n, mode)
        residual = abs(total(t, mode) - 1)
        rows.append(RegularityRow(n, residual, total((abs(x) for x in t), mode), residual <= tol))
        for k in probe_columns:
            if k <= n:
                probe[k].append((n, abs(t[k])))
    tail_start = window[len(window) // 2]
    tail_max = {
        k: max((v for n, v in entries if n >= tail_start), default=zero(mode)) for k, entries in probe.items()
    }
    return RegularityReport(rows, probe, tail_max, max(r.abs_sum for r in rows), tol)
