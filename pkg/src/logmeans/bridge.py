"""Varying-order Cesaro means as a matrix transform of Norlund means.

Multiplying the generating series of ``A^{alpha-1}`` by ``1 = q(x)/q(x)``
and expanding ``1/q(x)`` with the reciprocal coefficients ``gamma`` gives,
for every row ``n`` with ``alpha = alpha_n`` frozen,

    sigma_n^{alpha_n}(s) = sum_{k<=n} t_{k,n} N_k^{(q)}(s),
    t_{k,n} = b_{n-k,n} Q_k / A_n^{alpha_n},
    b_{j,m} = sum_{i<=j} A_{j-i}^{alpha_m - 1} gamma_i.

This is an algebraic identity for any weights with ``q_0 != 0``; the row
sums are therefore exactly one. Nonnegativity of the entries (and hence
``sum |t| = 1``) additionally needs the ratio condition
``q_j/q_{j-1} <= 1 - (1 - alpha_n)/j`` at every ``j <= n``, which
:func:`cond_check` reports and :func:`rowsum_scan` measures.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from .errors import IndexRangeError
from .means import (
    SeqPrefix,
    TriangularMatrix,
    VaryingCesaroParams,
    WeightScheme,
    _cesaro_coeffs_np,
    cesaro_coeffs,
    log_means,
    norlund_means,
    varying_cesaro_mean,
)
from .reciprocal import ReciprocalCoeffs, reciprocal_coeffs
from .scalars import EXACT, FLOAT, Mode, Scalar, as_mode, total


def _inner_coeffs(j: int, alpha, mode: Mode):
    if mode is EXACT:
        return cesaro_coeffs(j, alpha - 1)
    return _cesaro_coeffs_np(j, float(alpha) - 1.0)


def bridge_b(j: int, m: int, params: VaryingCesaroParams, coeffs: ReciprocalCoeffs) -> Scalar:
    """``b_{j,m} = sum_{i<=j} A_{j-i}^{alpha_m - 1} gamma_i``."""
    if j < 0:
        raise IndexRangeError("j must be >= 0")
    if j > coeffs.N:
        raise IndexRangeError(f"b_{{{j},{m}}} needs gamma_{j}; only {len(coeffs)} coefficients given")
    mode = coeffs.mode
    A = _inner_coeffs(j, params.alpha(m, mode), mode)
    g = coeffs.gamma
    return total((A[j - i] * g[i] for i in range(j + 1)), mode)


@dataclass
class BridgeRow:
    n: int
    alpha_n: Scalar
    b: List[Scalar]  # b_{0,n} .. b_{n,n}
    t: List[Scalar]  # t_{0,n} .. t_{n,n}
    row_sum: Scalar
    abs_row_sum: Scalar
    negative_indices: List[int]


def bridge_row(
    n: int,
    weights: WeightScheme,
    params: VaryingCesaroParams,
    coeffs: Optional[ReciprocalCoeffs] = None,
    mode: Mode = EXACT,
) -> BridgeRow:
    """Row ``n`` of the bridge matrix with its diagnostics.

    ``coeffs`` defaults to the reciprocal coefficients of ``weights`` up to
    index ``n``; when given, its mode overrides ``mode``.
    """
    if coeffs is None:
        coeffs = reciprocal_coeffs(weights, n, mode)
    mode = coeffs.mode
    if n > coeffs.N:
        raise IndexRangeError(f"row {n} needs gamma up to index {n}; have {coeffs.N}")
    a = params.alpha(n, mode)
    Q = weights.Qs(n, mode)
    if mode is EXACT:
        inner = cesaro_coeffs(n, a - 1)
        g = coeffs.gamma
        b = [total((inner[j - i] * g[i] for i in range(j + 1)), mode) for j in range(n + 1)]
        An = cesaro_coeffs(n, a)[n]
        t = [b[n - k] * Q[k] / An for k in range(n + 1)]
    else:
        inner = _cesaro_coeffs_np(n, a - 1.0)
        g = np.array(coeffs.gamma[: n + 1], dtype=float)
        b_arr = np.convolve(inner, g)[: n + 1]
        An = _cesaro_coeffs_np(n, a)[n]
        t_arr = b_arr[::-1] * np.array(Q, dtype=float) / An
        b = [float(v) for v in b_arr]
        t = [float(v) for v in t_arr]
    return BridgeRow(
        n=n,
        alpha_n=a,
        b=b,
        t=t,
        row_sum=total(t, mode),
        abs_row_sum=total((abs(v) for v in t), mode),
        negative_indices=[k for k, v in enumerate(t) if v < 0],
    )


class BridgeMatrix:
    """Row cache for one ``(weights, params, mode)`` triple.

    The reciprocal coefficients are regenerated to the largest row seen. Row
    construction is guarded by a lock so a shared instance can serve several
    threads.
    """

    def __init__(self, weights: WeightScheme, params: VaryingCesaroParams, mode: Mode = EXACT):
        self.weights = weights
        self.params = params
        self.mode = as_mode(mode)
        self._coeffs: Optional[ReciprocalCoeffs] = None
        self._rows: Dict[int, BridgeRow] = {}
        self._lock = threading.Lock()

    def coeffs(self, n: int) -> ReciprocalCoeffs:
        if self._coeffs is None or self._coeffs.N < n:
            # grow geometrically so scanning rows one by one stays quadratic
            target = max(n, 2 * self._coeffs.N if self._coeffs else 0)
            if self.weights.length is not None:
                target = max(n, min(target, self.weights.length - 1))
            self._coeffs = reciprocal_coeffs(self.weights, target, self.mode)
        return self._coeffs

    def row(self, n: int) -> BridgeRow:
        row = self._rows.get(n)
        if row is None:
            with self._lock:
                row = self._rows.get(n)
                if row is None:
                    row = bridge_row(n, self.weights, self.params, self.coeffs(n))
                    self._rows[n] = row
        return row

    def as_matrix(self) -> TriangularMatrix:
        return TriangularMatrix(
            lambda k, n: self.row(n).t[k],
            provenance="bridge-derived",
            name=f"bridge:{self.weights.name}:{self.params.name}",
            first_row=self.params.start,
        )


def _bridge_for(weights, params, prefix, bridge):
    if bridge is None:
        return BridgeMatrix(weights, params, prefix.mode)
    if bridge.mode is not prefix.mode:
        raise ValueError("bridge matrix and prefix use different scalar modes")
    return bridge


def representation_sides(
    prefix: SeqPrefix,
    n: int,
    weights: WeightScheme,
    params: VaryingCesaroParams,
    bridge: Optional[BridgeMatrix] = None,
):
    """``(sigma_n^{alpha_n}(s), sum_k t_{k,n} N_k^{(q)}(s))``."""
    bridge = _bridge_for(weights, params, prefix, bridge)
    lhs = varying_cesaro_mean(prefix, params, n)
    N = norlund_means(prefix, weights, n)
    t = bridge.row(n).t
    return lhs, total((t[k] * N[k] for k in range(n + 1)), prefix.mode)


def verify_identity2(
    prefix: SeqPrefix,
    n: int,
    weights: WeightScheme,
    params: VaryingCesaroParams,
    bridge: Optional[BridgeMatrix] = None,
) -> Scalar:
    """``sigma_n^{alpha_n}(s) - sum_k t_{k,n} N_k^{(q)}(s)``; exactly zero in exact mode."""
    lhs, rhs = representation_sides(prefix, n, weights, params, bridge)
    return lhs - rhs


def identity2_residuals(
    prefix: SeqPrefix,
    weights: WeightScheme,
    params: VaryingCesaroParams,
    nmax: Optional[int] = None,
    bridge: Optional[BridgeMatrix] = None,
) -> Dict[int, Scalar]:
    """Residual of :func:`verify_identity2` for every row ``start <= n <= nmax``,
    sharing the Norlund means between rows."""
    nmax = len(prefix) - 1 if nmax is None else nmax
    bridge = _bridge_for(weights, params, prefix, bridge)
    N = norlund_means(prefix, weights, nmax)
    out = {}
    for n in range(params.start, nmax + 1):
        t = bridge.row(n).t
        rhs = total((t[k] * N[k] for k in range(n + 1)), prefix.mode)
        out[n] = varying_cesaro_mean(prefix, params, n) - rhs
    return out


def represent_via_log_means(
    prefix: SeqPrefix, n: int, params: VaryingCesaroParams, bridge: Optional[BridgeMatrix] = None
) -> Scalar:
    """``sum_k t_{k,n} L_{k+1}(s)`` for the logarithmic weights.

    Same value as the Norlund form, read through ``N_k = L_{k+1}``.
    """
    weights = bridge.weights if bridge is not None else WeightScheme.logarithmic()
    if weights.name != "logarithmic":
        raise ValueError("the logarithmic-mean view needs the logarithmic weights")
    bridge = _bridge_for(weights, params, prefix, bridge)
    L = log_means(prefix, n + 1)
    t = bridge.row(n).t
    return total((t[k] * L[k] for k in range(n + 1)), prefix.mode)


@dataclass
class CondRow:
    j: int
    ratio: Scalar  # q_j / q_{j-1}
    bound_frozen: Scalar  # 1 - (1 - alpha_n)/j
    holds_frozen: bool
    bound_diagonal: Optional[Scalar]  # 1 - (1 - alpha_j)/j, None where alpha_j is undefined
    holds_diagonal: Optional[bool]


@dataclass
class CondReport:
    """Ratio condition for row ``n`` under two readings.

    *frozen*: ``alpha_n`` is used at every ``j <= n``, which is what the
    positivity argument for row ``n`` consumes. *diagonal*: ``alpha_j`` at
    index ``j``, the condition with matching indices.
    """

    n: int
    alpha_n: Scalar
    rows: List[CondRow]

    @property
    def frozen_failures(self) -> List[int]:
        return [r.j for r in self.rows if not r.holds_frozen]

    @property
    def diagonal_failures(self) -> List[int]:
        return [r.j for r in self.rows if r.holds_diagonal is False]

    @property
    def holds(self) -> bool:
        return not self.frozen_failures


def cond_check(weights: WeightScheme, params: VaryingCesaroParams, n: int, mode: Mode = EXACT) -> CondReport:
    if n < 1:
        raise IndexRangeError("cond_check needs n >= 1")
    mode = as_mode(mode)
    q = weights.qs(n, mode)
    a_n = params.alpha(n, mode)
    rows = []
    for j in range(1, n + 1):
        ratio = q[j] / q[j - 1]
        frozen = 1 - (1 - a_n) / j
        if j >= params.start:
            diag = 1 - (1 - params.alpha(j, mode)) / j
            diag_ok = ratio <= diag
        else:
            diag, diag_ok = None, None
        rows.append(CondRow(j, ratio, frozen, ratio <= frozen, diag, diag_ok))
    return CondReport(n, a_n, rows)


@dataclass
class ScanRow:
    n: int
    row_sum_minus_one: Scalar
    abs_row_sum: Scalar
    negatives: int


def rowsum_scan(
    nmax: int,
    weights: WeightScheme,
    params: VaryingCesaroParams,
    mode: Mode = EXACT,
    bridge: Optional[BridgeMatrix] = None,
) -> List[ScanRow]:
    """Row-sum diagnostics for rows ``params.start .. nmax``."""
    if nmax < 1:
        raise IndexRangeError("nmax must be >= 1")
    bridge = bridge or BridgeMatrix(weights, params, mode)
    bridge.coeffs(nmax)
    out = []
    for n in range(params.start, nmax + 1):
        r = bridge.row(n)
        out.append(ScanRow(n, r.row_sum - 1, r.abs_row_sum, len(r.negative_indices)))
    return out
