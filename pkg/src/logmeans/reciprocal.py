"""Coefficients of the reciprocal power series ``1/q(x)``.

For a weight series ``q(x) = sum q_n x^n`` with ``q_0 != 0`` the reciprocal
``1/q(x) = sum gamma_n x^n`` is computed by the convolution recursion

    gamma_0 = 1/q_0,    gamma_n = -(1/q_0) sum_{k<n} q_{n-k} gamma_k.

For the logarithmic weights ``q_n = 1/(n+1)`` these are the Gregory
coefficients ``1, -1/2, -1/12, -1/24, -19/720, ...``. The recursion is the
only computation path, so in exact mode the result is the reference value
other modules are checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import DomainError, NonInvertibleSeriesError
from .means import WeightScheme
from .scalars import EXACT, Mode, Scalar, as_mode, coerce, infer_mode, total, zero


def invert_series(coeffs: Sequence, mode: Optional[Mode] = None) -> List[Scalar]:
    """Reciprocal of a truncated power series, to the same number of terms."""
    coeffs = list(coeffs)
    if not coeffs:
        raise DomainError("empty series")
    mode = infer_mode(coeffs) if mode is None else as_mode(mode)
    q = [coerce(c, mode) for c in coeffs]
    if q[0] == 0:
        raise NonInvertibleSeriesError("constant term q_0 is zero")
    inv0 = 1 / q[0]
    gamma = [inv0]
    for n in range(1, len(q)):
        gamma.append(-inv0 * total((q[n - k] * gamma[k] for k in range(n)), mode))
    return gamma


def cauchy_product(a: Sequence[Scalar], b: Sequence[Scalar], mode: Mode = EXACT) -> List[Scalar]:
    """First ``min(len(a), len(b))`` coefficients of the product series."""
    n = min(len(a), len(b))
    return [total((a[i - k] * b[k] for k in range(i + 1)), mode) for i in range(n)]


@dataclass(frozen=True)
class ReciprocalCoeffs:
    gamma: Tuple[Scalar, ...]
    source: WeightScheme
    mode: Mode

    def __len__(self) -> int:
        return len(self.gamma)

    def __getitem__(self, n):
        return self.gamma[n]

    @property
    def N(self) -> int:
        return len(self.gamma) - 1

    def residuals(self) -> List[Scalar]:
        """``sum_{k<=n} q_{n-k} gamma_k`` minus ``[n == 0]``; all zero when exact."""
        q = self.source.qs(self.N, self.mode)
        prod = cauchy_product(q, self.gamma, self.mode)
        return [p - (1 if n == 0 else 0) for n, p in enumerate(prod)]


def reciprocal_coeffs(weights: WeightScheme, N: int, mode: Mode = EXACT) -> ReciprocalCoeffs:
    """``gamma_0 .. gamma_N`` for the series with coefficients ``weights.q(n)``."""
    if N < 0:
        raise DomainError("N must be >= 0")
    mode = as_mode(mode)
    q = weights.qs(N, mode)
    if q[0] == 0:
        raise NonInvertibleSeriesError(f"scheme {weights.name!r} has q_0 = 0")
    return ReciprocalCoeffs(tuple(invert_series(q, mode)), weights, mode)


@dataclass
class HardyHypothesisReport:
    """Finite check of the hypotheses on the weights.

    ``ratio_drop_at`` is the first ``m`` with
    ``q_m/q_{m-1} < q_{m-1}/q_{m-2}``. ``tail_ratio`` is ``q_N/Q_N``, the
    finite-window value of the quantity that must tend to zero; it is
    reported, not judged.
    """

    N: int
    q0_is_one: bool
    positive: bool
    first_nonpositive: Optional[int]
    ratio_nondecreasing: bool
    ratio_drop_at: Optional[int]
    ratios: List[Scalar]
    tail_ratio: Optional[Scalar]

    @property
    def holds(self) -> bool:
        return self.q0_is_one and self.positive and self.ratio_nondecreasing


def check_hardy_hypotheses(weights: WeightScheme, N: int, mode: Mode = EXACT) -> HardyHypothesisReport:
    if N < 2:
        raise DomainError("need N >= 2 to compare consecutive ratios")
    mode = as_mode(mode)
    q = weights.qs(N, mode)
    first_bad = next((n for n, v in enumerate(q) if v <= 0), None)
    positive = first_bad is None
    ratios: List[Scalar] = []
    drop_at = None
    if positive:
        ratios = [q[n] / q[n - 1] for n in range(1, N + 1)]
        # ratios[i] = q_{i+1}/q_i
        drop_at = next((i + 1 for i in range(1, len(ratios)) if ratios[i] < ratios[i - 1]), None)
    Q = weights.Q(N, mode)
    return HardyHypothesisReport(
        N=N,
        q0_is_one=q[0] == 1,
        positive=positive,
        first_nonpositive=first_bad,
        ratio_nondecreasing=positive and drop_at is None,
        ratio_drop_at=drop_at,
        ratios=ratios,
        tail_ratio=q[N] / Q if Q != 0 else None,
    )


@dataclass
class GammaConclusionReport:
    """Sign pattern and partial sums of ``gamma_n``.

    ``partial_sums[M] = 1 + gamma_1 + ... + gamma_M`` (with
    ``partial_sums[0] = gamma_0``). The bound holds on the window when the
    minimum partial sum is nonnegative. Zero coefficients are counted
    separately from positive ones, since boundary schemes such as
    ``q = 1`` produce exact zeros.
    """

    gamma0_is_one: bool
    positive_indices: List[int]
    zero_indices: List[int]
    partial_sums: List[Scalar]
    min_partial_sum: Scalar

    @property
    def strictly_negative(self) -> bool:
        return not self.positive_indices and not self.zero_indices

    @property
    def nonpositive(self) -> bool:
        return not self.positive_indices

    @property
    def bound_holds(self) -> bool:
        return self.min_partial_sum >= 0


def check_gamma_conclusions(coeffs: ReciprocalCoeffs) -> GammaConclusionReport:
    g = coeffs.gamma
    if not g:
        raise DomainError("no coefficients")
    mode = coeffs.mode
    partial = []
    acc = zero(mode)
    for v in g:
        acc = acc + v
        partial.append(acc)
    return GammaConclusionReport(
        gamma0_is_one=g[0] == 1,
        positive_indices=[n for n in range(1, len(g)) if g[n] > 0],
        zero_indices=[n for n in range(1, len(g)) if g[n] == 0],
        partial_sums=partial,
        min_partial_sum=min(partial),
    )
