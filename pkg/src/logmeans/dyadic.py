"""Binary digits of natural numbers: their variation and spectrum.

``n = sum_j eps_j(n) 2^j``; the spectrum ``Sp(n)`` is the set of positions
``j >= 0`` with ``eps_j(n) = 1`` and the variation is

    V(n) = eps_0(n) + sum_{j>=1} |eps_j(n) - eps_{j-1}(n)|.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .errors import DomainError


def binary_coeffs(n: int) -> List[int]:
    """``[eps_0(n), eps_1(n), ...]`` up to the top set bit (empty for 0)."""
    if n < 0:
        raise DomainError("binary coefficients need n >= 0")
    return [(n >> j) & 1 for j in range(n.bit_length())]


def variation(n: int) -> int:
    if n < 1:
        raise DomainError("variation is defined for n >= 1")
    eps = binary_coeffs(n) + [0]
    return eps[0] + sum(abs(eps[j] - eps[j - 1]) for j in range(1, len(eps)))


def spectrum(n: int) -> Tuple[int, ...]:
    """Positions of the one bits in increasing order; ``()`` for ``n = 0``."""
    return tuple(j for j, e in enumerate(binary_coeffs(n)) if e)


@dataclass(frozen=True)
class DyadicNumber:
    n: int
    eps: Tuple[int, ...]
    variation: int
    spectrum: Tuple[int, ...]

    @classmethod
    def of(cls, n: int) -> "DyadicNumber":
        return cls(n, tuple(binary_coeffs(n)), variation(n), spectrum(n))

    def eps_at(self, j: int) -> int:
        return self.eps[j] if j < len(self.eps) else 0


class NestedCheck(NamedTuple):
    nested: bool
    first_violation: Optional[int]  # position in the sequence of the element whose spectrum does not extend its predecessor's


def is_nested(seq: Sequence[int]) -> NestedCheck:
    """Whether ``Sp(n_{k+1}) & [0, max Sp(n_k)] == Sp(n_k)`` for all consecutive pairs."""
    seq = list(seq)
    if len(seq) < 2:
        raise DomainError("need at least two terms")
    if any(b <= a for a, b in zip(seq, seq[1:])):
        raise DomainError("sequence must be strictly increasing")
    if seq[0] < 1:
        raise DomainError("terms must be natural numbers")
    for k in range(len(seq) - 1):
        low = set(spectrum(seq[k]))
        top = max(low)
        if {j for j in spectrum(seq[k + 1]) if j <= top} != low:
            return NestedCheck(False, k + 1)
    return NestedCheck(True, None)


def gen_nested_unbounded_variation(K: int) -> List[int]:
    """``n_k = 1 + 4 + ... + 4^k`` (binary ``10101...1``), ``k < K``.

    Each spectrum ``{0, 2, ..., 2k}`` extends the previous one and
    ``V(n_k) = 2(k + 1)``.
    """
    if K < 1:
        raise DomainError("K must be >= 1")
    return [(4 ** (k + 1) - 1) // 3 for k in range(K)]
