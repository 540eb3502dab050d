"""Running-supremum tables for unbounded sequences.

A probe cannot decide whether a supremum is infinite; it records how
``max_{n <= M} |mean_n|`` grows along a list of checkpoints so that growth
of the input can be compared with growth of its means.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from .errors import DomainError
from .fourier import FourierFunction, Point, partial_sums
from .means import SeqPrefix, VaryingCesaroParams, log_means, varying_cesaro_means
from .scalars import Scalar


@dataclass
class ProbeRow:
    M: int
    running_sup: Scalar
    argmax: int  # row index attaining the supremum


def default_checkpoints(nmax: int) -> List[int]:
    out = []
    M = 1
    while M < nmax:
        out.append(M)
        M *= 2
    out.append(nmax)
    return out


def mean_values(
    prefix: SeqPrefix, means: str, nmax: int, params: Optional[VaryingCesaroParams] = None
) -> dict:
    """``{n: mean_n}`` for the chosen family over its admissible rows ``<= nmax``."""
    if means == "logarithmic":
        return dict(enumerate(log_means(prefix, nmax), start=1))
    if means == "varying-cesaro":
        if params is None:
            raise DomainError("varying-cesaro probe needs Cesaro parameters")
        return varying_cesaro_means(prefix, params, nmax)
    raise DomainError(f"unknown mean family {means!r}")


def running_sup_table(values: dict, checkpoints: Sequence[int]) -> List[ProbeRow]:
    rows = sorted(values)
    cps = sorted(set(checkpoints))
    out = []
    best, best_n = None, None
    i = 0
    for M in cps:
        while i < len(rows) and rows[i] <= M:
            v = abs(values[rows[i]])
            if best is None or v > best:
                best, best_n = v, rows[i]
            i += 1
        if best is not None:
            out.append(ProbeRow(M, best, best_n))
    return out


def divergence_probe(
    source: Union[SeqPrefix, FourierFunction],
    means: str = "logarithmic",
    nmax: int = 1024,
    params: Optional[VaryingCesaroParams] = None,
    checkpoints: Optional[Sequence[int]] = None,
    x: Optional[Point] = None,
) -> List[ProbeRow]:
    """Running suprema of ``|L_n|`` or ``|sigma_n^{alpha_n}|`` at each checkpoint.

    ``source`` is a sequence prefix (length at least ``nmax + 1`` for the
    Cesaro family, ``nmax`` for logarithmic means) or a Fourier function
    evaluated through its partial sums at ``x``.
    """
    if nmax < 2:
        raise DomainError("nmax must be >= 2")
    if isinstance(source, FourierFunction):
        if x is None:
            raise DomainError("a function source needs an evaluation point x")
        source = partial_sums(source, nmax + 1, x)
    checkpoints = default_checkpoints(nmax) if checkpoints is None else [M for M in checkpoints if M <= nmax]
    return running_sup_table(mean_values(source, means, nmax, params), checkpoints)
