"""Fourier partial sums on [0, 1) in the trigonometric and Walsh-Paley systems.

Conventions
-----------
Trigonometric: ``S_n(f, x) = sum_{|j| <= n} c_j exp(2 pi i j x)``; the
function is real, so ``c_{-j} = conj(c_j)`` and ``S_n`` is real.

Walsh-Paley: ``w_n = prod_{j in Sp(n)} r_j`` where the Rademacher function
``r_j(x)`` is ``+1`` when binary digit ``j + 1`` of ``x`` is 0 and ``-1``
otherwise; ``S_n(f, x) = sum_{k < n} fhat(k) w_k(x)``, so ``S_0 = 0``.

A function is either a finite trigonometric polynomial, uniform samples
(trigonometric, floating only), or a step function on the ``2^J`` dyadic
intervals (Walsh-Paley).

Exact mode evaluates harmonic ``j`` only at points with ``4jx`` an integer,
where ``exp(2 pi i j x)`` is one of ``1, i, -1, -i``; vanishing harmonics
impose no condition.
"""

from __future__ import annotations

import enum
import json
import math
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .dyadic import spectrum
from .errors import DomainError, ModeError, SystemMismatchError
from .means import SeqPrefix, harmonic_number, log_mean
from .scalars import EXACT, FLOAT, Mode, Scalar, as_mode, coerce, infer_mode, total

Point = Union[float, Fraction]


class System(str, enum.Enum):
    TRIG = "trigonometric"
    WALSH = "walsh-paley"


class FunctionFormatError(ValueError):
    """Malformed function description; ``path`` locates the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class FourierFunction:
    """Immutable function on [0, 1) tagged with its orthonormal system."""

    def __init__(self, system: System, kind: str, data: tuple, mode: Mode):
        object.__setattr__(self, "system", System(system))
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "mode", as_mode(mode))

    def __setattr__(self, name, value):
        raise AttributeError("FourierFunction is immutable")

    def __repr__(self) -> str:
        return f"FourierFunction({self.system.value}, {self.kind}, size={len(self.data)}, {self.mode.value})"

    # -- constructors ------------------------------------------------------

    @classmethod
    def trig_poly(cls, coeffs: Sequence, mode: Optional[Mode] = None) -> "FourierFunction":
        """``coeffs`` lists ``c_{-d}, ..., c_d`` as ``(re, im)`` pairs or numbers."""
        coeffs = list(coeffs)
        if len(coeffs) % 2 != 1:
            raise DomainError("need 2d + 1 coefficients c_{-d} .. c_d")
        pairs = []
        for c in coeffs:
            if isinstance(c, complex):
                pairs.append((c.real, c.imag))
            elif isinstance(c, (tuple, list)):
                if len(c) != 2:
                    raise DomainError("coefficient pairs must be [re, im]")
                pairs.append((c[0], c[1]))
            else:
                pairs.append((c, 0))
        flat = [v for p in pairs for v in p]
        if mode is None:
            # a literal 0.0 imaginary part should not force floating mode
            mode = infer_mode([v for v in flat if v != 0])
        mode = as_mode(mode)
        pairs = tuple((coerce(a, mode), coerce(b, mode)) for a, b in pairs)
        d = len(pairs) // 2
        for j in range(1, d + 1):
            (ar, ai), (br, bi) = pairs[d + j], pairs[d - j]
            tol = 0 if mode is EXACT else 1e-12 * max(1.0, abs(ar), abs(ai))
            if abs(ar - br) > tol or abs(ai + bi) > tol:
                raise DomainError(f"c_{{-{j}}} is not the conjugate of c_{j}; only real functions are supported")
        if abs(pairs[d][1]) > (0 if mode is EXACT else 1e-12):
            raise DomainError("c_0 must be real")
        return cls(System.TRIG, "trig-poly", pairs, mode)

    @classmethod
    def cosine(cls, k: int, amplitude=1, mode: Mode = EXACT) -> "FourierFunction":
        """``amplitude * cos(2 pi k x)``."""
        half = Fraction(amplitude) / 2 if as_mode(mode) is EXACT else amplitude / 2
        if k == 0:
            return cls.trig_poly([amplitude], mode)
        coeffs = [0] * (2 * k + 1)
        coeffs[0] = coeffs[-1] = half
        return cls.trig_poly(coeffs, mode)

    @classmethod
    def constant(cls, value=1, system: System = System.TRIG, mode: Optional[Mode] = None) -> "FourierFunction":
        if System(system) is System.TRIG:
            return cls.trig_poly([value], mode)
        return cls.dyadic_step([value], mode)

    @classmethod
    def samples(cls, values: Sequence) -> "FourierFunction":
        vals = tuple(coerce(v, FLOAT) for v in values)
        if not vals:
            raise DomainError("no samples")
        return cls(System.TRIG, "samples", vals, FLOAT)

    @classmethod
    def dyadic_step(cls, values: Sequence, mode: Optional[Mode] = None) -> "FourierFunction":
        values = list(values)
        size = len(values)
        if size == 0 or size & (size - 1):
            raise DomainError(f"dyadic step function needs 2^J values, got {size}")
        mode = infer_mode(values) if mode is None else as_mode(mode)
        return cls(System.WALSH, "dyadic-step", tuple(coerce(v, mode) for v in values), mode)

    @classmethod
    def walsh(cls, n: int, J: Optional[int] = None, mode: Mode = EXACT) -> "FourierFunction":
        """The Walsh function ``w_n`` as a step function on ``2^J`` intervals."""
        J = max(n.bit_length(), 0) if J is None else J
        if n >= 2 ** J:
            raise DomainError(f"w_{n} is not constant on intervals of length 2^-{J}")
        size = 2 ** J
        return cls.dyadic_step([walsh_function(n, Fraction(i, size)) for i in range(size)], mode)

    # -- serialization -----------------------------------------------------

    @classmethod
    def from_dict(cls, obj, mode: Mode = FLOAT) -> "FourierFunction":
        mode = as_mode(mode)
        if not isinstance(obj, dict):
            raise FunctionFormatError("$", "expected a JSON object")
        try:
            system = System(obj.get("system"))
        except ValueError:
            raise FunctionFormatError("$.system", f"unknown system {obj.get('system')!r}") from None
        rep = obj.get("representation")
        if not isinstance(rep, dict):
            raise FunctionFormatError("$.representation", "expected an object")
        kind = rep.get("type")

        def nums(key):
            vals = rep.get(key)
            if not isinstance(vals, list):
                raise FunctionFormatError(f"$.representation.{key}", "expected a list")
            return vals

        def num(v, path):
            try:
                if isinstance(v, str):
                    return Fraction(v) if mode is EXACT else float(Fraction(v))
                if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
                    raise TypeError
                if mode is EXACT:
                    return Fraction(v) if not isinstance(v, float) else Fraction(repr(v))
                return float(v)
            except (TypeError, ValueError, ZeroDivisionError):
                raise FunctionFormatError(path, f"not a number: {v!r}") from None

        try:
            if kind == "trig-poly":
                if system is not System.TRIG:
                    raise FunctionFormatError("$.representation.type", "trig-poly needs the trigonometric system")
                coeffs = []
                for i, c in enumerate(nums("coeffs")):
                    path = f"$.representation.coeffs[{i}]"
                    if not isinstance(c, list) or len(c) != 2:
                        raise FunctionFormatError(path, "expected [re, im]")
                    coeffs.append((num(c[0], path + "[0]"), num(c[1], path + "[1]")))
                return cls.trig_poly(coeffs, mode)
            if kind == "samples":
                if system is not System.TRIG:
                    raise FunctionFormatError("$.representation.type", "samples need the trigonometric system")
                if mode is EXACT:
                    raise ModeError("sampled functions are floating only")
                return cls.samples([num(v, f"$.representation.values[{i}]") for i, v in enumerate(nums("values"))])
            if kind == "dyadic-step":
                if system is not System.WALSH:
                    raise FunctionFormatError("$.representation.type", "dyadic-step needs the walsh-paley system")
                vals = [num(v, f"$.representation.values[{i}]") for i, v in enumerate(nums("values"))]
                return cls.dyadic_step(vals, mode)
        except DomainError as exc:
            raise FunctionFormatError("$.representation", str(exc)) from None
        raise FunctionFormatError("$.representation.type", f"unknown representation {kind!r}")

    @classmethod
    def loads(cls, text: str, mode: Mode = FLOAT) -> "FourierFunction":
        try:
            # decimals are kept as text so exact mode reads them exactly
            obj = json.loads(text, parse_float=lambda s: Fraction(s) if as_mode(mode) is EXACT else float(s))
        except json.JSONDecodeError as exc:
            raise FunctionFormatError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
        return cls.from_dict(obj, mode)

    @classmethod
    def load(cls, path, mode: Mode = FLOAT) -> "FourierFunction":
        return cls.loads(Path(path).read_text(), mode)

    def to_dict(self) -> dict:
        def enc(v):
            return str(v) if isinstance(v, Fraction) else v

        if self.kind == "trig-poly":
            rep = {"type": "trig-poly", "coeffs": [[enc(a), enc(b)] for a, b in self.data]}
        else:
            rep = {"type": self.kind, "values": [enc(v) for v in self.data]}
        return {"system": self.system.value, "representation": rep}

    # -- evaluation ----------------------------------------------------------

    @property
    def degree(self) -> int:
        if self.kind != "trig-poly":
            raise AttributeError("degree is defined for trigonometric polynomials")
        return len(self.data) // 2

    @property
    def J(self) -> int:
        if self.kind != "dyadic-step":
            raise AttributeError("J is defined for dyadic step functions")
        return len(self.data).bit_length() - 1

    def __call__(self, x: Point) -> Scalar:
        _check_point(x)
        if self.kind == "dyadic-step":
            return self.data[math.floor(x * len(self.data))]
        if self.kind == "trig-poly":
            return trig_partial_sum(self, self.degree, x)
        raise AttributeError("sampled functions are only known on their grid")

    @cached_property
    def walsh_coeffs(self) -> Tuple[Scalar, ...]:
        """``fhat(0), ..., fhat(2^J - 1)``; all higher coefficients vanish."""
        if self.system is not System.WALSH:
            raise SystemMismatchError("Walsh coefficients of a trigonometric function")
        size = len(self.data)
        J = self.J
        rev = [int(format(i, f"0{J}b")[::-1], 2) if J else 0 for i in range(size)]
        g = [None] * size
        for i, v in enumerate(self.data):
            g[rev[i]] = v
        return tuple(v / size for v in _hadamard(g))

    @cached_property
    def _spectrum_cache(self):
        if self.kind == "samples":
            M = len(self.data)
            return np.fft.fft(np.asarray(self.data)) / M
        return None


def _hadamard(values: List) -> List:
    """Unnormalized natural-order Walsh-Hadamard transform over any scalar type."""
    h = list(values)
    step = 1
    while step < len(h):
        for start in range(0, len(h), 2 * step):
            for i in range(start, start + step):
                a, b = h[i], h[i + step]
                h[i], h[i + step] = a + b, a - b
        step *= 2
    return h


def _check_point(x: Point) -> None:
    if not 0 <= x < 1:
        raise DomainError(f"point {x} outside [0, 1)")


def _require(f: FourierFunction, system: System) -> None:
    if f.system is not system:
        raise SystemMismatchError(f"{system.value} operation on a {f.system.value} function")


# ---------------------------------------------------------------------------
# Trigonometric system
# ---------------------------------------------------------------------------


def trig_coefficients(f: FourierFunction, n: int) -> List[Tuple[Scalar, Scalar]]:
    """``[c_{-n}, ..., c_n]`` as ``(re, im)`` pairs.

    Sampled functions use the uniform-grid rule ``c_j = (1/M) sum_m f(m/M)
    exp(-2 pi i j m / M)``, exact for trigonometric polynomials of degree
    below ``M/2``; higher harmonics alias onto ``j mod M``. Requests with
    ``4n > M`` are refused.
    """
    _require(f, System.TRIG)
    if n < 0:
        raise DomainError("n must be >= 0")
    if f.kind == "trig-poly":
        d = f.degree
        z = (coerce(0, f.mode), coerce(0, f.mode))
        return [f.data[d + j] if abs(j) <= d else z for j in range(-n, n + 1)]
    M = len(f.data)
    if 4 * n > M:
        raise DomainError(f"{M} samples support partial sums up to n = {M // 4}")
    spec = f._spectrum_cache
    return [(float(spec[j % M].real), float(spec[j % M].imag)) for j in range(-n, n + 1)]


def _trig_terms(f: FourierFunction, n: int, x: Point) -> List[Scalar]:
    """Real contributions ``[c_0, 2 Re(c_1 e_1), ..., 2 Re(c_n e_n)]``.

    Uses the conjugate symmetry, so term ``j`` is the ``+-j`` pair.
    """
    _check_point(x)
    c = trig_coefficients(f, n)
    mid = n
    if f.mode is EXACT:
        four_x = Fraction(x) * 4
        terms = [c[mid][0]]
        for j in range(1, n + 1):
            re, im = c[mid + j]
            if re == 0 and im == 0:
                terms.append(re)
                continue
            if (j * four_x).denominator != 1:
                raise ModeError(f"exact evaluation of harmonic {j} needs 4*{j}*x to be an integer, x = {x}")
            # Re(c * i^r) with exp(2 pi i j x) = i^r
            r = int(j * four_x) % 4
            terms.append(2 * (re, -im, -re, im)[r])
        return terms
    x = float(x)
    j = np.arange(1, n + 1)
    arr = np.array(c[mid + 1 :], dtype=float).reshape(-1, 2)
    ang = 2 * np.pi * j * x
    pairs = 2 * (arr[:, 0] * np.cos(ang) - arr[:, 1] * np.sin(ang))
    return [float(c[mid][0])] + [float(v) for v in pairs]


def trig_partial_sum(f: FourierFunction, n: int, x: Point) -> Scalar:
    """``S_n(f, x) = sum_{|j| <= n} c_j exp(2 pi i j x)``."""
    _require(f, System.TRIG)
    terms = _trig_terms(f, n, x)
    if f.mode is EXACT:
        return total(terms, EXACT)
    return float(np.cumsum(terms)[n])


# ---------------------------------------------------------------------------
# Walsh-Paley system
# ---------------------------------------------------------------------------


def rademacher(j: int, x: Point) -> int:
    """``r_j(x)``: ``+1`` if binary digit ``j + 1`` of ``x`` is 0, else ``-1``."""
    _check_point(x)
    return -1 if math.floor(x * 2 ** (j + 1)) & 1 else 1


def walsh_function(n: int, x: Point) -> int:
    """Paley-ordered Walsh function ``w_n(x)``."""
    if n < 0:
        raise DomainError("n must be >= 0")
    _check_point(x)
    sign = 1
    for j in spectrum(n):
        sign *= rademacher(j, x)
    return sign


def walsh_partial_sum(f: FourierFunction, n: int, x: Point) -> Scalar:
    """``S_n(f, x) = sum_{k < n} fhat(k) w_k(x)``."""
    _require(f, System.WALSH)
    if n < 0:
        raise DomainError("n must be >= 0")
    _check_point(x)
    fh = f.walsh_coeffs
    return total((fh[k] * walsh_function(k, x) for k in range(min(n, len(fh)))), f.mode)


def _walsh_terms(f: FourierFunction, n: int, x: Point) -> List[Scalar]:
    fh = f.walsh_coeffs
    zero = coerce(0, f.mode)
    return [fh[k] * walsh_function(k, x) if k < len(fh) else zero for k in range(n)]


# ---------------------------------------------------------------------------
# Partial-sum sequences and their means
# ---------------------------------------------------------------------------


class PartialSumSequence(SeqPrefix):
    """``S_0(f, x), ..., S_{N-1}(f, x)`` usable wherever a prefix is expected."""

    def __init__(self, values, mode: Mode, system: System, x: Point):
        super().__init__(values, mode)
        object.__setattr__(self, "system", system)
        object.__setattr__(self, "x", x)


def partial_sums(f: FourierFunction, N: int, x: Point) -> PartialSumSequence:
    """The first ``N`` partial sums at ``x``."""
    if N < 1:
        raise DomainError("N must be >= 1")
    _check_point(x)
    if f.system is System.TRIG:
        terms = _trig_terms(f, N - 1, x)
        if f.mode is EXACT:
            vals, acc = [], Fraction(0)
            for t in terms:
                acc += t
                vals.append(acc)
        else:
            vals = [float(v) for v in np.cumsum(terms)]
    else:
        # S_n runs over k < n, so S_0 is the empty sum
        terms = _walsh_terms(f, N - 1, x)
        vals, acc = [coerce(0, f.mode)], coerce(0, f.mode)
        for t in terms:
            acc = acc + t
            vals.append(acc)
    return PartialSumSequence(vals, f.mode, f.system, x)


def fourier_log_means(f: FourierFunction, n: int, x: Point) -> Scalar:
    """``L_n(f, x) = (1/l_n) sum_{j<n} S_j(f, x)/(n - j)``."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return log_mean(partial_sums(f, n, x), n)


def _subseq_values(f: FourierFunction, subseq: Sequence[int], N: int, x: Point) -> List[Scalar]:
    subseq = list(subseq)
    if any(b <= a for a, b in zip(subseq, subseq[1:])):
        raise DomainError("subsequence indices must be strictly increasing")
    if N < 1 or len(subseq) < N:
        raise DomainError(f"need 1 <= N <= len(subseq) = {len(subseq)}")
    if subseq[0] < 0:
        raise DomainError("indices must be >= 0")
    S = partial_sums(f, subseq[N - 1] + 1, x)
    return [S[subseq[k]] for k in range(N)]


def subseq_inner_sum(f: FourierFunction, subseq: Sequence[int], N: int, x: Point) -> Scalar:
    """``sum_{k<N} S_{n_k}(f, x) / (N - k)`` before normalization."""
    vals = _subseq_values(f, subseq, N, x)
    return total((vals[k] / (N - k) for k in range(N)), f.mode)


def subseq_log_means(
    f: FourierFunction, subseq: Sequence[int], N: int, x: Point, norm: str = "harmonic"
) -> Scalar:
    """Logarithmic mean along ``S_{n_0}, ..., S_{n_{N-1}}``.

    ``norm="harmonic"`` divides by ``l_N``; ``norm="ln"`` divides by ``ln N``
    (irrational, so floating only, and degenerate at ``N = 1``).
    """
    if norm == "harmonic":
        return subseq_inner_sum(f, subseq, N, x) / harmonic_number(N, f.mode)
    if norm == "ln":
        if N < 2:
            raise DomainError("ln N normalization is degenerate for N = 1")
        if f.mode is EXACT:
            raise ModeError("ln N normalization has no exact value")
        return subseq_inner_sum(f, subseq, N, x) / math.log(N)
    raise DomainError(f"unknown normalization {norm!r}")
