"""Named sequence presets for experiments."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, Dict

from .errors import ModeError
from .means import SeqPrefix
from .scalars import EXACT, FLOAT, Mode, as_mode


def linear(N: int, mode: Mode = EXACT, seed: int = 0) -> SeqPrefix:
    """``s_k = k``; its logarithmic means are ``n (1 - 1/l_n)``."""
    return SeqPrefix(list(range(N)), as_mode(mode))


def bounded(N: int, mode: Mode = EXACT, seed: int = 0) -> SeqPrefix:
    """Seeded values in ``[-1, 1]``; the first entry is ``1`` so the bound is attained."""
    rng = random.Random(seed)
    if as_mode(mode) is EXACT:
        vals = [Fraction(1)] + [Fraction(rng.randint(-1000, 1000), 1000) for _ in range(N - 1)]
    else:
        vals = [1.0] + [rng.uniform(-1.0, 1.0) for _ in range(N - 1)]
    return SeqPrefix(vals[:N], mode)


def dyadic_spikes(N: int, mode: Mode = EXACT, seed: int = 0) -> SeqPrefix:
    """``s_{2^j} = j`` and zero elsewhere."""
    vals = [0] * N
    j = 0
    while 2 ** j < N:
        vals[2 ** j] = j
        j += 1
    return SeqPrefix(vals, as_mode(mode))


def log_spikes(N: int, mode: Mode = EXACT, seed: int = 0) -> SeqPrefix:
    """``s_k = ln k`` at perfect squares ``k >= 1``, zero elsewhere."""
    if as_mode(mode) is EXACT:
        raise ModeError("log-spikes has irrational entries; use floating mode")
    vals = [0.0] * N
    r = 1
    while r * r < N:
        vals[r * r] = math.log(r * r)
        r += 1
    return SeqPrefix(vals, FLOAT)


def random_rational(N: int, rng: random.Random, bound: int = 1000) -> SeqPrefix:
    """Rationals ``p/q`` with ``|p| <= bound``, ``1 <= q <= bound``."""
    return SeqPrefix([Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(N)], EXACT)


GENERATORS: Dict[str, Callable[..., SeqPrefix]] = {
    "linear": linear,
    "bounded": bounded,
    "dyadic-spikes": dyadic_spikes,
    "log-spikes": log_spikes,
}
