import math
from fractions import Fraction as F

import pytest

from logmeans import DomainError, FourierFunction, VaryingCesaroParams, divergence_probe, harmonic_number
from logmeans.generators import GENERATORS, bounded, dyadic_spikes, linear, log_spikes
from logmeans.probes import default_checkpoints, running_sup_table


def test_linear_closed_form_at_10_4():
    table = divergence_probe(linear(10**4, "float"), nmax=10**4)
    expected = 10**4 * (1 - 1 / float(harmonic_number(10**4)))
    assert table[-1].M == 10**4
    assert abs(table[-1].running_sup - expected) <= 1e-9 * expected
    assert table[-1].argmax == 10**4


def test_linear_exact_small():
    table = divergence_probe(linear(64), nmax=64)
    assert all(r.running_sup == r.M * (1 - 1 / harmonic_number(r.M)) for r in table)


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_bounded_control(seed):
    table = divergence_probe(bounded(10**4, "float", seed), nmax=10**4)
    assert all(r.running_sup <= 1 for r in table)
    assert table[0].running_sup == 1  # L_1 = s_0 = 1


def test_dyadic_spikes_lower_bound():
    N = 2 ** 14
    params = VaryingCesaroParams.tetunashvili(0.6)
    table = divergence_probe(dyadic_spikes(N + 1, "float"), "varying-cesaro", N, params)
    A = math.exp(0.6 * float(harmonic_number(N)) / math.log(N))
    assert table[-1].M == N
    assert table[-1].running_sup >= 14 / A
    sups = [r.running_sup for r in table]
    assert sups == sorted(sups)


def test_suprema_are_monotone_and_checkpoints_clip():
    table = divergence_probe(log_spikes(5000, "float"), nmax=5000, checkpoints=[10, 100, 1000, 10**6])
    assert [r.M for r in table] == [10, 100, 1000]
    sups = [r.running_sup for r in table]
    assert sups == sorted(sups)


def test_running_sup_table_oracle():
    vals = {1: -3, 2: 1, 3: 5, 4: -2, 5: -7}
    rows = running_sup_table(vals, [1, 2, 4, 5])
    assert [(r.M, r.running_sup, r.argmax) for r in rows] == [(1, 3, 1), (2, 3, 1), (4, 5, 3), (5, 7, 5)]
    assert default_checkpoints(10) == [1, 2, 4, 8, 10]


def test_function_source():
    one = FourierFunction.constant(1)
    table = divergence_probe(one, nmax=32, x=F(1, 4))
    assert all(r.running_sup == 1 for r in table)
    with pytest.raises(DomainError):
        divergence_probe(one, nmax=32)


def test_probe_errors():
    with pytest.raises(DomainError):
        divergence_probe(linear(10), nmax=1)
    with pytest.raises(DomainError):
        divergence_probe(linear(10), "varying-cesaro", 8)
    with pytest.raises(DomainError):
        divergence_probe(linear(10), "riesz", 8)


def test_generators_are_seeded():
    assert set(GENERATORS) == {"linear", "bounded", "dyadic-spikes", "log-spikes"}
    assert bounded(50, "exact", 3).values == bounded(50, "exact", 3).values
    assert bounded(50, "exact", 3).values != bounded(50, "exact", 4).values
    assert list(dyadic_spikes(9).values) == [0, 0, 1, 0, 2, 0, 0, 0, 3]
