"""Summability of sequences by logarithmic means and by varying-order Cesaro means,
and of trigonometric / Walsh-Paley Fourier partial sums."""

from .bridge import (
    BridgeMatrix,
    BridgeRow,
    bridge_b,
    bridge_row,
    cond_check,
    identity2_residuals,
    represent_via_log_means,
    representation_sides,
    rowsum_scan,
    verify_identity2,
)
from .dyadic import DyadicNumber, binary_coeffs, gen_nested_unbounded_variation, is_nested, spectrum, variation
from .errors import (
    DomainError,
    IndexRangeError,
    ModeError,
    NonInvertibleSeriesError,
    SummabilityError,
    SystemMismatchError,
)
from .fourier import (
    FourierFunction,
    PartialSumSequence,
    System,
    fourier_log_means,
    partial_sums,
    subseq_log_means,
    trig_partial_sum,
    walsh_function,
    walsh_partial_sum,
)
from .means import (
    SeqPrefix,
    TriangularMatrix,
    VaryingCesaroParams,
    WeightScheme,
    cesaro_coeff,
    check_regularity,
    harmonic_number,
    log_mean,
    log_means,
    matrix_transform,
    norlund_mean,
    varying_cesaro_mean,
)
from .probes import divergence_probe
from .reciprocal import ReciprocalCoeffs, check_gamma_conclusions, check_hardy_hypotheses, reciprocal_coeffs
from .scalars import EXACT, FLOAT, Mode

__version__ = "0.1.0"
