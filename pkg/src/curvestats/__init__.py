"""Statistics of rational points on superelliptic curves over prime fields.

The package counts points with x in sliding windows on curves y^ell = P(x)
over F_p, histograms those counts modulo m, compares the histogram
discrepancies against explicit variance bounds and against a random walk
reference model, and checks character sum and census estimates that drive
the bounds.
"""

__version__ = "0.1.0"

from .charsum import (
    CensusResult,
    CharSumTally,
    ShiftedCensusResult,
    WeilReport,
    census_m,
    incomplete_sum,
    joint_census,
    shifted_census,
    weil_check,
)
from .curvewin import (
    BetaScan,
    Curve,
    ExperimentReport,
    Histogram,
    JointHistogram,
    Rect,
    ScanSpec,
    beta_residue_scan,
    condition_star,
    condition_star_witness,
    cor4_exceptional,
    curve,
    delta_array,
    discrepancy,
    experiment_thm1,
    experiment_thm2,
    experiment_thm3,
    fiber_array,
    gauss_lemma_check,
    joint_histogram,
    residue_histogram,
    restricted_window_counts,
    theorem_experiment,
    window_counts,
    window_counts_direct,
)
from .errors import HypothesisError
from .ffield import Character, FieldSpec, character, pow_mod_vec
from .polyff import Poly, admissible, multiplicatively_independent, poly, x_poly
from .rwalk import (
    EnumResult,
    ModelSummary,
    SimulationResult,
    WalkConfig,
    exact_prop21a,
    exact_prop21b,
    exact_prop21c,
    model_reference,
    model_reference_bernoulli,
    model_reference_joint,
    simulate_phi,
)

__all__ = [
    "__version__",
    "BetaScan",
    "CensusResult",
    "Character",
    "CharSumTally",
    "Curve",
    "EnumResult",
    "ExperimentReport",
    "FieldSpec",
    "Histogram",
    "HypothesisError",
    "JointHistogram",
    "ModelSummary",
    "Poly",
    "Rect",
    "ScanSpec",
    "ShiftedCensusResult",
    "SimulationResult",
    "WalkConfig",
    "WeilReport",
    "admissible",
    "beta_residue_scan",
    "census_m",
    "character",
    "condition_star",
    "condition_star_witness",
    "cor4_exceptional",
    "curve",
    "delta_array",
    "discrepancy",
    "exact_prop21a",
    "exact_prop21b",
    "exact_prop21c",
    "experiment_thm1",
    "experiment_thm2",
    "experiment_thm3",
    "fiber_array",
    "gauss_lemma_check",
    "incomplete_sum",
    "joint_census",
    "joint_histogram",
    "model_reference",
    "model_reference_bernoulli",
    "model_reference_joint",
    "multiplicatively_independent",
    "poly",
    "pow_mod_vec",
    "residue_histogram",
    "restricted_window_counts",
    "shifted_census",
    "simulate_phi",
    "theorem_experiment",
    "weil_check",
    "window_counts",
    "window_counts_direct",
    "x_poly",
]
