"""Sharp upper bounds for Steklov eigenvalues of hypersurfaces of revolution
with two boundary components, built from the closed-form mixed
Steklov-Dirichlet and Steklov-Neumann spectra of annuli, together with the
classification of eigenvalue indices by finite vs not-found critical length.
"""

from ._backend import HAS_COMPILED, backend_name
from .critical import (
    ClassificationReport,
    LadderRung,
    ScanConfig,
    SweepEntry,
    SweepReport,
    Verdict,
    asymptotic_ladder,
    asymptotic_limit,
    classify,
    diagnosis_sequence,
    global_bound_estimate,
    sweep,
)
from .extension import (
    BoundResult,
    CandidateEigenvalue,
    bound_curve,
    build_candidate_set,
    level_l0,
    sharp_bound,
)
from .lemmas import (
    BlockCheck,
    CrossingResult,
    FinalLemmaReport,
    RootResult,
    crossing_b_kappa,
    solve_c0,
    verify_final_lemma,
    verify_lemma_c_growth,
    verify_multiplicity_inequality,
)
from .spectra import (
    AnnulusGeometry,
    Family,
    curve_limit,
    dirichlet0_inverse,
    multiplicity,
    neumann_inverse,
    steklov_dirichlet,
    steklov_neumann,
)

__version__ = "0.1.0"

__all__ = [
    "AnnulusGeometry",
    "BlockCheck",
    "BoundResult",
    "CandidateEigenvalue",
    "ClassificationReport",
    "CrossingResult",
    "Family",
    "FinalLemmaReport",
    "HAS_COMPILED",
    "LadderRung",
    "RootResult",
    "ScanConfig",
    "SweepEntry",
    "SweepReport",
    "Verdict",
    "asymptotic_ladder",
    "asymptotic_limit",
    "backend_name",
    "bound_curve",
    "build_candidate_set",
    "classify",
    "crossing_b_kappa",
    "curve_limit",
    "diagnosis_sequence",
    "dirichlet0_inverse",
    "global_bound_estimate",
    "level_l0",
    "multiplicity",
    "neumann_inverse",
    "sharp_bound",
    "solve_c0",
    "steklov_dirichlet",
    "steklov_neumann",
    "sweep",
    "verify_final_lemma",
    "verify_lemma_c_growth",
    "verify_multiplicity_inequality",
]
