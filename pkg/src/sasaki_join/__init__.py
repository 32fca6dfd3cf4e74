"""Exact invariants of weighted Sasaki joins M *_{l1,l2} S^3_w over Fano bases."""
from .errors import (
    BracketNotFound,
    ComputationError,
    DegenerateRay,
    InputTooLarge,
    InvalidK,
    InvalidPQ,
    ParityError,
    SasakiJoinError,
    SingularSystem,
    SmoothnessViolation,
    UnsupportedWeight,
    ValidationError,
)
from .exact import Polynomial, isolate_roots, positive_on_open_interval, rational_roots
from .join import FanoBase, JoinSpec, WeightVector, enumerate_regular_cones, has_regular_ray, make_join
from .quotient import OrbitPeriods, ReebQuotient, ReebRay, orbit_periods, reeb_quotient, ypq_quotient
from .admissible import (
    AdmissibleData,
    KESolution,
    SolitonSolution,
    ke_defect,
    ke_profile,
    quasiregular_family,
    solve_extremal,
    solve_ke_ray,
    solve_soliton,
    ypq_bridge,
    ypq_from_ab,
)
from .topology import (
    HomotopyVerdict,
    RingPresentation,
    cohomology_delpezzo_join,
    cohomology_quadric_join,
    cohomology_sphere_join,
    homeo_obstruction,
    homotopy_equivalent_7,
    p1_residue,
    partition_classes,
)

__version__ = "0.1.0"
