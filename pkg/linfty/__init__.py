from .axioms import AxiomReport, Violation, check_cyclic, check_jacobi, jacobi_residual
from .cohomology import Cohomology, cohomology, differential
from .graded import GradedSpace, LinearMap, Vector, basis_vector
from .structure import (
    CyclicPairing,
    KoszulSign,
    LInftyStructure,
    canonical_order,
    eval_mu,
    koszul_sign,
)
