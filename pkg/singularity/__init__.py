from .milnor import MilnorData, determinacy_bound, milnor_number, quotient_monomials
from .standard_basis import (
    LocalIdeal,
    ecart,
    leading_exponent,
    local_normal_form,
    s_polynomial,
    standard_basis,
)
