from .superpotential import (
    JacobianIdeal,
    MaurerCartanMap,
    Potential,
    check_df_equals_F,
    generic_value,
    jacobian_ideal,
    mc_map,
    potential,
)
