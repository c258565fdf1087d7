from .behrend import ROUTES, BehrendValue, behrend_value, chi_top_function
from .grothendieck import (
    L,
    Cover,
    MotiveExpr,
    MotiveTerm,
    euler_specialize,
    format_laurent,
    motivic_milnor_fiber,
    unweighted_euler,
)
from .zeta import ZetaFn, monodromy_zeta
