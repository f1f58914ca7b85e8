"""Exact computations with LCM semigroups and their partial-isometric representations."""

__version__ = "0.1.0"

from .semigroups import (  # noqa: F401
    DirectProduct,
    FreeMonoid,
    Naturals,
    NTimes,
    Opposite,
    WindowSpec,
    enumerate_window,
    ideal_quotient,
    left_lcm,
    multiply,
    opposite,
    parse_window_spec,
    right_lcm,
    sigma,
)
from .bp import (  # noqa: F401
    BpFunction,
    bp_evaluate,
    bp_multiply,
    bp_sup_norm,
    indicator,
    qa_decomposition,
    tau_apply,
)
from .operators import (  # noqa: F401
    MonomialOperator,
    RepresentationSpec,
    adjoint,
    apply,
    build_representation,
    compose,
    equal_on_window,
)
