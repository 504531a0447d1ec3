"""Python front end for the exact pizza-sharing kernel."""

from ._pizza import (  # noqa: F401
    GeometryError,
    InputError,
    Instance,
    ReductionError,
    SolverBudgetError,
    bu_eval,
    etr_evaluate,
    export_etr,
    map_back,
    reduce,
    region_mass,
    render_svg,
    residual,
    solve,
    verify_ch,
    verify_lines,
    verify_path,
)

__all__ = [
    "GeometryError",
    "InputError",
    "Instance",
    "ReductionError",
    "SolverBudgetError",
    "bu_eval",
    "etr_evaluate",
    "export_etr",
    "map_back",
    "reduce",
    "region_mass",
    "render_svg",
    "residual",
    "solve",
    "verify_ch",
    "verify_lines",
    "verify_path",
]
