"""Trees with dynamics and critical return functions.

Tau functions are dicts {"H", "E", "R"}; trees are dicts in the CLI's JSON tree format.
"""

from ._yoccoz import (
    RealizationError,
    check,
    count,
    default_admissible,
    enumerate,
    esc,
    extend,
    extensions,
    extract,
    first_return_time,
    portals,
    rbonacci,
    realize,
    tau_values,
    to_dot,
    validate,
)

__all__ = [
    "RealizationError",
    "check",
    "count",
    "default_admissible",
    "enumerate",
    "esc",
    "extend",
    "extensions",
    "extract",
    "first_return_time",
    "portals",
    "rbonacci",
    "realize",
    "tau_values",
    "to_dot",
    "validate",
]
