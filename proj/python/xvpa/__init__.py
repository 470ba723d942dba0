"""Learn module-typed visibly pushdown document models and validate against them."""

from ._xvpa import (
    Model,
    XvpaError,
    first_type,
    infer,
    load,
    type_closure,
    types,
)

__all__ = [
    "Model",
    "XvpaError",
    "first_type",
    "infer",
    "load",
    "type_closure",
    "types",
]
