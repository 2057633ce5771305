"""Construction and analysis of 2fi-optimal row-column factorial designs over GF(s)."""

__version__ = "0.1.0"

from .agm import (  # noqa: E402
    ArrayGeneratorMatrix,
    RowColumnDesign,
    defining_subgroup,
    expand,
    resolution,
    validate_agm,
    word_to_label,
)
from .confounding import (  # noqa: E402
    ConfoundingReport,
    check_prop2,
    check_prop3,
    classify,
    efficiency,
    phi_bound,
)
from .constructions import ConstructionRequest, Kind, build, construct  # noqa: E402
from .gf import FieldMatrix  # noqa: E402
from .oracle import exhaustive_optimum, oracle_classify  # noqa: E402

__all__ = [
    "ArrayGeneratorMatrix",
    "ConfoundingReport",
    "ConstructionRequest",
    "FieldMatrix",
    "Kind",
    "RowColumnDesign",
    "build",
    "check_prop2",
    "check_prop3",
    "classify",
    "construct",
    "defining_subgroup",
    "efficiency",
    "exhaustive_optimum",
    "expand",
    "oracle_classify",
    "phi_bound",
    "resolution",
    "validate_agm",
    "word_to_label",
]
