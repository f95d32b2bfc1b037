"""
Explicit group ring elements attaining target determinants.
"""
from .constructions import (
    TAG_GROUPS,
    ConstructionParams,
    ConstructionTag,
    Realization,
    construction_base,
    published_form,
    realize_class,
    realize_lemma_ex,
    realize_value,
    solve_params,
    tag_for,
)
from .shift import (
    ShiftSpec,
    neg_y,
    shift_construct,
    shift_predicted_A,
    shift_predicted_blocks,
    units_product,
)

__all__ = [
    "TAG_GROUPS",
    "ConstructionParams",
    "ConstructionTag",
    "Realization",
    "ShiftSpec",
    "construction_base",
    "neg_y",
    "published_form",
    "realize_class",
    "realize_lemma_ex",
    "realize_value",
    "shift_construct",
    "shift_predicted_A",
    "shift_predicted_blocks",
    "solve_params",
    "tag_for",
    "units_product",
]
