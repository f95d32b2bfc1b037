"""
Necessary conditions and achievability deciders for integer group determinants.
"""
from .membership import (
    DecisionStatus,
    MembershipDecision,
    UnitTable,
    Witness,
    decide,
    member_ga5,
    member_ga7,
    member_general,
    member_quad,
    unit_table,
)
from .necessary import ConditionReport, check_necessary, check_values, zn_divisibility, zn_violations

__all__ = [
    "ConditionReport",
    "DecisionStatus",
    "MembershipDecision",
    "UnitTable",
    "Witness",
    "check_necessary",
    "check_values",
    "decide",
    "member_ga5",
    "member_ga7",
    "member_general",
    "member_quad",
    "unit_table",
    "zn_divisibility",
    "zn_violations",
]
