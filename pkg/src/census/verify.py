"""
Compare a census store with the deciders.
"""
from pathlib import Path
from typing import Any, Dict, List

from pydantic import BaseModel

from ..conditions import DecisionStatus, check_values, decide
from ..detengine import direct_determinant
from ..exceptions import GrpdetError, UnsupportedGroup
from ..groups import GroupSpec, is_characterized, parse_element
from ..logging_config import get_logger
from .store import CensusStore

logger = get_logger(__name__)


class CensusReport(BaseModel):
    """Soundness and coverage of the values found by a census."""

    group: str
    records: int = 0
    distinct_values: int = 0
    zero_records: int = 0
    necessary_only: bool = False
    violations: List[str] = []
    soundness_failures: List[int] = []
    reparse_failures: List[int] = []
    gaps: List[int] = []
    det_bound: int = 0

    @property
    def ok(self) -> bool:
        return not (self.violations or self.soundness_failures or self.reparse_failures)

    def to_dict(self) -> Dict[str, Any]:
        data = self.model_dump()
        data["ok"] = self.ok
        return data


def census_verify(store_path: Path, g: GroupSpec, det_bound: int = 0, necessary_only: bool = False,
                  reparse: bool = False) -> CensusReport:
    """Check every stored value against the necessary conditions and the decider for g.

    Groups without a complete characterization need necessary_only=True.
    The gap list holds decider-achievable |D| <= det_bound that the store
    never hit; it is evidence about coverage only.
    """
    if not necessary_only and not is_characterized(g):
        raise UnsupportedGroup(f"{g} has no complete decider; use the necessary-conditions-only mode")

    store = CensusStore(Path(store_path))
    report = CensusReport(group=g.key, necessary_only=necessary_only, det_bound=det_bound)
    found = set()
    decided: Dict[int, DecisionStatus] = {}
    for record in store.records():
        report.records += 1
        if record.D != record.A * record.B ** g.n:
            report.violations.append(f"cursor {record.cursor}: D={record.D} != A*B^{g.n}")
        conditions = check_values(record.A, record.B, record.D, g)
        if not conditions.ok:
            report.violations.append(f"cursor {record.cursor}: {'; '.join(conditions.details)}")
        if reparse:
            element = parse_element(record.element, g)
            if direct_determinant(element, g) != record.D:
                report.reparse_failures.append(record.cursor)
        if record.D == 0:
            report.zero_records += 1
            continue
        found.add(record.D)
        if necessary_only or record.D in decided:
            continue
        decided[record.D] = decide(record.D, g).status
        if decided[record.D] is not DecisionStatus.ACHIEVABLE:
            report.soundness_failures.append(record.D)

    report.distinct_values = len(found)
    if det_bound and not necessary_only:
        for D in range(-det_bound, det_bound + 1):
            if D == 0 or D in found:
                continue
            try:
                status = decide(D, g).status
            except GrpdetError:
                continue
            if status is DecisionStatus.ACHIEVABLE:
                report.gaps.append(D)

    logger.info(
        "Census verified",
        group=g.key,
        records=report.records,
        distinct=report.distinct_values,
        violations=len(report.violations),
        soundness_failures=len(report.soundness_failures),
        gaps=len(report.gaps),
    )
    return report
