"""
Census of small elements: enumeration, persistent store and verification.
"""
from .enumeration import support_count, total_cursors, unrank, unrank_combination
from .runner import CensusConfig, census_run, evaluate_block
from .store import CensusRecord, CensusStore, Checkpoint, CheckpointStore, compact_store
from .verify import CensusReport, census_verify

__all__ = [
    "CensusConfig",
    "CensusRecord",
    "CensusReport",
    "CensusStore",
    "Checkpoint",
    "CheckpointStore",
    "census_run",
    "census_verify",
    "compact_store",
    "evaluate_block",
    "support_count",
    "total_cursors",
    "unrank",
    "unrank_combination",
]
