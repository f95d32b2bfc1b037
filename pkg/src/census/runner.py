"""
Exhaustive census of bounded-coefficient elements.

The cursor space is cut into contiguous blocks; workers evaluate blocks
independently and results are merged in cursor order, so the store does
not depend on the worker count.
"""
import hashlib
import signal
import threading
from multiprocessing import Pool
from pathlib import Path
from typing import Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..conditions import check_necessary
from ..config import settings
from ..detengine import factored_determinant
from ..exceptions import CorruptCheckpoint, InternalInconsistency
from ..groups import GroupRingElement, GroupSpec, format_element, make_group
from ..logging_config import get_logger
from .enumeration import blocks, iter_cursors, total_cursors
from .store import CensusRecord, CensusStore, Checkpoint, CheckpointStore

logger = get_logger(__name__)


class CensusConfig(BaseModel):
    """Bounds and storage for one census run."""

    model_config = ConfigDict(frozen=True)

    group: GroupSpec
    coeff_bound: int = Field(1, ge=0)
    support_bound: Optional[int] = Field(None, ge=0)
    det_bound: int = Field(0, ge=0)
    max_elements: Optional[int] = Field(None, ge=0)
    canonical_x: bool = False
    workers: int = Field(default_factory=lambda: settings.workers, ge=1)
    block_size: int = Field(default_factory=lambda: settings.block_size, ge=1)
    checkpoint_every: int = Field(default_factory=lambda: settings.checkpoint_every, ge=1)
    checkpoint_cursors: int = Field(default_factory=lambda: settings.checkpoint_cursors, ge=1)
    store_path: Path = Field(default_factory=lambda: settings.get_store_path())
    checkpoint_path: Optional[Path] = None

    @model_validator(mode="before")
    @classmethod
    def _derive_checkpoint_path(cls, data):
        if isinstance(data, dict) and data.get("checkpoint_path") is None:
            data = dict(data)
            store = Path(data.get("store_path") or settings.get_store_path())
            data["store_path"] = store
            data["checkpoint_path"] = settings.get_checkpoint_path(store)
        return data

    @property
    def support_limit(self) -> int:
        return self.group.order if self.support_bound is None else self.support_bound

    @property
    def total(self) -> int:
        return total_cursors(self.group.order, self.coeff_bound, self.support_limit, self.max_elements)

    def digest(self) -> str:
        """Hash of everything that determines the store contents."""
        key = "|".join(
            str(part)
            for part in (
                self.group.key,
                self.coeff_bound,
                self.support_limit,
                self.det_bound,
                self.max_elements,
                self.canonical_x,
            )
        )
        return hashlib.sha256(key.encode("utf-8")).hexdigest()


BlockTask = Tuple[Tuple[int, int, int], int, int, bool, int, int]


def _is_x_canonical(e: GroupRingElement, g: GroupSpec) -> bool:
    """True when e is the smallest of its X^i e translates; D(X) = 1."""
    flat = e.flat()
    n = g.n
    for shift in range(1, g.p):
        # X^shift * X^i Y^j = X^(i+shift) Y^j
        moved = tuple(flat[((i - shift) % g.p) * n + j] for i in range(g.p) for j in range(n))
        if moved < flat:
            return False
    return True


def evaluate_block(task: BlockTask) -> List[CensusRecord]:
    """Records for cursors [start, stop) of one block; runs inside worker processes."""
    (p, r, n), coeff_bound, det_bound, canonical_x, start, stop = task
    g = make_group(p, r, n)
    records = []
    for cursor, flat in iter_cursors(p * n, coeff_bound, start, stop):
        element = GroupRingElement.from_flat(g, flat)
        if canonical_x and not _is_x_canonical(element, g):
            continue
        report = factored_determinant(element, g)
        if det_bound and abs(report.D) > det_bound:
            continue
        conditions = check_necessary(report)
        if not conditions.ok:
            raise InternalInconsistency(
                f"cursor {cursor} on {g}: D={report.D} violates {conditions.details}"
            )
        records.append(
            CensusRecord(D=report.D, A=report.A, B=report.B, element=format_element(element), cursor=cursor)
        )
    return records


class _StopFlag:
    """Set by SIGINT/SIGTERM; the run stops at the next block boundary."""

    def __init__(self):
        self.stopped = False
        self._previous = {}

    def _handle(self, signum, frame):
        logger.warning("Interrupt received, stopping after the current block", signal=signum)
        self.stopped = True

    def install(self) -> None:
        if threading.current_thread() is not threading.main_thread():
            return
        for signum in (signal.SIGINT, signal.SIGTERM):
            self._previous[signum] = signal.signal(signum, self._handle)

    def restore(self) -> None:
        for signum, handler in self._previous.items():
            signal.signal(signum, handler)
        self._previous.clear()


def _resume_point(cfg: CensusConfig, store: CensusStore, checkpoints: CheckpointStore,
                  restart: bool) -> Checkpoint:
    digest = cfg.digest()
    fresh = Checkpoint(cursor=0, store_offset=0, records=0, config_digest=digest)
    if restart:
        store.remove()
        checkpoints.remove()
        return fresh
    checkpoint = checkpoints.load()
    if checkpoint is None:
        if store.size():
            raise CorruptCheckpoint(f"{store.path} exists without a checkpoint; rerun with --restart")
        return fresh
    if checkpoint.config_digest != digest:
        raise CorruptCheckpoint(f"checkpoint {checkpoints.path} belongs to a different census configuration")
    if store.size() < checkpoint.store_offset:
        raise CorruptCheckpoint(
            f"store {store.path} is shorter ({store.size()} bytes) than its checkpoint ({checkpoint.store_offset})"
        )
    store.truncate(checkpoint.store_offset)
    logger.info("Resuming census", cursor=checkpoint.cursor, records=checkpoint.records)
    return checkpoint


def _block_results(cfg: CensusConfig, start: int) -> Iterator[Tuple[int, List[CensusRecord]]]:
    g = cfg.group
    tasks = (
        ((g.p, g.r, g.n), cfg.coeff_bound, cfg.det_bound, cfg.canonical_x, lo, hi)
        for lo, hi in blocks(start, cfg.total, cfg.block_size)
    )
    if cfg.workers == 1:
        for task in tasks:
            yield task[-1], evaluate_block(task)
        return
    spans = blocks(start, cfg.total, cfg.block_size)
    with Pool(processes=cfg.workers) as pool:
        # imap keeps submission order
        for (_, hi), records in zip(spans, pool.imap(evaluate_block, tasks)):
            yield hi, records


def census_run(cfg: CensusConfig, restart: bool = False) -> Iterator[CensusRecord]:
    """Enumerate, store and yield records in cursor order, checkpointing as it goes."""
    store = CensusStore(cfg.store_path)
    checkpoints = CheckpointStore(cfg.checkpoint_path)
    checkpoint = _resume_point(cfg, store, checkpoints, restart)
    if checkpoint.done:
        logger.info("Census already complete", store=str(store.path), records=checkpoint.records)
        return

    logger.info(
        "Census started",
        group=cfg.group.key,
        coeff_bound=cfg.coeff_bound,
        support_bound=cfg.support_limit,
        start=checkpoint.cursor,
        total=cfg.total,
        workers=cfg.workers,
    )
    stop = _StopFlag()
    stop.install()
    written = checkpoint.records
    since_checkpoint = 0
    cursor = saved_cursor = checkpoint.cursor
    try:
        for cursor, records in _block_results(cfg, checkpoint.cursor):
            offset = store.append(records)
            written += len(records)
            since_checkpoint += len(records)
            for record in records:
                yield record
            # records alone can stall under a tight det_bound
            due = since_checkpoint >= cfg.checkpoint_every or cursor - saved_cursor >= cfg.checkpoint_cursors
            if due or stop.stopped:
                checkpoints.save(
                    Checkpoint(cursor=cursor, store_offset=offset, records=written, config_digest=cfg.digest())
                )
                logger.info("Census block merged", cursor=cursor, records=written)
                since_checkpoint = 0
                saved_cursor = cursor
            if stop.stopped:
                logger.warning("Census interrupted", cursor=cursor, records=written)
                return
        checkpoints.save(
            Checkpoint(
                cursor=cfg.total,
                store_offset=store.size(),
                records=written,
                config_digest=cfg.digest(),
                done=True,
            )
        )
        logger.info("Census finished", records=written, store=str(store.path))
    finally:
        stop.restore()
