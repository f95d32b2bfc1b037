"""
Census persistence: an append-only JSON-lines store and its checkpoint.
"""
import errno
import json
import os
from pathlib import Path
from typing import Iterator, List, Optional

from pydantic import BaseModel, ValidationError

from ..exceptions import CorruptCheckpoint, StorageFull
from ..logging_config import get_logger

logger = get_logger(__name__)


class CensusRecord(BaseModel):
    """One enumerated element and its factored determinant."""

    D: int
    A: int
    B: int
    element: str
    cursor: int

    def to_line(self) -> str:
        return self.model_dump_json() + "\n"


class Checkpoint(BaseModel):
    """Resume point: the next cursor and the store size that matches it."""

    cursor: int
    store_offset: int
    records: int
    config_digest: str
    done: bool = False


def _raise_storage(path: Path, error: OSError) -> None:
    if error.errno in (errno.ENOSPC, errno.EDQUOT):
        logger.error("Census storage full", path=str(path), error=str(error))
        raise StorageFull(f"no space left writing {path}") from error
    raise error


class CensusStore:
    """Line-delimited CensusRecord file, written by a single owner."""

    def __init__(self, path: Path):
        self.path = Path(path)

    def exists(self) -> bool:
        return self.path.exists()

    def size(self) -> int:
        return self.path.stat().st_size if self.path.exists() else 0

    def append(self, records: List[CensusRecord]) -> int:
        """Append records, flush to disk and return the new size."""
        if not records:
            return self.size()
        data = "".join(record.to_line() for record in records).encode("utf-8")
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "ab") as handle:
                handle.write(data)
                handle.flush()
                os.fsync(handle.fileno())
        except OSError as e:
            _raise_storage(self.path, e)
        return self.size()

    def truncate(self, offset: int) -> None:
        """Drop everything written after offset."""
        if self.size() > offset:
            logger.info("Discarding records past the checkpoint", path=str(self.path), offset=offset)
            os.truncate(self.path, offset)

    def remove(self) -> None:
        if self.path.exists():
            self.path.unlink()

    def records(self) -> Iterator[CensusRecord]:
        if not self.path.exists():
            return
        with open(self.path, "r", encoding="utf-8") as handle:
            for number, line in enumerate(handle, start=1):
                if not line.strip():
                    continue
                try:
                    yield CensusRecord.model_validate_json(line)
                except ValidationError as e:
                    logger.error("Unreadable store line", path=str(self.path), line=number, error=str(e))
                    raise CorruptCheckpoint(f"{self.path}:{number} is not a census record") from e

    def rewrite(self, records: List[CensusRecord]) -> None:
        """Replace the whole store atomically."""
        temp = self.path.with_name(self.path.name + ".tmp")
        try:
            with open(temp, "w", encoding="utf-8") as handle:
                handle.writelines(record.to_line() for record in records)
                handle.flush()
                os.fsync(handle.fileno())
            os.replace(temp, self.path)
        except OSError as e:
            _raise_storage(self.path, e)


class CheckpointStore:
    """JSON checkpoint replaced atomically via a temporary file."""

    def __init__(self, path: Path):
        self.path = Path(path)

    def exists(self) -> bool:
        return self.path.exists()

    def load(self) -> Optional[Checkpoint]:
        if not self.path.exists():
            return None
        try:
            return Checkpoint.model_validate(json.loads(self.path.read_text(encoding="utf-8")))
        except (ValueError, ValidationError) as e:
            logger.error("Unreadable checkpoint", path=str(self.path), error=str(e))
            raise CorruptCheckpoint(f"checkpoint {self.path} is unreadable; rerun with --restart") from e

    def save(self, checkpoint: Checkpoint) -> None:
        temp = self.path.with_name(self.path.name + ".tmp")
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            temp.write_text(checkpoint.model_dump_json(), encoding="utf-8")
            os.replace(temp, self.path)
        except OSError as e:
            _raise_storage(self.path, e)
        logger.debug("Checkpoint written", path=str(self.path), cursor=checkpoint.cursor, records=checkpoint.records)

    def remove(self) -> None:
        if self.path.exists():
            self.path.unlink()


def compact_store(path: Path) -> int:
    """Rewrite the store sorted by D with one record per value (lowest cursor kept)."""
    store = CensusStore(path)
    best = {}
    for record in store.records():
        current = best.get(record.D)
        if current is None or record.cursor < current.cursor:
            best[record.D] = record
    ordered = [best[D] for D in sorted(best)]
    store.rewrite(ordered)
    logger.info("Census store compacted", path=str(path), values=len(ordered))
    return len(ordered)
