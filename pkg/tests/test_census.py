"""
Tests for the census enumeration, store, checkpointing and verification.
"""
import errno
import json
from math import comb

import pytest

from src.census import (
    CensusConfig,
    CensusRecord,
    CensusStore,
    Checkpoint,
    CheckpointStore,
    census_run,
    census_verify,
    compact_store,
    evaluate_block,
    support_count,
    total_cursors,
    unrank,
    unrank_combination,
)
from src.census.enumeration import blocks
from src.config import settings
from src.detengine import direct_determinant
from src.exceptions import CorruptCheckpoint, StorageFull, UnsupportedGroup
from src.groups import GroupRingElement, identity, make_group, parse_element, y_power


def make_config(g, store_paths, **overrides):
    store, checkpoint = store_paths
    options = dict(
        group=g,
        coeff_bound=1,
        support_bound=2,
        workers=1,
        block_size=50,
        checkpoint_every=1,
        store_path=store,
        checkpoint_path=checkpoint,
    )
    options.update(overrides)
    return CensusConfig(**options)


def test_support_count_and_total():
    assert support_count(20, 1, 0) == 1
    assert support_count(20, 1, 2) == comb(20, 2) * 4
    assert total_cursors(20, 1, 2) == 1 + 40 + 760
    assert total_cursors(20, 1, 2, max_elements=100) == 100
    assert total_cursors(20, 0, 5) == 1


def test_unrank_combination_is_lexicographic():
    combos = [unrank_combination(5, 3, rank) for rank in range(comb(5, 3))]
    assert combos == sorted(combos)
    assert len(set(combos)) == comb(5, 3)
    assert combos[0] == (0, 1, 2)
    assert combos[-1] == (2, 3, 4)


def test_unrank_order():
    """Zero, then single terms -1, +1 per position, then pairs."""
    assert unrank(0, 4, 1) == (0, 0, 0, 0)
    assert unrank(1, 4, 1) == (-1, 0, 0, 0)
    assert unrank(2, 4, 1) == (1, 0, 0, 0)
    assert unrank(3, 4, 1) == (0, -1, 0, 0)
    assert unrank(9, 4, 1) == (-1, -1, 0, 0)
    assert unrank(10, 4, 1) == (-1, 1, 0, 0)
    assert unrank(11, 4, 1) == (1, -1, 0, 0)


def test_unrank_is_a_bijection():
    total = total_cursors(6, 2, 6)
    seen = {unrank(cursor, 6, 2) for cursor in range(total)}
    assert len(seen) == total == 5**6


def test_unrank_out_of_range():
    with pytest.raises(ValueError):
        unrank(total_cursors(4, 1, 4), 4, 1)
    with pytest.raises(ValueError):
        unrank(1, 4, 0)
    with pytest.raises(ValueError):
        unrank(-1, 4, 1)


def test_blocks_cover_the_range():
    assert list(blocks(3, 10, 4)) == [(3, 7), (7, 10)]
    assert list(blocks(10, 10, 4)) == []


def test_evaluate_block(ga5):
    records = evaluate_block(((5, 2, 4), 1, 0, False, 0, 10))
    assert [r.cursor for r in records] == list(range(10))
    assert records[0].D == 0
    assert records[0].element == "0"
    # cursor 2 is the identity, cursor 3 is -Y
    assert records[2].D == 1
    assert records[3].D == -1
    for record in records:
        assert direct_determinant(parse_element(record.element, ga5), ga5) == record.D


def test_evaluate_block_det_bound():
    records = evaluate_block(((5, 2, 4), 1, 1, False, 0, 50))
    assert records
    assert all(abs(r.D) <= 1 for r in records)


def test_canonical_x_skips_translates():
    all_records = evaluate_block(((5, 2, 4), 1, 0, False, 0, 41))
    canonical = evaluate_block(((5, 2, 4), 1, 0, True, 0, 41))
    assert len(canonical) < len(all_records)
    assert {r.D for r in canonical} == {r.D for r in all_records}


def test_census_ga5_small(ga5, store_paths):
    cfg = make_config(ga5, store_paths)
    records = list(census_run(cfg))
    assert len(records) == cfg.total == 801
    assert [r.cursor for r in records] == list(range(801))
    values = {r.D for r in records}
    assert {0, 1, -1} <= values
    checkpoint = CheckpointStore(cfg.checkpoint_path).load()
    assert checkpoint.done
    assert checkpoint.records == 801
    assert checkpoint.store_offset == CensusStore(cfg.store_path).size()


def test_zero_coefficient_bound(ga5, store_paths):
    cfg = make_config(ga5, store_paths, coeff_bound=0)
    records = list(census_run(cfg))
    assert len(records) == 1
    assert (records[0].D, records[0].A, records[0].B) == (0, 0, 0)


def test_completed_census_is_not_rerun(ga5, store_paths):
    cfg = make_config(ga5, store_paths, support_bound=1)
    assert len(list(census_run(cfg))) == 41
    assert list(census_run(cfg)) == []


def test_resume_after_interruption_is_byte_identical(ga5, tmp_path):
    full = make_config(ga5, (tmp_path / "full.jsonl", tmp_path / "full.ckpt"))
    list(census_run(full))

    paths = (tmp_path / "resumed.jsonl", tmp_path / "resumed.ckpt")
    cfg = make_config(ga5, paths)
    run = census_run(cfg)
    for _ in range(120):
        next(run)
    run.close()
    assert CheckpointStore(paths[1]).load().cursor == 100

    list(census_run(cfg))
    assert paths[0].read_bytes() == (tmp_path / "full.jsonl").read_bytes()


def test_checkpoint_by_cursor_progress(mocker, ga5, store_paths):
    """A census storing almost nothing still checkpoints every checkpoint_cursors positions."""
    spy = mocker.spy(CheckpointStore, "save")
    cfg = make_config(ga5, store_paths, det_bound=1, checkpoint_every=10**6, checkpoint_cursors=100)
    list(census_run(cfg))
    saved = [call.args[1] for call in spy.call_args_list]
    assert [checkpoint.cursor for checkpoint in saved] == [100 * k for k in range(1, 9)] + [801]
    assert [checkpoint.done for checkpoint in saved] == [False] * 8 + [True]


def test_resume_rejects_other_configuration(ga5, store_paths):
    list(census_run(make_config(ga5, store_paths, support_bound=1)))
    with pytest.raises(CorruptCheckpoint):
        list(census_run(make_config(ga5, store_paths, support_bound=2)))


def test_store_without_checkpoint(ga5, store_paths):
    store, _ = store_paths
    store.write_text("{}\n")
    with pytest.raises(CorruptCheckpoint):
        list(census_run(make_config(ga5, store_paths)))


def test_restart_discards_previous_state(ga5, store_paths):
    store, _ = store_paths
    store.write_text("garbage\n")
    records = list(census_run(make_config(ga5, store_paths, support_bound=1), restart=True))
    assert len(records) == 41


def test_unreadable_checkpoint(ga5, store_paths):
    _, checkpoint = store_paths
    checkpoint.write_text("not json")
    with pytest.raises(CorruptCheckpoint):
        list(census_run(make_config(ga5, store_paths)))


def test_store_full(mocker, tmp_path):
    mocker.patch("src.census.store.os.fsync", side_effect=OSError(errno.ENOSPC, "No space left on device"))
    store = CensusStore(tmp_path / "s.jsonl")
    with pytest.raises(StorageFull):
        store.append([CensusRecord(D=1, A=1, B=1, element="1", cursor=2)])


def test_unreadable_store_line(tmp_path):
    path = tmp_path / "s.jsonl"
    path.write_text(json.dumps({"D": 1}) + "\n")
    with pytest.raises(CorruptCheckpoint):
        list(CensusStore(path).records())


def test_checkpoint_round_trip(tmp_path):
    checkpoints = CheckpointStore(tmp_path / "c.json")
    assert checkpoints.load() is None
    checkpoint = Checkpoint(cursor=7, store_offset=120, records=5, config_digest="abc")
    checkpoints.save(checkpoint)
    assert checkpoints.load() == checkpoint
    assert not (tmp_path / "c.json.tmp").exists()


def test_compact_store(ga5, store_paths):
    cfg = make_config(ga5, store_paths)
    records = list(census_run(cfg))
    distinct = {r.D for r in records}
    assert compact_store(cfg.store_path) == len(distinct)
    compacted = list(CensusStore(cfg.store_path).records())
    assert [r.D for r in compacted] == sorted(distinct)
    first = {}
    for r in records:
        first.setdefault(r.D, r.cursor)
    assert all(r.cursor == first[r.D] for r in compacted)


def test_config_defaults_follow_settings(ga5, tmp_path):
    cfg = CensusConfig(group=ga5, store_path=tmp_path / "x.jsonl")
    assert cfg.checkpoint_path == tmp_path / "x.jsonl.ckpt.json"
    assert cfg.support_limit == ga5.order
    assert cfg.digest() != CensusConfig(group=ga5, coeff_bound=2, store_path=tmp_path / "x.jsonl").digest()
    assert cfg.checkpoint_cursors == settings.checkpoint_cursors
    assert cfg.digest() == cfg.model_copy(update={"checkpoint_cursors": 7}).digest()


def test_config_validation(ga5):
    with pytest.raises(ValueError):
        CensusConfig(group=ga5, coeff_bound=-1)


def test_verify_ga5(ga5, store_paths):
    cfg = make_config(ga5, store_paths)
    list(census_run(cfg))
    report = census_verify(cfg.store_path, ga5, det_bound=20, reparse=True)
    assert report.ok
    assert report.records == 801
    assert report.zero_records > 0
    assert report.soundness_failures == []
    assert report.reparse_failures == []
    assert 1 not in report.gaps and -1 not in report.gaps
    assert report.to_dict()["ok"] is True


def test_verify_small_group_21_multiples_of_7(g21, store_paths):
    """Multiples of 7 found are multiples of 7⁴."""
    cfg = make_config(g21, store_paths)
    list(census_run(cfg))
    report = census_verify(cfg.store_path, g21)
    assert report.ok
    for record in CensusStore(cfg.store_path).records():
        if record.D % 7 == 0 and record.D:
            assert record.D % 7**4 == 0


def test_verify_flags_bad_records(ga5, tmp_path):
    path = tmp_path / "bad.jsonl"
    CensusStore(path).append([
        CensusRecord(D=2, A=2, B=1, element="2", cursor=0),
        CensusRecord(D=16, A=1, B=2, element="X", cursor=1),
    ])
    report = census_verify(path, ga5, reparse=True)
    assert not report.ok
    assert report.violations
    assert 2 in report.soundness_failures
    assert report.reparse_failures == [0, 1]


def test_verify_uncharacterized_group(d14, tmp_path):
    path = tmp_path / "d14.jsonl"
    CensusStore(path).append([CensusRecord(D=1, A=1, B=1, element="1", cursor=0)])
    with pytest.raises(UnsupportedGroup):
        census_verify(path, d14)
    assert census_verify(path, d14, necessary_only=True).ok


@pytest.mark.slow
def test_worker_count_does_not_change_the_store(ga7, tmp_path):
    single = make_config(ga7, (tmp_path / "one.jsonl", tmp_path / "one.ckpt"), block_size=97)
    pooled = make_config(ga7, (tmp_path / "four.jsonl", tmp_path / "four.ckpt"), block_size=97, workers=4)
    list(census_run(single))
    list(census_run(pooled))
    assert (tmp_path / "one.jsonl").read_bytes() == (tmp_path / "four.jsonl").read_bytes()


@pytest.mark.slow
def test_ga5_coefficient_bound_two_is_sound(ga5, store_paths):
    cfg = make_config(ga5, store_paths, coeff_bound=2, support_bound=3)
    list(census_run(cfg))
    assert census_verify(cfg.store_path, ga5).soundness_failures == []
