"""Similarity matrices: build counts, cache reuse, persistence, staleness."""

import json
import random

import numpy as np
import pytest

from tsmin.errors import ConfigError, DataError, MatrixFormatError, StalenessError
from tsmin.matrix import (
    RosterEntry,
    SimilarityMatrix,
    build,
    iter_pairs,
    load,
    pair_count,
    pair_index,
    save,
)

from treegen import random_tree


def make_roster(count, seed, max_nodes=12):
    """Distinct-digest random trees labeled t0..t{count-1}."""
    rnd = random.Random(seed)
    seen, out = set(), []
    while len(out) < count:
        tree = random_tree(rnd, max_nodes)
        if tree.digest in seen:
            continue
        seen.add(tree.digest)
        out.append((f"t{len(out)}", tree))
    return out


class TestPairIndexing:
    def test_enumeration_order_matches_index(self):
        n = 9
        for k, (i, j) in enumerate(iter_pairs(n)):
            assert pair_index(i, j, n) == k
        assert pair_count(n) == n * (n - 1) // 2

    def test_bad_pair_rejected(self):
        with pytest.raises(ValueError):
            pair_index(3, 3, 5)


class TestBuild:
    def test_three_tests_no_cache(self):
        roster = make_roster(3, seed=1)
        mat, stats = build(roster, "topdown")
        assert (stats.recomputed, stats.reused) == (3, 0)
        dense = mat.dense()
        assert np.array_equal(dense, dense.T)
        assert np.all(np.diag(dense) == 1.0)
        assert np.all((dense >= 0.0) & (dense <= 1.0))

    def test_one_changed_test_recomputes_nine(self):
        roster = make_roster(10, seed=2)
        full, stats = build(roster, "combined")
        assert (stats.recomputed, stats.reused) == (45, 0)

        changed = list(roster)
        replacement = make_roster(12, seed=77)[11][1]
        assert replacement.digest not in {t.digest for _, t in roster}
        changed[4] = (changed[4][0], replacement)
        rebuilt, stats2 = build(changed, "combined", prior=full)
        # Only the 9 pairs touching the changed test are fresh work.
        assert (stats2.recomputed, stats2.reused) == (9, 36)

    def test_full_cache_rebuild_is_byte_identical(self, tmp_path):
        roster = make_roster(6, seed=3)
        first, _ = build(roster, "ted")
        again, stats = build(roster, "ted", prior=first)
        assert (stats.recomputed, stats.reused) == (0, 15)
        assert again == first
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        save(first, a)
        save(again, b)
        assert a.read_bytes() == b.read_bytes()

    def test_reused_entries_equal_fresh_recomputation(self):
        roster = make_roster(8, seed=4)
        cached_source, _ = build(roster, "bottomup")
        from_cache, stats = build(roster, "bottomup", prior=cached_source)
        fresh, _ = build(roster, "bottomup")
        assert stats.reused == 28
        assert from_cache.nums == fresh.nums
        assert from_cache.dens == fresh.dens

    def test_cache_keyed_by_digest_not_id(self):
        roster = make_roster(5, seed=5)
        original, _ = build(roster, "topdown")
        renamed = [(f"renamed{i}", tree) for i, (_, tree) in enumerate(roster)]
        rebuilt, stats = build(renamed, "topdown", prior=original)
        assert (stats.recomputed, stats.reused) == (0, 10)
        assert rebuilt.nums == original.nums

    def test_measure_mismatch_ignores_cache_with_warning(self):
        roster = make_roster(4, seed=6)
        prior, _ = build(roster, "ted")
        warnings = []
        _, stats = build(roster, "topdown", prior=prior, on_warning=warnings.append)
        assert stats.reused == 0 and stats.recomputed == 6
        assert len(warnings) == 1 and "ignored" in warnings[0]

    def test_jobs_do_not_change_output(self, tmp_path):
        roster = make_roster(7, seed=7)
        serial, _ = build(roster, "combined", jobs=1)
        parallel, _ = build(roster, "combined", jobs=3)
        assert serial == parallel
        a, b = tmp_path / "serial.json", tmp_path / "parallel.json"
        save(serial, a)
        save(parallel, b)
        assert a.read_bytes() == b.read_bytes()

    def test_duplicate_test_id_rejected(self):
        roster = make_roster(3, seed=8)
        roster[2] = (roster[0][0], roster[2][1])
        with pytest.raises(DataError):
            build(roster, "topdown")

    def test_bad_jobs_rejected(self):
        with pytest.raises(ConfigError):
            build(make_roster(2, seed=9), "topdown", jobs=0)

    def test_unknown_measure_rejected(self):
        with pytest.raises(ConfigError):
            build(make_roster(2, seed=10), "cosine")


class TestAccessors:
    def test_diagonal_symmetry_and_rationals(self):
        roster = make_roster(5, seed=11)
        mat, _ = build(roster, "topdown")
        for i in range(mat.size):
            assert mat.value(i, i) == 1.0
            assert mat.rational(i, i) == (1, 1)
            for j in range(mat.size):
                assert mat.value(i, j) == mat.value(j, i)
                assert mat.rational(i, j) == mat.rational(j, i)
                num, den = mat.rational(i, j)
                assert 0 <= num <= den
                assert mat.value(i, j) == num / den


class TestPersistence:
    def test_round_trip_identity(self, tmp_path):
        roster = make_roster(6, seed=12)
        mat, _ = build(roster, "ted")
        target = tmp_path / "m.json"
        save(mat, target)
        loaded = load(target)
        assert loaded == mat
        assert loaded.roster == mat.roster
        assert loaded.nums == mat.nums and loaded.dens == mat.dens

    def test_truncated_file(self, tmp_path):
        roster = make_roster(4, seed=13)
        mat, _ = build(roster, "topdown")
        target = tmp_path / "m.json"
        save(mat, target)
        target.write_bytes(target.read_bytes()[:50])
        with pytest.raises(MatrixFormatError):
            load(target)

    @pytest.mark.parametrize(
        "mangle",
        [
            lambda d: d.update(format="other"),
            lambda d: d.update(version=99),
            lambda d: d.update(measure="cosine"),
            lambda d: d.update(roster="not-a-list"),
            lambda d: d["roster"].append({"id": "x"}),
            lambda d: d["entries"].pop(),
            lambda d: d["entries"].append([1, 2]),
            lambda d: d["entries"].__setitem__(0, [3, 2]),
            lambda d: d["entries"].__setitem__(0, [1, 0]),
            lambda d: d["entries"].__setitem__(0, [0.5, 1]),
            lambda d: d.update(meta=[1]),
        ],
    )
    def test_malformed_documents(self, tmp_path, mangle):
        roster = make_roster(3, seed=14)
        mat, _ = build(roster, "topdown")
        target = tmp_path / "m.json"
        save(mat, target)
        doc = json.loads(target.read_text())
        mangle(doc)
        target.write_text(json.dumps(doc))
        with pytest.raises(MatrixFormatError):
            load(target)

    def test_missing_file(self, tmp_path):
        with pytest.raises(MatrixFormatError):
            load(tmp_path / "absent.json")


class TestStaleness:
    def test_matching_roster_accepted(self):
        roster = make_roster(4, seed=15)
        mat, _ = build(roster, "topdown")
        mat.ensure_matches([(tid, tree.digest) for tid, tree in roster])

    def test_reordered_roster_rejected(self):
        roster = make_roster(4, seed=16)
        mat, _ = build(roster, "topdown")
        shuffled = [roster[1], roster[0], roster[2], roster[3]]
        with pytest.raises(StalenessError):
            mat.ensure_matches([(tid, tree.digest) for tid, tree in shuffled])

    def test_changed_digest_rejected(self):
        roster = make_roster(4, seed=17)
        mat, _ = build(roster, "topdown")
        pairs = [(tid, tree.digest) for tid, tree in roster]
        pairs[2] = (pairs[2][0], "0" * 64)
        with pytest.raises(StalenessError):
            mat.ensure_matches(pairs)

    def test_entry_count_must_match_roster(self):
        roster = [RosterEntry("a", "d1"), RosterEntry("b", "d2")]
        with pytest.raises(MatrixFormatError):
            SimilarityMatrix("topdown", roster, [1, 1], [2, 2])
