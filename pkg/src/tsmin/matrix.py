"""Pairwise similarity matrices: computation, persistence, incremental reuse.

A matrix is bound to a roster (ordered test ids with content digests) and a
single measure.  Entries are stored as exact rationals so that cached and
freshly computed values compare bit-for-bit.  Reuse is keyed by the unordered
digest pair, never by test id, so renaming a test file cannot resurrect a
stale score.
"""

from __future__ import annotations

import json
import multiprocessing
import time
from dataclasses import dataclass

import numpy as np

from . import tree as tree_model
from .errors import ConfigError, DataError, MatrixFormatError, StalenessError
from .similarity import MEASURES, score_pair

MATRIX_FORMAT = "tsmin-simmatrix"
MATRIX_VERSION = 1


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    """Index of unordered pair (i, j), i < j, in row-major upper-triangle order."""
    if not 0 <= i < j < n:
        raise ValueError(f"bad pair ({i}, {j}) for size {n}")
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def iter_pairs(n: int):
    """All index pairs in storage order."""
    for i in range(n - 1):
        for j in range(i + 1, n):
            yield i, j


@dataclass(frozen=True)
class RosterEntry:
    """One test in matrix index order."""

    id: str
    digest: str


@dataclass
class BuildStats:
    recomputed: int
    reused: int
    seconds: float


class SimilarityMatrix:
    """Dense symmetric similarity scores over a fixed roster.

    Only the strict upper triangle is stored; the diagonal is 1 by the
    identity axiom and the lower triangle by symmetry.
    """

    __slots__ = ("measure", "roster", "nums", "dens", "meta", "_dense")

    def __init__(self, measure, roster, nums, dens, meta=None):
        if measure not in MEASURES:
            raise ConfigError(f"unknown measure {measure!r}")
        roster = tuple(roster)
        expected = pair_count(len(roster))
        if len(nums) != expected or len(dens) != expected:
            raise MatrixFormatError(
                f"expected {expected} entries for {len(roster)} tests, "
                f"got {len(nums)} numerators / {len(dens)} denominators"
            )
        for k, (num, den) in enumerate(zip(nums, dens)):
            if den <= 0 or num < 0 or num > den:
                raise MatrixFormatError(f"entry {k} is not a similarity: {num}/{den}")
        self.measure = measure
        self.roster = roster
        self.nums = list(nums)
        self.dens = list(dens)
        self.meta = dict(meta) if meta else {}
        self._dense = None

    @property
    def size(self) -> int:
        return len(self.roster)

    @property
    def ids(self):
        return tuple(entry.id for entry in self.roster)

    @property
    def digests(self):
        return tuple(entry.digest for entry in self.roster)

    def rational(self, i: int, j: int):
        """Exact value of entry (i, j) as (numerator, denominator)."""
        if i == j:
            return (1, 1)
        if i > j:
            i, j = j, i
        k = pair_index(i, j, self.size)
        return (self.nums[k], self.dens[k])

    def value(self, i: int, j: int) -> float:
        num, den = self.rational(i, j)
        return num / den

    def dense(self) -> np.ndarray:
        """Full symmetric float matrix with unit diagonal (cached)."""
        if self._dense is None:
            n = self.size
            out = np.ones((n, n), dtype=np.float64)
            for k, (i, j) in enumerate(iter_pairs(n)):
                out[i, j] = out[j, i] = self.nums[k] / self.dens[k]
            self._dense = out
        return self._dense

    def ensure_matches(self, roster) -> None:
        """Check that this matrix was built for exactly the given roster.

        `roster` is a sequence of (id, digest) pairs or RosterEntry objects
        in index order.  Any difference, including order, is staleness.
        """
        wanted = tuple(
            (e.id, e.digest) if isinstance(e, RosterEntry) else (e[0], e[1])
            for e in roster
        )
        have = tuple((e.id, e.digest) for e in self.roster)
        if wanted != have:
            raise StalenessError(
                f"matrix roster does not match the current roster "
                f"({len(have)} vs {len(wanted)} tests); rebuild the matrix"
            )

    def __eq__(self, other):
        if not isinstance(other, SimilarityMatrix):
            return NotImplemented
        return (
            self.measure == other.measure
            and self.roster == other.roster
            and self.nums == other.nums
            and self.dens == other.dens
        )

    __hash__ = None


# Worker-pool state: trees are shipped once per worker in serialized form.
_WORKER = None


def _init_worker(blobs, measure):
    global _WORKER
    trees = [tree_model.deserialize(b) for b in blobs]
    _WORKER = (trees, measure)


def _score_chunk(chunk):
    trees, measure = _WORKER
    out = []
    for i, j in chunk:
        score = score_pair(trees[i], trees[j], measure)
        out.append((score.num, score.den))
    return out


def _chunked(items, chunks):
    step = max(1, -(-len(items) // chunks))
    return [items[k : k + step] for k in range(0, len(items), step)]


def build(roster_trees, measure, *, prior=None, jobs=1, on_warning=None):
    """Score every pair of a roster, reusing entries from a prior matrix.

    `roster_trees` is an ordered sequence of (test_id, AstTree).  A pair is
    copied from `prior` when both content digests appear there under the same
    measure; everything else is recomputed.  Returns (matrix, BuildStats).
    Results land in pre-assigned slots, so `jobs` cannot change the output.
    """
    if jobs < 1:
        raise ConfigError(f"jobs must be >= 1, got {jobs}")
    start = time.perf_counter()
    ids = [tid for tid, _ in roster_trees]
    if len(set(ids)) != len(ids):
        dup = sorted({t for t in ids if ids.count(t) > 1})[0]
        raise DataError(f"duplicate test id {dup!r} in roster")
    trees = [t for _, t in roster_trees]
    roster = tuple(RosterEntry(tid, t.digest) for tid, t in roster_trees)

    prior_entries = {}
    if prior is not None:
        if prior.measure != measure:
            if on_warning is not None:
                on_warning(
                    f"cache measure {prior.measure!r} does not match requested "
                    f"{measure!r}; cache ignored"
                )
        else:
            for k, (i, j) in enumerate(iter_pairs(prior.size)):
                di, dj = prior.roster[i].digest, prior.roster[j].digest
                key = (di, dj) if di <= dj else (dj, di)
                prior_entries[key] = (prior.nums[k], prior.dens[k])

    n = len(roster)
    total = pair_count(n)
    nums = [0] * total
    dens = [1] * total
    missing = []
    reused = 0
    for k, (i, j) in enumerate(iter_pairs(n)):
        di, dj = roster[i].digest, roster[j].digest
        key = (di, dj) if di <= dj else (dj, di)
        hit = prior_entries.get(key)
        if hit is not None:
            nums[k], dens[k] = hit
            reused += 1
        else:
            missing.append((k, i, j))

    if missing and jobs > 1:
        blobs = [tree_model.serialize(t) for t in trees]
        chunks = _chunked([(i, j) for _, i, j in missing], jobs * 4)
        with multiprocessing.Pool(
            processes=jobs, initializer=_init_worker, initargs=(blobs, measure)
        ) as pool:
            results = pool.map(_score_chunk, chunks)
        flat = [entry for part in results for entry in part]
        for (k, _, _), (num, den) in zip(missing, flat):
            nums[k], dens[k] = num, den
    else:
        for k, i, j in missing:
            score = score_pair(trees[i], trees[j], measure)
            nums[k], dens[k] = score.num, score.den

    matrix = SimilarityMatrix(measure, roster, nums, dens)
    stats = BuildStats(
        recomputed=len(missing), reused=reused, seconds=time.perf_counter() - start
    )
    return matrix, stats


def save(matrix: SimilarityMatrix, path) -> None:
    doc = {
        "format": MATRIX_FORMAT,
        "version": MATRIX_VERSION,
        "measure": matrix.measure,
        "roster": [{"id": e.id, "digest": e.digest} for e in matrix.roster],
        "entries": [[num, den] for num, den in zip(matrix.nums, matrix.dens)],
        "meta": matrix.meta,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def load(path) -> SimilarityMatrix:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MatrixFormatError(f"cannot read matrix file {path}: {exc}") from exc
    except ValueError as exc:
        raise MatrixFormatError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MatrixFormatError(f"{path}: top level must be an object")
    if doc.get("format") != MATRIX_FORMAT:
        raise MatrixFormatError(f"{path}: format is not {MATRIX_FORMAT!r}")
    if doc.get("version") != MATRIX_VERSION:
        raise MatrixFormatError(f"{path}: unsupported version {doc.get('version')!r}")
    measure = doc.get("measure")
    if measure not in MEASURES:
        raise MatrixFormatError(f"{path}: unknown measure {measure!r}")
    raw_roster = doc.get("roster")
    if not isinstance(raw_roster, list):
        raise MatrixFormatError(f"{path}: roster must be a list")
    roster = []
    for pos, item in enumerate(raw_roster):
        if (
            not isinstance(item, dict)
            or not isinstance(item.get("id"), str)
            or not isinstance(item.get("digest"), str)
        ):
            raise MatrixFormatError(f"{path}: roster[{pos}] needs string id and digest")
        roster.append(RosterEntry(item["id"], item["digest"]))
    raw_entries = doc.get("entries")
    if not isinstance(raw_entries, list):
        raise MatrixFormatError(f"{path}: entries must be a list")
    nums, dens = [], []
    for pos, item in enumerate(raw_entries):
        ok = (
            isinstance(item, list)
            and len(item) == 2
            and all(isinstance(v, int) and not isinstance(v, bool) for v in item)
        )
        if not ok:
            raise MatrixFormatError(f"{path}: entries[{pos}] must be [num, den] integers")
        nums.append(item[0])
        dens.append(item[1])
    meta = doc.get("meta") or {}
    if not isinstance(meta, dict):
        raise MatrixFormatError(f"{path}: meta must be an object")
    try:
        return SimilarityMatrix(measure, roster, nums, dens, meta)
    except MatrixFormatError as exc:
        raise MatrixFormatError(f"{path}: {exc}") from exc
