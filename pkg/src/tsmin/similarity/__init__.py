"""Pairwise tree similarity measures.

All four measures map a tree pair to [0, 1], with 1 meaning identical:

  topdown    2*|Vm| / (|V1|+|V2|), Vm the largest common top-down subtree
  bottomup   same form, Vm the largest common complete (bottom-up) subtree
  combined   union of the two match sets, counted in one tree, clamped to 1
  ted        (|V1|+|V2|-d) / (|V1|+|V2|), d the unit-cost tree edit distance

Scores carry the exact rational (num, den) next to the float so callers
can compare and aggregate without rounding drift.
"""

from __future__ import annotations

from dataclasses import dataclass

from tsmin.errors import ConfigError
from tsmin.similarity import _backend
from tsmin.similarity._backend import BACKEND_NAME, HAVE_COMPILED
from tsmin.similarity.flatten import FlatTree, flatten

MEASURES = ("topdown", "bottomup", "combined", "ted")


@dataclass(frozen=True)
class SimilarityScore:
    """One scored pair.

    common_size is |Vm| for the subtree measures, the raw union size for
    combined, and the edit distance d for ted.
    """

    measure: str
    value: float
    common_size: int
    num: int
    den: int


def _subtree_score(measure: str, vm: int, n1: int, n2: int) -> SimilarityScore:
    den = n1 + n2
    num = 2 * vm
    return SimilarityScore(measure, num / den, vm, num, den)


def top_down(t1, t2) -> SimilarityScore:
    vm = _backend.top_down_size(flatten(t1), flatten(t2))
    return _subtree_score("topdown", vm, t1.size, t2.size)


def bottom_up(t1, t2) -> SimilarityScore:
    vm, _ = _backend.bottom_up_best(flatten(t1), flatten(t2))
    return _subtree_score("bottomup", vm, t1.size, t2.size)


def combined(t1, t2) -> SimilarityScore:
    # Fixed orientation: the tree with the smaller content hash hosts the
    # match sets, so combined(a, b) == combined(b, a) byte for byte.
    a, b = (t1, t2) if t1.digest <= t2.digest else (t2, t1)
    fa, fb = flatten(a), flatten(b)
    mask = bytearray(fa.n)
    _backend.top_down_mark(fa, fb, mask)
    bu_size, bu_root = _backend.bottom_up_best(fa, fb)
    if bu_root >= 0:
        mask[bu_root:bu_root + bu_size] = b"\x01" * bu_size
    union = sum(mask)
    den = t1.size + t2.size
    num = min(2 * union, den)
    return SimilarityScore("combined", num / den, union, num, den)


def tree_edit_distance(t1, t2) -> SimilarityScore:
    d = _backend.ted_distance(flatten(t1), flatten(t2))
    den = t1.size + t2.size
    num = den - d
    return SimilarityScore("ted", num / den, d, num, den)


_DISPATCH = {
    "topdown": top_down,
    "bottomup": bottom_up,
    "combined": combined,
    "ted": tree_edit_distance,
}


def score_pair(t1, t2, measure: str) -> SimilarityScore:
    try:
        fn = _DISPATCH[measure]
    except KeyError:
        raise ConfigError(
            f"unknown measure {measure!r}; expected one of {', '.join(MEASURES)}"
        ) from None
    return fn(t1, t2)


__all__ = [
    "BACKEND_NAME",
    "HAVE_COMPILED",
    "MEASURES",
    "FlatTree",
    "SimilarityScore",
    "bottom_up",
    "combined",
    "flatten",
    "score_pair",
    "top_down",
    "tree_edit_distance",
]
