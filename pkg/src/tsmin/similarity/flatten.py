"""Flat array form of a tree, shared by both kernel backends.

Labels are interned to integers process-wide so that the bottom-up
equivalence classes of two trees can share one table. The integer values
are an internal detail; nothing persisted depends on them.
"""

from __future__ import annotations

import weakref
from collections import namedtuple

import numpy as np

_INTERN: dict = {}
_FLAT_CACHE: "weakref.WeakKeyDictionary" = weakref.WeakKeyDictionary()

ArrayPack = namedtuple(
    "ArrayPack",
    "labels child_off child_idx post sizes labels_post lmld keyroots",
)


def intern_label(label) -> int:
    key = (label.kind, label.text)
    code = _INTERN.get(key)
    if code is None:
        code = len(_INTERN)
        _INTERN[key] = code
    return code


class FlatTree:
    """Arrays indexed by preorder position unless noted otherwise.

    labels[v]        interned label of node v
    child_off/child_idx   CSR children lists, source order preserved
    post[k]          preorder index of the k-th node in postorder
    sizes[v]         subtree size; the subtree spans [v, v + sizes[v])
    labels_post[k]   label of the k-th postorder node
    lmld[k]          postorder rank of the leftmost leaf descendant
    keyroots         ascending postorder ranks with distinct lmld
    """

    __slots__ = ("n", "labels", "child_off", "child_idx", "post", "sizes",
                 "labels_post", "lmld", "keyroots", "_np")

    def __init__(self, tree):
        n = tree.size
        self.n = n
        self.labels = [intern_label(lab) for lab in tree.labels]
        off = [0] * (n + 1)
        idx = []
        for v in range(n):
            kids = tree.children[v]
            idx.extend(kids)
            off[v + 1] = len(idx)
        self.child_off = off
        self.child_idx = idx
        post = list(tree.postorder())
        self.post = post
        self.sizes = list(tree.subtree_sizes())
        self.labels_post = [self.labels[v] for v in post]
        post_of = [0] * n
        for k, v in enumerate(post):
            post_of[v] = k
        lmld = [0] * n
        for k, v in enumerate(post):
            if off[v] == off[v + 1]:
                lmld[k] = k
            else:
                lmld[k] = lmld[post_of[idx[off[v]]]]
        self.lmld = lmld
        last = {}
        for k in range(n):
            last[lmld[k]] = k
        self.keyroots = sorted(last.values())
        self._np = None

    def arrays(self) -> ArrayPack:
        """int32 views for the compiled backend; built once per tree."""
        if self._np is None:
            i32 = np.int32
            self._np = ArrayPack(
                np.asarray(self.labels, dtype=i32),
                np.asarray(self.child_off, dtype=i32),
                np.asarray(self.child_idx if self.child_idx else [0], dtype=i32),
                np.asarray(self.post, dtype=i32),
                np.asarray(self.sizes, dtype=i32),
                np.asarray(self.labels_post, dtype=i32),
                np.asarray(self.lmld, dtype=i32),
                np.asarray(self.keyroots, dtype=i32),
            )
        return self._np


def flatten(tree) -> FlatTree:
    """FlatTree for `tree`, cached per AstTree instance."""
    flat = _FLAT_CACHE.get(tree)
    if flat is None:
        flat = FlatTree(tree)
        _FLAT_CACHE[tree] = flat
    return flat
