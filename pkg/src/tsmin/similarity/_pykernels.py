"""Pure-Python similarity kernels over FlatTree pairs.

The compiled backend (tsmin._simcore) implements the same four functions
with the same signatures and must return identical values; the parity is
pinned by tests. Keep the two in lockstep when changing anything here.
"""

from __future__ import annotations


def top_down_size(f1, f2) -> int:
    """Node count of the largest common top-down subtree.

    Descends both trees in parallel from the roots, pairing the i-th child
    with the i-th child. A mismatched child pair is skipped; later sibling
    positions are still tried. Returns 0 when the root labels differ.
    """
    labels1, labels2 = f1.labels, f2.labels
    if labels1[0] != labels2[0]:
        return 0
    off1, idx1 = f1.child_off, f1.child_idx
    off2, idx2 = f2.child_off, f2.child_idx
    count = 0
    stack = [(0, 0)]
    while stack:
        v, w = stack.pop()
        count += 1
        a = off1[v]
        b = off2[w]
        k = min(off1[v + 1] - a, off2[w + 1] - b)
        for t in range(k):
            cv = idx1[a + t]
            cw = idx2[b + t]
            if labels1[cv] == labels2[cw]:
                stack.append((cv, cw))
    return count


def top_down_mark(f1, f2, mask) -> int:
    """top_down_size that also sets mask[v] = 1 for every matched f1 node."""
    labels1, labels2 = f1.labels, f2.labels
    if labels1[0] != labels2[0]:
        return 0
    off1, idx1 = f1.child_off, f1.child_idx
    off2, idx2 = f2.child_off, f2.child_idx
    count = 0
    stack = [(0, 0)]
    while stack:
        v, w = stack.pop()
        count += 1
        mask[v] = 1
        a = off1[v]
        b = off2[w]
        k = min(off1[v + 1] - a, off2[w + 1] - b)
        for t in range(k):
            cv = idx1[a + t]
            cw = idx2[b + t]
            if labels1[cv] == labels2[cw]:
                stack.append((cv, cw))
    return count


def _bottom_up_classes(f, table):
    """Equivalence class per node: equal class id <=> equal complete subtree."""
    n = f.n
    labels, off, idx = f.labels, f.child_off, f.child_idx
    cls = [0] * n
    for v in f.post:
        key = (labels[v], tuple(cls[idx[i]] for i in range(off[v], off[v + 1])))
        c = table.get(key)
        if c is None:
            c = len(table)
            table[key] = c
        cls[v] = c
    return cls


def bottom_up_best(f1, f2):
    """Largest complete subtree present in both trees.

    Returns (size, root1) where root1 is the smallest f1 preorder index
    rooting a subtree of that size, or (0, -1) when nothing is shared.
    """
    table: dict = {}
    cls1 = _bottom_up_classes(f1, table)
    cls2 = _bottom_up_classes(f2, table)
    shared = set(cls2)
    best = 0
    root = -1
    sizes = f1.sizes
    for v in range(f1.n):
        if cls1[v] in shared and sizes[v] > best:
            best = sizes[v]
            root = v
    return best, root


def ted_distance(f1, f2) -> int:
    """Tree edit distance, unit cost for relabel/insert/delete."""
    n1, n2 = f1.n, f2.n
    l1, l2 = f1.lmld, f2.lmld
    lab1, lab2 = f1.labels_post, f2.labels_post
    td = [[0] * n2 for _ in range(n1)]
    fd = [[0] * (n2 + 1) for _ in range(n1 + 1)]
    for i in f1.keyroots:
        li = l1[i]
        ioff = li - 1
        m = i - li + 2
        for j in f2.keyroots:
            lj = l2[j]
            joff = lj - 1
            n = j - lj + 2
            fd[0][0] = 0
            for x in range(1, m):
                fd[x][0] = fd[x - 1][0] + 1
            row0 = fd[0]
            for y in range(1, n):
                row0[y] = row0[y - 1] + 1
            for x in range(1, m):
                xo = x + ioff
                lx = l1[xo]
                cur = fd[x]
                prev = fd[x - 1]
                for y in range(1, n):
                    yo = y + joff
                    if lx == li and l2[yo] == lj:
                        cost = 0 if lab1[xo] == lab2[yo] else 1
                        best = prev[y - 1] + cost
                        if prev[y] + 1 < best:
                            best = prev[y] + 1
                        if cur[y - 1] + 1 < best:
                            best = cur[y - 1] + 1
                        cur[y] = best
                        td[xo][yo] = best
                    else:
                        best = fd[lx - 1 - ioff][l2[yo] - 1 - joff] + td[xo][yo]
                        if prev[y] + 1 < best:
                            best = prev[y] + 1
                        if cur[y - 1] + 1 < best:
                            best = cur[y - 1] + 1
                        cur[y] = best
    return td[n1 - 1][n2 - 1]
