# cython: language_level=3
"""Compiled similarity kernels.

Mirrors tsmin.similarity._pykernels function for function; the pure
version is the readable reference and the parity tests hold the two
together. Inputs are FlatTree objects; the typed arrays come from
FlatTree.arrays().
"""

import numpy as np


def top_down_size(f1, f2):
    # Root check before any buffer binding: mismatches are free.
    if f1.labels[0] != f2.labels[0]:
        return 0
    a = f1.arrays()
    b = f2.arrays()
    cdef const int[::1] labels1 = a.labels
    cdef const int[::1] off1 = a.child_off
    cdef const int[::1] idx1 = a.child_idx
    cdef const int[::1] labels2 = b.labels
    cdef const int[::1] off2 = b.child_off
    cdef const int[::1] idx2 = b.child_idx
    # Every pushed pair is label-equal and counted exactly once, so the
    # total number of pushes is at most min(n1, n2).
    cdef int cap = min(f1.n, f2.n) + 1
    sv_arr = np.empty(cap, dtype=np.int32)
    sw_arr = np.empty(cap, dtype=np.int32)
    cdef int[::1] sv = sv_arr
    cdef int[::1] sw = sw_arr
    cdef int top = 0, count = 0
    cdef int v, w, a0, b0, k, t, cv, cw
    sv[0] = 0
    sw[0] = 0
    top = 1
    while top:
        top -= 1
        v = sv[top]
        w = sw[top]
        count += 1
        a0 = off1[v]
        b0 = off2[w]
        k = off1[v + 1] - a0
        if off2[w + 1] - b0 < k:
            k = off2[w + 1] - b0
        for t in range(k):
            cv = idx1[a0 + t]
            cw = idx2[b0 + t]
            if labels1[cv] == labels2[cw]:
                sv[top] = cv
                sw[top] = cw
                top += 1
    return count


def top_down_mark(f1, f2, mask):
    if f1.labels[0] != f2.labels[0]:
        return 0
    a = f1.arrays()
    b = f2.arrays()
    cdef const int[::1] labels1 = a.labels
    cdef const int[::1] off1 = a.child_off
    cdef const int[::1] idx1 = a.child_idx
    cdef const int[::1] labels2 = b.labels
    cdef const int[::1] off2 = b.child_off
    cdef const int[::1] idx2 = b.child_idx
    cdef unsigned char[::1] markv = mask
    cdef int cap = min(f1.n, f2.n) + 1
    sv_arr = np.empty(cap, dtype=np.int32)
    sw_arr = np.empty(cap, dtype=np.int32)
    cdef int[::1] sv = sv_arr
    cdef int[::1] sw = sw_arr
    cdef int top = 0, count = 0
    cdef int v, w, a0, b0, k, t, cv, cw
    sv[0] = 0
    sw[0] = 0
    top = 1
    while top:
        top -= 1
        v = sv[top]
        w = sw[top]
        count += 1
        markv[v] = 1
        a0 = off1[v]
        b0 = off2[w]
        k = off1[v + 1] - a0
        if off2[w + 1] - b0 < k:
            k = off2[w + 1] - b0
        for t in range(k):
            cv = idx1[a0 + t]
            cw = idx2[b0 + t]
            if labels1[cv] == labels2[cw]:
                sv[top] = cv
                sw[top] = cw
                top += 1
    return count


def _bottom_up_classes(f, dict table):
    a = f.arrays()
    cdef const int[::1] labels = a.labels
    cdef const int[::1] off = a.child_off
    cdef const int[::1] idx = a.child_idx
    cdef const int[::1] post = a.post
    cdef int n = f.n
    cdef list cls = [0] * n
    cdef int k, v, i
    for k in range(n):
        v = post[k]
        key = (labels[v],
               tuple([cls[idx[i]] for i in range(off[v], off[v + 1])]))
        c = table.get(key)
        if c is None:
            c = len(table)
            table[key] = c
        cls[v] = c
    return cls


def bottom_up_best(f1, f2):
    cdef dict table = {}
    cdef list cls1 = _bottom_up_classes(f1, table)
    cdef list cls2 = _bottom_up_classes(f2, table)
    shared = set(cls2)
    a = f1.arrays()
    cdef const int[::1] sizes = a.sizes
    cdef int best = 0, root = -1
    cdef int v
    for v in range(f1.n):
        if sizes[v] > best and cls1[v] in shared:
            best = sizes[v]
            root = v
    return best, root


def ted_distance(f1, f2):
    a = f1.arrays()
    b = f2.arrays()
    cdef const int[::1] l1 = a.lmld
    cdef const int[::1] lab1 = a.labels_post
    cdef const int[::1] kr1 = a.keyroots
    cdef const int[::1] l2 = b.lmld
    cdef const int[::1] lab2 = b.labels_post
    cdef const int[::1] kr2 = b.keyroots
    cdef int n1 = f1.n, n2 = f2.n
    td_arr = np.zeros((n1, n2), dtype=np.int32)
    fd_arr = np.zeros((n1 + 1, n2 + 1), dtype=np.int32)
    cdef int[:, ::1] td = td_arr
    cdef int[:, ::1] fd = fd_arr
    cdef int ki, kj, i, j, li, lj, ioff, joff, m, n
    cdef int x, y, xo, yo, lx, cost, best, alt
    for ki in range(kr1.shape[0]):
        i = kr1[ki]
        li = l1[i]
        ioff = li - 1
        m = i - li + 2
        for kj in range(kr2.shape[0]):
            j = kr2[kj]
            lj = l2[j]
            joff = lj - 1
            n = j - lj + 2
            fd[0, 0] = 0
            for x in range(1, m):
                fd[x, 0] = fd[x - 1, 0] + 1
            for y in range(1, n):
                fd[0, y] = fd[0, y - 1] + 1
            for x in range(1, m):
                xo = x + ioff
                lx = l1[xo]
                for y in range(1, n):
                    yo = y + joff
                    if lx == li and l2[yo] == lj:
                        cost = 0 if lab1[xo] == lab2[yo] else 1
                        best = fd[x - 1, y - 1] + cost
                        alt = fd[x - 1, y] + 1
                        if alt < best:
                            best = alt
                        alt = fd[x, y - 1] + 1
                        if alt < best:
                            best = alt
                        fd[x, y] = best
                        td[xo, yo] = best
                    else:
                        best = fd[lx - 1 - ioff, l2[yo] - 1 - joff] + td[xo, yo]
                        alt = fd[x - 1, y] + 1
                        if alt < best:
                            best = alt
                        alt = fd[x, y - 1] + 1
                        if alt < best:
                            best = alt
                        fd[x, y] = best
    return int(td[n1 - 1, n2 - 1])
