# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled elimination kernel (rank over Q of sparse integer rows)."""
from math import gcd


cdef void _content_reduce(dict row):
    cdef object g = 0
    cdef object v
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for k in row:
            row[k] //= g


def rank_int_rows(list rows):
    cdef dict live = {}
    cdef dict col_rows = {}
    cdef dict r, prow, row
    cdef set s
    cdef Py_ssize_t i, j, pi, best_len, n
    cdef object pc, c, v, a, bv, g, fa, fb, nv
    cdef Py_ssize_t rank = 0
    cdef Py_ssize_t best_cnt, cnt
    for i in range(len(rows)):
        r = {c: v for c, v in (<dict>rows[i]).items() if v}
        if not r:
            continue
        live[i] = r
        for c in r:
            s = col_rows.get(c)
            if s is None:
                col_rows[c] = {i}
            else:
                s.add(i)
    while live:
        pi = -1
        best_len = 0
        for j in live:
            n = len(<dict>live[j])
            if pi < 0 or n < best_len or (n == best_len and j < pi):
                pi = j
                best_len = n
        prow = live.pop(pi)
        pc = None
        best_cnt = 0
        for c in prow:
            cnt = len(<set>col_rows[c])
            if pc is None or cnt < best_cnt or (cnt == best_cnt and c < pc):
                pc = c
                best_cnt = cnt
        for c in prow:
            (<set>col_rows[c]).discard(pi)
        rank += 1
        a = prow[pc]
        for j in list(col_rows[pc]):
            row = live[j]
            bv = row[pc]
            g = gcd(a, bv)
            fa = a // g
            fb = bv // g
            if fa != 1:
                for c in row:
                    row[c] *= fa
            for c, v in prow.items():
                nv = row.get(c, 0) - fb * v
                if nv:
                    if c not in row:
                        (<set>col_rows[c]).add(j)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    (<set>col_rows[c]).discard(j)
            if not row:
                del live[j]
            else:
                _content_reduce(row)
    return rank
