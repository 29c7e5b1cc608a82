"""Pure-Python elimination kernels.

Same algorithm as the compiled ``_ckernels`` module; used when the
extension is not built.
"""
from math import gcd


def _content_reduce(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for k in row:
            row[k] //= g


def rank_int_rows(rows):
    """Rank over Q of a list of sparse integer rows ({col: int}).

    Rows are consumed. Pivots are picked Markowitz-style: shortest
    remaining row, then the sparsest column within it.
    """
    live = {}
    col_rows = {}
    for i, r in enumerate(rows):
        r = {c: v for c, v in r.items() if v}
        if not r:
            continue
        live[i] = r
        for c in r:
            s = col_rows.get(c)
            if s is None:
                col_rows[c] = {i}
            else:
                s.add(i)
    rank = 0
    while live:
        pi = min(live, key=lambda i: (len(live[i]), i))
        prow = live.pop(pi)
        pc = min(prow, key=lambda c: (len(col_rows[c]), c))
        for c in prow:
            col_rows[c].discard(pi)
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
                        col_rows[c].add(j)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    col_rows[c].discard(j)
            if not row:
                del live[j]
            else:
                _content_reduce(row)
    return rank
