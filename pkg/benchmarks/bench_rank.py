"""Compare the compiled and pure-Python rank kernels.

    python3 benchmarks/bench_rank.py [--repeat 3] [--weight 5]

Uses differential matrices of real complexes plus random sparse integer
matrices; both kernels must agree on every rank.
"""
import argparse
import random
import time

from dgcyclic import linalg
from dgcyclic.complexes import Builders
from dgcyclic.io import load
from dgcyclic.linalg import SparseMatrix, rank, rank_python


def engine_matrices(path, weight):
    A = load(path).to_presentation()
    b = Builders(A)
    out = []
    for name, cx in (("CH", b.hochschild(True)), ("CC", b.CC())):
        for d in range(0, 2 * weight + 2):
            M = cx.matrix(d, weight)
            if M.entries:
                out.append((f"{A.name} {name} d={d} w={weight}", M))
    return out


def random_matrices(seed=0):
    rng = random.Random(seed)
    out = []
    for n, dens in ((80, 0.08), (160, 0.04), (240, 0.03)):
        ent = {}
        for i in range(n):
            for j in range(n):
                if rng.random() < dens:
                    ent[(i, j)] = rng.randint(-9, 9)
        out.append((f"random {n}x{n} p={dens}", SparseMatrix(n, n, ent)))
    return out


def best(fn, M, repeat):
    ts = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        r = fn(M)
        ts.append(time.perf_counter() - t0)
    return r, min(ts)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--weight", type=int, default=5)
    ap.add_argument("--input", default="inputs/Q3.dg")
    args = ap.parse_args()
    if linalg.KERNEL != "cython":
        print("compiled kernel not built; only the Python kernel is available")
    mats = engine_matrices(args.input, args.weight) + random_matrices()
    mats = [m for m in mats if m[1].rows * m[1].cols >= 100]
    print(f"{'matrix':34} {'shape':>11} {'nnz':>6} {'rank':>5} {'python s':>9} {'compiled s':>10} {'speedup':>8}")
    tp_all = tc_all = 0.0
    for label, M in mats:
        rp, tp = best(rank_python, M, args.repeat)
        rc, tc = best(rank, M, args.repeat)
        if rp != rc:
            raise SystemExit(f"kernels disagree on {label}: {rp} vs {rc}")
        tp_all += tp
        tc_all += tc
        print(f"{label:34} {M.rows:>5}x{M.cols:<5} {len(M.entries):>6} {rc:>5} {tp:>9.4f} {tc:>10.4f} {tp / tc:>7.2f}x")
    print(f"{'total':34} {'':>11} {'':>6} {'':>5} {tp_all:>9.4f} {tc_all:>10.4f} {tp_all / tc_all:>7.2f}x")


if __name__ == "__main__":
    main()
