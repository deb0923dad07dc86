"""Time every kernel under the numba and numpy backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each kernel runs on the tables of a few larger lattices; the numba version is
called once beforehand so compilation is excluded. Outputs of the two
backends are compared as a side effect.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from latpoly import kernels
from latpoly.axioms import system_from_rank
from latpoly.builders import boolean_lattice, subspace_lattice
from latpoly.lattice import build_lattice
from latpoly.polymatroid import sample_random_polymatroid


def _csr(L):
    ptr = [0]
    idx = []
    for ups in L.upper_covers:
        idx.extend(ups)
        ptr.append(len(idx))
    return np.array(ptr, dtype=np.int64), np.array(idx, dtype=np.int64), np.array(L.by_height, dtype=np.int64)


def cases(L, seed=0):
    rf = sample_random_polymatroid(L, 2, seed=seed)
    r, t, _ = rf.scaled
    S = system_from_rank(rf)
    f_int = np.zeros(L.n, dtype=np.int64)
    f_int[L.atom_array] = r[L.atom_array]
    mu = S.mu_int
    qm = S.qm_ok
    members = np.asarray(S.members, dtype=np.int64)
    ptr, idx, order = _csr(L)
    return {
        "closure": (ptr, idx, order),
        "meet_join": (L.leq_table,),
        "modular_witness": (L.leq_table, L.meet_table, L.join_table),
        "rank_violation": (r, t, L.heights, L.leq_table, L.meet_table, L.join_table),
        "length2_violation": (r, t, L.heights, L.meet_table, L.join_table, L.is_cover),
        "mu_greedy_all": (f_int, L.atom_array, L.leq_table, L.join_table, L.bottom),
        "quasi_modular_witness": (mu, L.leq_table, L.meet_table, L.comp_pad),
        "rho_table": (S.lam_int, members, mu, qm, L.meet_table, L.join_table, L.comp_pad, L.bottom),
    }


def best_of(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.numba_impl is None:
        print("numba backend unavailable; only numpy timings are shown")
    lattices = {
        "Boolean(6)": boolean_lattice(6),
        "L(F_2^4)": subspace_lattice(2, 4),
        "L(F_3^3)": subspace_lattice(3, 3),
    }
    print(f"{'lattice':<11} {'kernel':<22} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}  agree")
    for lname, L in lattices.items():
        for kname, kargs in cases(L).items():
            tn, on = best_of(getattr(kernels.numpy_impl, kname), kargs, args.repeat)
            if kernels.numba_impl is None:
                print(f"{lname:<11} {kname:<22} {tn * 1e3:>10.3f}")
                continue
            fb = getattr(kernels.numba_impl, kname)
            fb(*kargs)  # compile
            tb, ob = best_of(fb, kargs, args.repeat)
            print(
                f"{lname:<11} {kname:<22} {tn * 1e3:>10.3f} {tb * 1e3:>10.3f} "
                f"{tn / tb if tb else float('inf'):>7.1f}x  {'yes' if same(on, ob) else 'NO'}"
            )


if __name__ == "__main__":
    main()
