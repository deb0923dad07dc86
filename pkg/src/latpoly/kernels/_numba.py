import numpy as np
from numba import njit

# Violation codes shared with the numpy backend: 0 = none, 1/2/3 = R1/R2/R3.


@njit(cache=True)
def closure(up_ptr, up_idx, order):
    """Reflexive-transitive closure of the cover digraph.

    ``up_ptr``/``up_idx`` is a CSR list of upper covers; ``order`` is a
    topological order (lower elements first). Returns ``leq[i, j] = i <= j``.
    """
    n = up_ptr.shape[0] - 1
    leq = np.zeros((n, n), dtype=np.bool_)
    for k in range(n - 1, -1, -1):
        i = order[k]
        leq[i, i] = True
        for p in range(up_ptr[i], up_ptr[i + 1]):
            j = up_idx[p]
            for x in range(n):
                if leq[j, x]:
                    leq[i, x] = True
    return leq


@njit(cache=True)
def _bound(leq, a, b, lower):
    n = leq.shape[0]
    cand = -1
    for x in range(n):
        if lower:
            ok = leq[x, a] and leq[x, b]
        else:
            ok = leq[a, x] and leq[b, x]
        if ok:
            if cand == -1:
                cand = x
            elif lower and leq[cand, x]:
                cand = x
            elif (not lower) and leq[x, cand]:
                cand = x
    if cand == -1:
        return -1
    for x in range(n):
        if lower:
            if leq[x, a] and leq[x, b] and not leq[x, cand]:
                return -1
        else:
            if leq[a, x] and leq[b, x] and not leq[cand, x]:
                return -1
    return cand


@njit(cache=True)
def meet_join(leq):
    """Meet and join tables; ``bad`` is (a, b, kind) for the first pair without a
    unique bound (kind 0 = meet, 1 = join) or (-1, -1, -1)."""
    n = leq.shape[0]
    meet = np.full((n, n), -1, dtype=np.int64)
    join = np.full((n, n), -1, dtype=np.int64)
    bad = np.full(3, -1, dtype=np.int64)
    for a in range(n):
        for b in range(a, n):
            m = _bound(leq, a, b, True)
            if m < 0:
                bad[0] = a
                bad[1] = b
                bad[2] = 0
                return meet, join, bad
            j = _bound(leq, a, b, False)
            if j < 0:
                bad[0] = a
                bad[1] = b
                bad[2] = 1
                return meet, join, bad
            meet[a, b] = m
            meet[b, a] = m
            join[a, b] = j
            join[b, a] = j
    return meet, join, bad


@njit(cache=True)
def modular_witness(leq, meet, join):
    n = leq.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    for a in range(n):
        for b in range(n):
            ab = meet[a, b]
            for c in range(n):
                if leq[c, a] and join[ab, c] != meet[a, join[b, c]]:
                    out[0] = a
                    out[1] = b
                    out[2] = c
                    return out
    return out


@njit(cache=True)
def rank_violation(r, t, height, leq, meet, join):
    """First violation of R1, then R2, then R3, in index order."""
    n = r.shape[0]
    out = np.zeros(3, dtype=np.int64)
    for a in range(n):
        if r[a] < 0 or r[a] > t * height[a]:
            out[0] = 1
            out[1] = a
            out[2] = a
            return out
    for a in range(n):
        for b in range(n):
            if leq[a, b] and r[a] > r[b]:
                out[0] = 2
                out[1] = a
                out[2] = b
                return out
    for a in range(n):
        for b in range(n):
            if r[a] + r[b] < r[join[a, b]] + r[meet[a, b]]:
                out[0] = 3
                out[1] = a
                out[2] = b
                return out
    return out


@njit(cache=True)
def length2_violation(r, t, height, meet, join, is_cover):
    """Rank axioms restricted to covers and length-2 diamonds."""
    n = r.shape[0]
    out = np.zeros(3, dtype=np.int64)
    for a in range(n):
        if r[a] < 0 or r[a] > t * height[a]:
            out[0] = 1
            out[1] = a
            out[2] = a
            return out
    for a in range(n):
        for b in range(n):
            if is_cover[a, b] and r[a] > r[b]:
                out[0] = 2
                out[1] = a
                out[2] = b
                return out
    for x in range(n):
        for y in range(n):
            if x == y:
                continue
            w = meet[x, y]
            z = join[x, y]
            if is_cover[w, x] and is_cover[w, y] and is_cover[x, z] and is_cover[y, z]:
                if r[x] + r[y] < r[z] + r[w]:
                    out[0] = 3
                    out[1] = x
                    out[2] = y
                    return out
    return out


@njit(cache=True)
def mu_greedy_all(f, atoms, leq, join, bottom):
    """Greedy atom-basis weight for every element.

    ``f`` is indexed by element id (only atom entries are read); ``atoms`` gives
    the tie-break order: among equal weights the earliest atom in it wins.
    """
    n = leq.shape[0]
    k = atoms.shape[0]
    mu = np.zeros(n, dtype=np.int64)
    for x in range(n):
        v = bottom
        s = 0
        while True:
            best = -1
            for i in range(k):
                a = atoms[i]
                if leq[a, x] and not leq[a, v]:
                    if best == -1 or f[a] < f[best]:
                        best = a
            if best == -1:
                break
            s += f[best]
            v = join[v, best]
        mu[x] = s
    return mu


@njit(cache=True)
def quasi_modular_witness(g, leq, meet, comp_pad):
    """For each W, the first Y <= W with no complement Yc satisfying
    g(W) = g(Y) + g(W ^ Yc); -1 when g is quasi-modular on [0, W]."""
    n = leq.shape[0]
    k = comp_pad.shape[1]
    out = np.full(n, -1, dtype=np.int64)
    for w in range(n):
        for y in range(n):
            if not leq[y, w]:
                continue
            found = False
            for j in range(k):
                c = comp_pad[y, j]
                if c < 0:
                    break
                if g[w] == g[y] + g[meet[w, c]]:
                    found = True
                    break
            if not found:
                out[w] = y
                break
    return out


@njit(cache=True)
def rho_table(lam, members, mu, qm_ok, meet, join, comp_pad, bottom):
    """Per (member Z, element X) statistics over decomposing complements Zc.

    Returns ``lo``/``hi`` (min/max of lam(Z) + mu(X ^ Zc)), ``cnt`` (number of
    Zc in C(Z; X)) and ``allqm`` (qm_ok[X ^ Zc] for every such Zc).
    """
    m = members.shape[0]
    n = meet.shape[0]
    k = comp_pad.shape[1]
    lo = np.zeros((m, n), dtype=np.int64)
    hi = np.zeros((m, n), dtype=np.int64)
    cnt = np.zeros((m, n), dtype=np.int64)
    allqm = np.ones((m, n), dtype=np.bool_)
    for zi in range(m):
        z = members[zi]
        for x in range(n):
            xb = meet[z, x]
            for j in range(k):
                c = comp_pad[z, j]
                if c < 0:
                    break
                xa = meet[c, x]
                if join[xa, xb] != x or meet[xa, xb] != bottom:
                    continue
                val = lam[zi] + mu[xa]
                if cnt[zi, x] == 0 or val < lo[zi, x]:
                    lo[zi, x] = val
                if cnt[zi, x] == 0 or val > hi[zi, x]:
                    hi[zi, x] = val
                cnt[zi, x] += 1
                if not qm_ok[xa]:
                    allqm[zi, x] = False
    return lo, hi, cnt, allqm
