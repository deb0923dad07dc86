import numpy as np

_BIG = np.iinfo(np.int64).max


def _first(mask):
    """Row/column of the first True entry of a 2-D mask in C order, or None."""
    flat = mask.ravel()
    if not flat.any():
        return None
    return np.unravel_index(int(np.argmax(flat)), mask.shape)


def closure(up_ptr, up_idx, order):
    n = up_ptr.shape[0] - 1
    leq = np.zeros((n, n), dtype=np.bool_)
    for i in order[::-1]:
        ups = up_idx[up_ptr[i]:up_ptr[i + 1]]
        if ups.size:
            leq[i] = leq[ups].any(axis=0)
        leq[i, i] = True
    return leq


def meet_join(leq):
    n = leq.shape[0]
    li = leq.astype(np.int64)
    meet = np.full((n, n), -1, dtype=np.int64)
    join = np.full((n, n), -1, dtype=np.int64)
    bad = np.full(3, -1, dtype=np.int64)
    for a in range(n):
        # lb[b, x]: x is a lower bound of a and b; ub[b, x]: x is an upper bound
        lb = leq[:, a][None, :] & leq.T
        ub = leq[a, :][None, :] & leq
        lb_ok = lb & ((lb.astype(np.int64) @ li) == lb.sum(axis=1)[:, None])
        ub_ok = ub & ((ub.astype(np.int64) @ li.T) == ub.sum(axis=1)[:, None])
        has_m = lb_ok.any(axis=1)
        has_j = ub_ok.any(axis=1)
        miss_m = np.flatnonzero(~has_m[a:])
        miss_j = np.flatnonzero(~has_j[a:])
        if miss_m.size or miss_j.size:
            cands = []
            if miss_m.size:
                cands.append((int(miss_m[0]) + a, 0))
            if miss_j.size:
                cands.append((int(miss_j[0]) + a, 1))
            b, kind = min(cands)
            bad[:] = (a, b, kind)
            return meet, join, bad
        meet[a] = np.argmax(lb_ok, axis=1)
        join[a] = np.argmax(ub_ok, axis=1)
    return meet, join, bad


def modular_witness(leq, meet, join):
    n = leq.shape[0]
    out = np.full(3, -1, dtype=np.int64)
    for a in range(n):
        cs = np.flatnonzero(leq[:, a])
        lhs = join[meet[a][:, None], cs[None, :]]
        rhs = meet[a][join[:, cs]]
        hit = _first(lhs != rhs)
        if hit is not None:
            b, ci = hit
            out[:] = (a, b, cs[ci])
            return out
    return out


def _r1(r, t, height):
    bad = np.flatnonzero((r < 0) | (r > t * height))
    if bad.size:
        a = int(bad[0])
        return np.array([1, a, a], dtype=np.int64)
    return None


def rank_violation(r, t, height, leq, meet, join):
    out = _r1(r, t, height)
    if out is not None:
        return out
    hit = _first(leq & (r[:, None] > r[None, :]))
    if hit is not None:
        return np.array([2, hit[0], hit[1]], dtype=np.int64)
    hit = _first(r[:, None] + r[None, :] < r[join] + r[meet])
    if hit is not None:
        return np.array([3, hit[0], hit[1]], dtype=np.int64)
    return np.zeros(3, dtype=np.int64)


def length2_violation(r, t, height, meet, join, is_cover):
    out = _r1(r, t, height)
    if out is not None:
        return out
    hit = _first(is_cover & (r[:, None] > r[None, :]))
    if hit is not None:
        return np.array([2, hit[0], hit[1]], dtype=np.int64)
    n = r.shape[0]
    rows = np.arange(n)[:, None]
    cols = np.arange(n)[None, :]
    diamond = (
        (rows != cols)
        & is_cover[meet, rows]
        & is_cover[meet, cols]
        & is_cover[rows, join]
        & is_cover[cols, join]
    )
    hit = _first(diamond & (r[:, None] + r[None, :] < r[join] + r[meet]))
    if hit is not None:
        return np.array([3, hit[0], hit[1]], dtype=np.int64)
    return np.zeros(3, dtype=np.int64)


def mu_greedy_all(f, atoms, leq, join, bottom):
    n = leq.shape[0]
    fa = f[atoms]
    mu = np.zeros(n, dtype=np.int64)
    for x in range(n):
        below = leq[atoms, x]
        v = bottom
        s = 0
        while True:
            cand = below & ~leq[atoms, v]
            if not cand.any():
                break
            i = int(np.argmin(np.where(cand, fa, _BIG)))
            s += int(fa[i])
            v = join[v, atoms[i]]
        mu[x] = s
    return mu


def quasi_modular_witness(g, leq, meet, comp_pad):
    n = leq.shape[0]
    out = np.full(n, -1, dtype=np.int64)
    for w in range(n):
        ys = np.flatnonzero(leq[:, w])
        comps = comp_pad[ys]
        valid = comps >= 0
        vals = g[ys][:, None] + g[meet[w, np.where(valid, comps, 0)]]
        ok = (valid & (vals == g[w])).any(axis=1)
        if not ok.all():
            out[w] = ys[int(np.argmin(ok))]
    return out


def rho_table(lam, members, mu, qm_ok, meet, join, comp_pad, bottom):
    m = members.shape[0]
    n = meet.shape[0]
    xs = np.arange(n)[None, :]
    lo = np.zeros((m, n), dtype=np.int64)
    hi = np.zeros((m, n), dtype=np.int64)
    cnt = np.zeros((m, n), dtype=np.int64)
    allqm = np.ones((m, n), dtype=np.bool_)
    for zi in range(m):
        z = members[zi]
        comps = comp_pad[z]
        comps = comps[comps >= 0]
        if comps.size == 0:
            continue
        xa = meet[comps, :]
        xb = meet[z, :][None, :]
        dec = (join[xa, xb] == xs) & (meet[xa, xb] == bottom)
        val = lam[zi] + mu[xa]
        c = dec.sum(axis=0)
        cnt[zi] = c
        lo[zi] = np.where(c > 0, np.where(dec, val, _BIG).min(axis=0), 0)
        hi[zi] = np.where(c > 0, np.where(dec, val, -_BIG).max(axis=0), 0)
        allqm[zi] = (~dec | qm_ok[xa]).all(axis=0)
    return lo, hi, cnt, allqm
