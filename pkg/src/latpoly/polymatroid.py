"""Rank functions on finite lattices and the cover-weight cryptomorphism.

A rank function satisfies

* (R1) ``0 <= r(A) <= t * h(A)``,
* (R2) ``A <= B`` implies ``r(A) <= r(B)``,
* (R3) ``r(A) + r(B) >= r(A v B) + r(A ^ B)``.

Values are :class:`fractions.Fraction`; the checks run on integer numerators
over a common denominator, so equalities are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .errors import (
    ChainInconsistent,
    LatticeError,
    MissingValue,
    NegativeWeight,
    NotModular,
    RankAxiomViolation,
    UnknownName,
)
from .lattice import FiniteLattice
from .rational import as_fraction, common_denominator, format_rational, scale
from .report import Report, failed, passed

fmt = format_rational


def _values_on(L: FiniteLattice, values, what: str) -> tuple[Fraction, ...]:
    if isinstance(values, Mapping):
        out: list[Fraction | None] = [None] * L.n
        for key, v in values.items():
            i = L.idx(key) if isinstance(key, str) else int(key)
            if not 0 <= i < L.n:
                raise UnknownName(f"no element with id {i}")
            out[i] = as_fraction(v)
        missing = [L.names[i] for i, v in enumerate(out) if v is None]
        if missing:
            raise MissingValue(f"{what} missing for {', '.join(missing)}")
        return tuple(out)  # type: ignore[arg-type]
    vals = tuple(as_fraction(v) for v in values)
    if len(vals) != L.n:
        raise MissingValue(f"{what} needs {L.n} values, got {len(vals)}")
    return vals


def minimal_bound(L: FiniteLattice, values: Sequence[Fraction]) -> Fraction:
    """Smallest t with r(A) <= t * h(A) for every A above the bottom."""
    t = Fraction(0)
    for i, v in enumerate(values):
        h = L.height(i)
        if h > 0 and v / h > t:
            t = v / h
    return t


@dataclass(frozen=True, eq=False)
class RankFunction:
    lattice: FiniteLattice
    values: tuple[Fraction, ...]
    t: Fraction
    declared_t: bool = False

    def __call__(self, x: int) -> Fraction:
        return self.values[x]

    def __getitem__(self, name: str) -> Fraction:
        return self.values[self.lattice.idx(name)]

    @cached_property
    def scaled(self) -> tuple[np.ndarray, int, int]:
        """(numerators, scaled t, denominator)."""
        d = common_denominator(self.values + (self.t,))
        return scale(self.values, d), int(self.t * d), d

    def same_values(self, other: "RankFunction") -> bool:
        return self.lattice is other.lattice and self.values == other.values

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.lattice.names, self.values))

    def scaled_by(self, c) -> "RankFunction":
        c = as_fraction(c)
        return rank_function(self.lattice, [v * c for v in self.values])


def rank_function(L: FiniteLattice, values, t=None) -> RankFunction:
    """Rank function from a sequence aligned with element ids or a mapping keyed by
    name or id. ``t`` defaults to the minimal valid bound."""
    vals = _values_on(L, values, "rank")
    if t is None:
        return RankFunction(L, vals, minimal_bound(L, vals))
    return RankFunction(L, vals, as_fraction(t), declared_t=True)


def height_rank(L: FiniteLattice) -> RankFunction:
    return rank_function(L, [int(h) for h in L.heights])


def zero_rank(L: FiniteLattice) -> RankFunction:
    return rank_function(L, [0] * L.n)


@dataclass(frozen=True, eq=False)
class CoverWeighting:
    lattice: FiniteLattice
    weights: dict[tuple[int, int], Fraction]

    def __call__(self, a: int, b: int) -> Fraction:
        return self.weights[a, b]


def cover_weighting(L: FiniteLattice, weights: Mapping) -> CoverWeighting:
    """Cover weighting from a mapping keyed by (lower, upper) ids or names."""
    out: dict[tuple[int, int], Fraction] = {}
    for (a, b), v in weights.items():
        ia = L.idx(a) if isinstance(a, str) else int(a)
        ib = L.idx(b) if isinstance(b, str) else int(b)
        if not L.is_cover[ia, ib]:
            raise UnknownName(f"({L.names[ia]}, {L.names[ib]}) is not a cover")
        w = as_fraction(v)
        if w < 0:
            raise NegativeWeight(f"cover ({L.names[ia]}, {L.names[ib]}) has weight {fmt(w)}")
        out[ia, ib] = w
    missing = [c for c in L.covers if c not in out]
    if missing:
        a, b = missing[0]
        raise MissingValue(f"no weight for cover ({L.names[a]}, {L.names[b]})")
    return CoverWeighting(L, {c: out[c] for c in L.covers})


# -- rank axioms ----------------------------------------------------------------


def _violation_report(rf: RankFunction, code: int, a: int, b: int) -> Report:
    L = rf.lattice
    r = rf.values
    nm = L.names
    if code == 1:
        return failed(
            "R1",
            f"r(A) = {fmt(r[a])} outside [0, t*h(A)] = [0, {fmt(rf.t * L.height(a))}]",
            A=nm[a],
        )
    if code == 2:
        return failed("R2", f"A <= B but r(A) = {fmt(r[a])} > r(B) = {fmt(r[b])}", A=nm[a], B=nm[b])
    j, m = L.join(a, b), L.meet(a, b)
    return failed(
        "R3",
        f"r(A)+r(B) = {fmt(r[a] + r[b])} < r(AvB)+r(A^B) = {fmt(r[j] + r[m])}",
        A=nm[a], B=nm[b],
    )


def check_rank_axioms(rf: RankFunction) -> Report:
    """Exhaustive (R1)-(R3); the first violation in index order is reported."""
    L = rf.lattice
    r, t, _ = rf.scaled
    code, a, b = (int(v) for v in kernels.rank_violation(
        r, t, L.heights, L.leq_table, L.meet_table, L.join_table
    ))
    if code == 0:
        return passed("R1-R3", f"t = {fmt(rf.t)}")
    return _violation_report(rf, code, a, b)


def check_rank_axioms_length2(rf: RankFunction) -> Report:
    """(R1)-(R3) on covers and length-2 intervals only.

    On a modular lattice this is equivalent to the full check.
    """
    L = rf.lattice
    if not L.modular_report:
        raise NotModular(str(L.modular_report))
    r, t, _ = rf.scaled
    code, a, b = (int(v) for v in kernels.length2_violation(
        r, t, L.heights, L.meet_table, L.join_table, L.is_cover
    ))
    if code == 0:
        return passed("R1-R3", f"length-2 intervals, t = {fmt(rf.t)}")
    return _violation_report(rf, code, a, b)


def is_integer_unit(rf: RankFunction) -> bool:
    """Integer valued with r(A) <= h(A) everywhere."""
    L = rf.lattice
    return all(v.denominator == 1 and v <= L.height(i) for i, v in enumerate(rf.values))


# -- cover weights ---------------------------------------------------------------


def weight_from_rank(rf: RankFunction) -> CoverWeighting:
    """w([A,B]) = r(B) - r(A) on every cover."""
    rep = check_rank_axioms(rf)
    if not rep:
        raise RankAxiomViolation(rep)
    r = rf.values
    return CoverWeighting(rf.lattice, {(a, b): r[b] - r[a] for a, b in rf.lattice.covers})


def _chain_to(parent: list[int], x: int) -> list[int]:
    out = [x]
    while parent[out[-1]] >= 0:
        out.append(parent[out[-1]])
    return out[::-1]


def rank_from_weight(cw: CoverWeighting) -> RankFunction:
    """Sum of cover weights along a maximal chain from the bottom.

    Raises :class:`ChainInconsistent` with two chains of different weight when
    the sum depends on the chain.
    """
    L = cw.lattice
    r: list[Fraction | None] = [None] * L.n
    parent = [-1] * L.n
    r[L.bottom] = Fraction(0)
    for v in L.by_height:
        if v == L.bottom:
            continue
        for u in L.lower_covers[v]:
            val = r[u] + cw.weights[u, v]
            if r[v] is None:
                r[v] = val
                parent[v] = u
            elif val != r[v]:
                c1 = _chain_to(parent, v)
                c2 = _chain_to(parent, u) + [v]
                names = (tuple(L.names[i] for i in c1), tuple(L.names[i] for i in c2))
                raise ChainInconsistent(
                    f"chains to {L.names[v]} sum to {fmt(r[v])} and {fmt(val)}", chains=names
                )
    return rank_function(L, r)


def check_interval_weight_axioms(cw: CoverWeighting) -> Report:
    """(IW1) chain sums depend only on the interval; (IW2) w([A, XvA]) <= w([A^X, X]).

    IW1 is checked through chains from the bottom: every chain in [A, B] extends
    by a common chain from the bottom to A, so consistency there is equivalent.
    """
    L = cw.lattice
    try:
        rw = rank_from_weight(cw)
    except ChainInconsistent as exc:
        c1, c2 = exc.chains
        return failed("IW1", str(exc), chain1=" < ".join(c1), chain2=" < ".join(c2))
    phi, _, _ = rw.scaled
    up = phi[L.join_table] - phi[:, None]  # w([A, X v A]), rows A, cols X
    down = phi[None, :] - phi[L.meet_table]  # w([A ^ X, X])
    bad = np.argwhere(up > down)
    if bad.size:
        a, x = (int(v) for v in bad[0])
        r = rw.values
        return failed(
            "IW2",
            f"w([A, XvA]) = {fmt(r[L.join(a, x)] - r[a])} > w([A^X, X]) = {fmt(r[x] - r[L.meet(a, x)])}",
            A=L.names[a], X=L.names[x],
        )
    return passed("IW1-IW2")


def check_cover_weight_axioms(cw: CoverWeighting) -> Report:
    """(CW1) and (CW2) on every length-2 interval; needs a modular lattice."""
    L = cw.lattice
    if not L.modular_report:
        raise NotModular(str(L.modular_report))
    w = cw.weights
    nm = L.names
    for a, b, inner in L.length2_intervals:
        for x, y in combinations(inner, 2):
            if w[a, x] + w[x, b] != w[a, y] + w[y, b]:
                return failed(
                    "CW1",
                    f"w([A,X])+w([X,B]) = {fmt(w[a, x] + w[x, b])} != "
                    f"w([A,Y])+w([Y,B]) = {fmt(w[a, y] + w[y, b])}",
                    A=nm[a], B=nm[b], X=nm[x], Y=nm[y],
                )
    for a, b, inner in L.length2_intervals:
        for x in inner:
            for y in inner:
                if x != y and w[a, x] < w[y, b]:
                    return failed(
                        "CW2",
                        f"w([A,X]) = {fmt(w[a, x])} < w([Y,B]) = {fmt(w[y, b])}",
                        A=nm[a], B=nm[b], X=nm[x], Y=nm[y],
                    )
    return passed("CW1-CW2")


# -- sampling --------------------------------------------------------------------


class SamplerExhausted(LatticeError):
    pass


def _diamonds_below(L: FiniteLattice) -> list[list[tuple[int, tuple[int, ...]]]]:
    out: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(L.n)]
    for a, b, inner in L.length2_intervals:
        if len(inner) >= 2:
            out[b].append((a, inner))
    return out


def sample_random_polymatroid(
    L: FiniteLattice, max_atom_rank: int, seed=None, max_tries: int = 10_000
) -> RankFunction:
    """Random integer-valued rank function, assigned bottom-up by height.

    Each r(X) is drawn uniformly between the largest rank of an element it covers
    and the smallest r(Y1) + r(Y2) - r(W) over diamonds [W, X], capped by
    ``max_atom_rank * h(X)``. Validity follows from the length-2 criterion on
    modular lattices. When an earlier choice leaves an empty range the whole
    draw is restarted, so the result depends only on ``seed``.
    """
    if not L.modular_report:
        raise NotModular(str(L.modular_report))
    if max_atom_rank < 0:
        raise ValueError("max_atom_rank must be non-negative")
    rng = np.random.default_rng(seed)
    diamonds = _diamonds_below(L)
    order = L.by_height
    for _ in range(max_tries):
        r = [0] * L.n
        ok = True
        for x in order:
            if x == L.bottom:
                continue
            lo = max(r[y] for y in L.lower_covers[x])
            hi = max_atom_rank * L.height(x)
            for w, inner in diamonds[x]:
                for y1, y2 in combinations(inner, 2):
                    hi = min(hi, r[y1] + r[y2] - r[w])
            if lo > hi:
                ok = False
                break
            r[x] = int(rng.integers(lo, hi + 1))
        if ok:
            return rank_function(L, r)
    raise SamplerExhausted(f"no valid draw in {max_tries} attempts")
