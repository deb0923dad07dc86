from fractions import Fraction

import numpy as np
import pytest

from families import boolean_represented, subspace_represented
from helpers import RANK_TWO_ATOMS, f23_example, sample_lattices
from latpoly import errors
from latpoly.builders import boolean_lattice, subspace_lattice
from latpoly.cyclic import (
    CyclicFlatLattice,
    atom_ranks,
    atom_weighting,
    cl,
    cl_atoms,
    cyc,
    cyclic_flat_lattice,
    cyclic_flats,
    cyclic_mask,
    flat_mask,
    is_cyclic,
    is_flat,
    is_quasi_modular,
    mu_bruteforce,
    mu_greedy,
    mu_table,
    quasi_modular_mask,
    reconstruct_rank,
)
from latpoly.lattice import all_maximal_chains, atoms, complements, decomposing_complements, layering
from latpoly.polymatroid import height_rank, rank_function, sample_random_polymatroid, zero_rank
from latpoly.rational import scale


# -- literal oracles --------------------------------------------------------------------


def flat_oracle(L, r, x):
    return all(r[L.join(x, y)] > r[x] for y in range(L.n) if not L.le(y, x))


def cyclic_oracle(L, r, x):
    for h in range(L.n):
        if L.is_cover[h, x]:
            d = r[x] - r[h]
            if d == 0:
                continue
            if not any(r[a] > d for a in atoms(L, x) if not L.le(a, h)):
                return False
    return True


def qm_oracle(L, g, x):
    for y in range(L.n):
        if L.le(y, x):
            comps = [c for c in range(L.n) if L.meet(y, c) == L.bottom and L.join(y, c) == L.top]
            if not any(g[x] == g[y] + g[L.meet(x, c)] for c in comps):
                return False
    return True


def ranks(name, count, m=2):
    L = sample_lattices()[name]
    out = [sample_random_polymatroid(L, m, seed=s) for s in range(count)]
    if name.startswith("B"):
        out += [boolean_represented(L, m, seed=s) for s in range(count // 2)]
    elif name.startswith("F2"):
        out += [subspace_represented(L, m, seed=s) for s in range(count // 2)]
    return L, out


FAMILY = ["B3", "B4", "F22", "F23", "F32", "M3xB1"]


# -- F_2^3 example ---------------------------------------------------------------------------


def test_f23_example_flats():
    L, rf = f23_example()
    for a in L.atoms_all:
        assert is_flat(rf, a) == (L.names[a] not in RANK_TWO_ATOMS)
    for x in range(L.n):
        if L.height(x) == 2:
            assert not is_flat(rf, x)
    assert is_flat(rf, L.top)


def test_f23_example_cycles():
    L, rf = f23_example()
    assert is_cyclic(rf, L.bottom) and is_cyclic(rf, L.top)
    for a in L.atoms_all:
        if L.names[a] not in RANK_TWO_ATOMS:
            assert not is_cyclic(rf, a)
    plane = L.idx("<e1,e2>")
    assert cyc(rf, plane) == plane
    assert cyc(rf, L.idx("<e3>")) == L.bottom
    assert cyc(rf, L.bottom) == L.bottom


def test_f23_example_closure():
    L, rf = f23_example()
    assert cl(rf, L.idx("<e1>")) == L.top
    for a in L.atoms_all:
        if L.names[a] not in RANK_TWO_ATOMS:
            assert cl(rf, a) == a
    assert cl(rf, L.top) == L.top


def test_f23_example_cyclic_flats():
    L, rf = f23_example()
    zl = cyclic_flat_lattice(rf)
    assert zl.members == tuple(sorted({L.bottom, L.top}))
    assert [rf.values[z] for z in zl.members] == [0, 2]
    brute = [x for x in range(L.n) if flat_oracle(L, rf.values, x) and cyclic_oracle(L, rf.values, x)]
    assert list(zl.members) == brute


def test_f23_example_mu():
    L, rf = f23_example()
    f = atom_ranks(rf)
    assert mu_greedy(L, f, L.idx("<e1,e2>")) == 4
    assert mu_greedy(L, f, L.top) == 3
    assert mu_bruteforce(L, f, L.idx("<e1,e2>")) == 4
    assert mu_bruteforce(L, f, L.top) == 3
    assert mu_table(L, f) == tuple(mu_bruteforce(L, f, x) for x in range(L.n))


def test_f23_example_mu_not_quasi_modular_on_the_whole_lattice():
    L, rf = f23_example()
    mu = mu_table(L, atom_ranks(rf))
    rep = is_quasi_modular(L, mu, L.top)
    assert not rep
    assert not qm_oracle(L, mu, L.top)
    # every verdict matches the literal search
    for x in range(L.n):
        assert bool(is_quasi_modular(L, mu, x)) == qm_oracle(L, mu, x)


def test_f23_example_reconstruction_examples():
    L, rf = f23_example()
    zl = cyclic_flat_lattice(rf)
    lam = {z: rf.values[z] for z in zl.members}
    f = atom_ranks(rf)
    assert reconstruct_rank(zl, lam, f, L.idx("<e1,e2>")) == 2
    assert reconstruct_rank(zl, lam, f, L.idx("<e3>")) == 1
    for x in range(L.n):
        assert reconstruct_rank(zl, lam, f, x) == rf.values[x]


# -- degenerate ranks -------------------------------------------------------------------


def test_height_rank_has_only_bottom():
    L = subspace_lattice(2, 3)
    assert cyclic_flats(height_rank(L)) == (L.bottom,)


def test_zero_rank_has_only_top():
    L = subspace_lattice(2, 3)
    assert cyclic_flats(zero_rank(L)) == (L.top,)
    assert all(is_cyclic(zero_rank(L), x) for x in range(L.n))


def test_cyclic_flat_lattice_rejects_invalid_rank():
    L = boolean_lattice(2)
    with pytest.raises(errors.RankAxiomViolation):
        cyclic_flat_lattice(rank_function(L, [0, 1, 1, 3]))


def test_member_set_must_be_a_lattice():
    L = boolean_lattice(2)
    with pytest.raises(errors.NotASublattice):
        CyclicFlatLattice(L, [L.idx("{1}"), L.idx("{2}")])
    with pytest.raises(errors.EmptyZ):
        CyclicFlatLattice(L, [])
    # induced order may differ from L's operations
    zl = CyclicFlatLattice(L, [L.bottom, L.idx("{1}"), L.idx("{2}"), L.top])
    assert zl.join(L.idx("{1}"), L.idx("{2}")) == L.top


# -- predicates versus oracles -----------------------------------------------------------


@pytest.mark.parametrize("name", FAMILY)
def test_predicates_match_literal_definitions(name):
    L, rfs = ranks(name, 30)
    for rf in rfs:
        r = rf.values
        fm, cm = flat_mask(rf), cyclic_mask(rf)
        for x in range(L.n):
            fo = flat_oracle(L, r, x)
            assert is_flat(rf, x) == is_flat(rf, x, atoms_only=False) == bool(fm[x]) == fo
            assert is_cyclic(rf, x) == bool(cm[x]) == cyclic_oracle(L, r, x)


@pytest.mark.parametrize("name", FAMILY)
def test_closure_properties(name):
    L, rfs = ranks(name, 30)
    for rf in rfs:
        r = rf.values
        for x in range(L.n):
            c = cl(rf, x)
            assert c == cl_atoms(rf, x)
            assert L.le(x, c) and r[c] == r[x]
            assert cl(rf, c) == c and is_flat(rf, c)


@pytest.mark.parametrize("name", FAMILY)
def test_cyclic_operator_properties(name):
    L, rfs = ranks(name, 30)
    for rf in rfs:
        cycles = [y for y in range(L.n) if is_cyclic(rf, y)]
        for x in range(L.n):
            c = cyc(rf, x)
            assert L.le(c, x) and is_cyclic(rf, c)
            assert all(L.le(y, c) for y in cycles if L.le(y, x))


@pytest.mark.parametrize("name", FAMILY)
def test_join_of_cycles_is_cyclic(name):
    L, rfs = ranks(name, 30)
    for rf in rfs:
        cycles = [y for y in range(L.n) if is_cyclic(rf, y)]
        for a in cycles:
            for b in cycles:
                assert is_cyclic(rf, L.join(a, b))


@pytest.mark.parametrize("name", FAMILY)
def test_cyc_of_flat_is_flat_and_cl_of_cycle_is_cyclic(name):
    L, rfs = ranks(name, 30)
    for rf in rfs:
        for x in range(L.n):
            if is_flat(rf, x):
                assert is_flat(rf, cyc(rf, x))
            if is_cyclic(rf, x):
                assert is_cyclic(rf, cl(rf, x))


@pytest.mark.parametrize("name", FAMILY)
def test_cyclic_flat_operations(name):
    L, rfs = ranks(name, 20)
    for rf in rfs:
        zl = cyclic_flat_lattice(rf)
        assert zl.bottom == cyc(rf, cl(rf, L.bottom))
        for z1 in zl.members:
            for z2 in zl.members:
                assert zl.meet(z1, z2) == cyc(rf, L.meet(z1, z2))
                assert zl.join(z1, z2) == cl(rf, L.join(z1, z2))


# -- mu_f ---------------------------------------------------------------------------


def test_mu_trivial_cases():
    L = subspace_lattice(2, 3)
    zero = atom_weighting(L, [0] * len(L.atoms_all))
    assert set(mu_table(L, zero)) == {0}
    f = atom_weighting(L, range(1, 8))
    for a in L.atoms_all:
        assert mu_greedy(L, f, a) == f[a]
    assert mu_greedy(L, f, L.bottom) == 0 == mu_bruteforce(L, f, L.bottom)


def test_atom_weighting_errors():
    L = boolean_lattice(2)
    with pytest.raises(errors.NegativeWeight):
        atom_weighting(L, [1, -1])
    with pytest.raises(errors.MissingValue):
        atom_weighting(L, {"{1}": 1})
    with pytest.raises(errors.LatticeError):
        atom_weighting(L, {"{1}": 1, "{2}": 1, "{1,2}": 1})


@pytest.mark.parametrize("name", ["B4", "F23", "F32", "M3xB1"])
def test_greedy_matches_bruteforce_with_random_ties(name):
    L = sample_lattices()[name]
    rng = np.random.default_rng(3)
    for _ in range(20):
        vals = [Fraction(int(rng.integers(0, 4)), int(rng.integers(1, 3))) for _ in L.atoms_all]
        f = atom_weighting(L, vals)
        table = mu_table(L, f)
        for x in range(L.n):
            bf = mu_bruteforce(L, f, x)
            assert table[x] == bf
            order = rng.permutation(L.atoms_all).tolist()
            assert mu_greedy(L, f, x, order=order) == bf


@pytest.mark.parametrize("name", ["B3", "B4"])
def test_boolean_mu_is_additive_and_modular(name):
    L = sample_lattices()[name]
    rng = np.random.default_rng(5)
    for _ in range(10):
        f = atom_weighting(L, rng.integers(0, 5, size=len(L.atoms_all)).tolist())
        mu = mu_table(L, f)
        for x in range(L.n):
            assert mu[x] == sum((f[a] for a in atoms(L, x)), Fraction(0))
            assert is_quasi_modular(L, mu, x)
        for a in range(L.n):
            for b in range(L.n):
                assert mu[a] + mu[b] == mu[L.join(a, b)] + mu[L.meet(a, b)]


@pytest.mark.parametrize("name", ["F23", "F32", "M3xB1"])
def test_mu_subadditive_on_direct_joins(name):
    L = sample_lattices()[name]
    rng = np.random.default_rng(9)
    for _ in range(10):
        f = atom_weighting(L, rng.integers(0, 5, size=len(L.atoms_all)).tolist())
        mu = mu_table(L, f)
        for a in range(L.n):
            for b in range(L.n):
                if L.meet(a, b) == L.bottom:
                    assert mu[L.join(a, b)] <= mu[a] + mu[b]


@pytest.mark.parametrize("name", FAMILY)
def test_rank_bounded_by_mu(name):
    L, rfs = ranks(name, 30)
    for rf in rfs:
        mu = mu_table(L, atom_ranks(rf))
        assert all(r <= m for r, m in zip(rf.values, mu))


def test_q_matroid_mu_identity():
    L = subspace_lattice(2, 3)
    for seed in range(100):
        rf = sample_random_polymatroid(L, 1, seed=seed)
        mu = mu_table(L, atom_ranks(rf))
        c0 = cl(rf, L.bottom)
        for x in range(L.n):
            assert mu[x] == L.height(x) - L.height(L.meet(c0, x))


# -- quasi-modularity ---------------------------------------------------------------


def test_quasi_modular_needs_zero_at_bottom():
    L = boolean_lattice(2)
    with pytest.raises(errors.LatticeError):
        is_quasi_modular(L, [1, 1, 1, 1], L.top)
    assert is_quasi_modular(L, [0, 5, 5, 5], L.bottom)


@pytest.mark.parametrize("name", ["F22", "F23", "F32", "M3xB1"])
def test_quasi_modular_checker_matches_literal_search(name):
    L = sample_lattices()[name]
    rng = np.random.default_rng(13)
    hits = 0
    for _ in range(15):
        f = atom_weighting(L, rng.integers(0, 3, size=len(L.atoms_all)).tolist())
        mu = mu_table(L, f)
        mask = quasi_modular_mask(L, scale(mu, 1))
        for x in range(L.n):
            ok = qm_oracle(L, mu, x)
            hits += ok
            assert bool(is_quasi_modular(L, mu, x)) == bool(mask[x]) == ok
    assert hits


@pytest.mark.parametrize("name", ["F23", "F32", "M3xB1"])
def test_quasi_modular_consequences(name):
    """Heredity to lower intervals, monotonicity, and a chain whose layers carry
    constant, non-increasing weights."""
    L = sample_lattices()[name]
    rng = np.random.default_rng(17)
    checked = 0
    for _ in range(15):
        f = atom_weighting(L, rng.integers(0, 3, size=len(L.atoms_all)).tolist())
        mu = mu_table(L, f)
        for x in range(L.n):
            if not is_quasi_modular(L, mu, x):
                continue
            checked += 1
            for a in range(L.n):
                if L.le(a, x):
                    assert is_quasi_modular(L, mu, a)
                    assert mu[a] <= mu[x]
            good = False
            for ch in all_maximal_chains(L, L.bottom, x):
                lays = layering(L, ch).layers
                ws = [{f[a] for a in layer} for layer in lays]
                if all(len(w) == 1 for w in ws) and all(
                    min(ws[k]) >= min(ws[k + 1]) for k in range(len(ws) - 1)
                ):
                    good = True
                    break
            assert good, L.names[x]
    assert checked


@pytest.mark.parametrize("name", FAMILY)
def test_mu_quasi_modular_below_complements_of_the_cyclic_part(name):
    L, rfs = ranks(name, 20)
    for rf in rfs:
        mu = mu_table(L, atom_ranks(rf))
        mask = quasi_modular_mask(L, scale(mu, 1))
        for x in range(L.n):
            c = cyc(rf, x)
            for cc in complements(L, c):
                assert mask[L.meet(x, cc)]


# -- reconstruction -----------------------------------------------------------------------


@pytest.mark.parametrize("name", FAMILY)
def test_rank_splits_over_the_cyclic_part(name):
    L, rfs = ranks(name, 20)
    for rf in rfs:
        r = rf.values
        mu = mu_table(L, atom_ranks(rf))
        for x in range(L.n):
            c = cyc(rf, x)
            for a in range(L.n):
                if L.le(c, a) and L.le(a, x):
                    for cc in complements(L, c):
                        assert r[a] == r[c] + mu[L.meet(cc, a)]


@pytest.mark.parametrize("name", FAMILY)
def test_reconstruction_from_cyclic_flats(name):
    L, rfs = ranks(name, 20)
    for rf in rfs:
        r = rf.values
        zl = cyclic_flat_lattice(rf)
        lam = {z: r[z] for z in zl.members}
        f = atom_ranks(rf)
        mu = mu_table(L, f)
        for x in range(L.n):
            assert reconstruct_rank(zl, lam, f, x) == r[x]
            z = cyc(rf, cl(rf, x))
            for zc in decomposing_complements(L, z, x):
                assert r[x] == r[z] + mu[L.meet(x, zc)]


def test_reconstruction_of_a_member_is_its_lambda():
    L, rf = f23_example()
    zl = cyclic_flat_lattice(rf)
    lam = {z: rf.values[z] for z in zl.members}
    for z in zl.members:
        assert reconstruct_rank(zl, lam, atom_ranks(rf), z) == lam[z]
