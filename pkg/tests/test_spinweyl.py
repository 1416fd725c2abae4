import random

import pytest

from oddhecke.scalars import QExt, Scalar
from oddhecke import weyl
from oddhecke.weyl import WeylType
from oddhecke.clifford import CliffordElement, beta
from oddhecke.spinweyl import (SpinElement, canonical_lift, cocycle, embed,
                               omega, spin_mul, spin_transposition,
                               spin_barred, spin_bar_tau, table1_relations)

SMALL = [WeylType("A", 3), WeylType("B", 2), WeylType("B", 3),
         WeylType("D", 2), WeylType("D", 3)]


# --- the defining table ----------------------------------------------------------

@pytest.mark.parametrize("wt", SMALL, ids=repr)
def test_table1_relations(wt):
    for name, lhs, rhs in table1_relations(wt):
        assert lhs == rhs, name


def test_distant_generators_anticommute_frozen():
    # phi(s1, s3) * phi(s3, s1) = -1 in A, n = 4: t_1 t_3 = -t_3 t_1
    wt = WeylType("A", 4)
    s1, s3 = weyl.generator(wt, 1), weyl.generator(wt, 3)
    assert cocycle(s1, s3) * cocycle(s3, s1) == -1


# --- the cocycle ------------------------------------------------------------------

@pytest.mark.parametrize("wt", SMALL, ids=repr)
def test_cocycle_identity_random(wt):
    rng = random.Random(53)
    for _ in range(60):
        u, v, w = (weyl.random_element(wt, rng) for _ in range(3))
        assert (cocycle(u, v) * cocycle(u * v, w)
                == cocycle(v, w) * cocycle(u, v * w))


@pytest.mark.parametrize("wt", SMALL, ids=repr)
def test_cocycle_values_and_identity_normalization(wt):
    rng = random.Random(59)
    e = weyl.identity(wt)
    for _ in range(40):
        u, v = weyl.random_element(wt, rng), weyl.random_element(wt, rng)
        assert cocycle(u, v) in (1, -1)
        assert cocycle(e, u) == 1
        assert cocycle(u, e) == 1


def test_embed_group_parts():
    wt = WeylType("B", 3)
    rng = random.Random(61)
    for _ in range(25):
        w = weyl.random_element(wt, rng)
        img = embed(w)
        assert img
        assert all(key[1] == w for key in img.terms)


def test_embed_respects_products():
    wt = WeylType("D", 3)
    rng = random.Random(67)
    for _ in range(25):
        u, v = weyl.random_element(wt, rng), weyl.random_element(wt, rng)
        prod = embed(u) * embed(v)
        expect = embed(u * v)
        if cocycle(u, v) < 0:
            expect = -expect
        assert prod == expect


# --- spin reflections --------------------------------------------------------------

@pytest.mark.parametrize("wt", [WeylType("A", 4), WeylType("B", 3),
                                WeylType("B", 4), WeylType("D", 3),
                                WeylType("D", 4)], ids=repr)
def test_spin_reflection_structure(wt):
    n = wt.n
    one = SpinElement.one(wt)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            r = spin_transposition(wt, i, j)
            # single sigma_w term over the plain transposition
            (w, s), = r.terms.items()
            assert w == weyl.transposition(wt, i, j)
            assert s in (Scalar.one(), -Scalar.one())
            assert spin_mul(r, r) == one
            assert spin_transposition(wt, j, i) == -r
            if wt.family != "A":
                b = spin_barred(wt, i, j)
                (w, s), = b.terms.items()
                assert w == weyl.barred_transposition(wt, i, j)
                assert s in (Scalar.one(), -Scalar.one())
                assert spin_mul(b, b) == one
                assert spin_barred(wt, j, i) == b
    if wt.family == "B":
        for i in range(1, n + 1):
            bt = spin_bar_tau(wt, i)
            (w, s), = bt.terms.items()
            assert w == weyl.tau(wt, i)
            assert spin_mul(bt, bt) == one


def test_spin_reflection_special_cases():
    # [i, i+1] = t_i and ~[n] = t_n
    wt = WeylType("B", 3)
    for i in (1, 2):
        assert spin_transposition(wt, i, i + 1) == SpinElement.t(wt, i)
    assert spin_bar_tau(wt, 3) == SpinElement.t(wt, 3)
    dwt = WeylType("D", 3)
    assert spin_barred(dwt, 2, 3) == SpinElement.t(dwt, 3)


# --- algebra structure ---------------------------------------------------------------

@pytest.mark.parametrize("wt", SMALL, ids=repr)
def test_spin_associativity_random(wt):
    rng = random.Random(71)

    def rand_spin():
        return SpinElement(wt, {weyl.random_element(wt, rng):
                                Scalar.rational(rng.randint(-3, 3))
                                for _ in range(3)})

    for _ in range(40):
        x, y, z = rand_spin(), rand_spin(), rand_spin()
        assert spin_mul(spin_mul(x, y), z) == spin_mul(x, spin_mul(y, z))


def test_sigma_parity_is_length():
    wt = WeylType("B", 3)
    rng = random.Random(73)
    for _ in range(30):
        w = weyl.random_element(wt, rng)
        assert SpinElement.sigma(w).parity() == w.length() % 2


def test_canonical_lift_is_lex_least():
    wt = WeylType("A", 3)
    w0 = weyl.GroupElement(wt, (3, 2, 1))
    assert canonical_lift(w0) == (1, 2, 1)


# --- the Morris homomorphism ----------------------------------------------------------

@pytest.mark.parametrize("wt", SMALL, ids=repr)
def test_omega_homomorphism(wt):
    rng = random.Random(79)
    for i in wt.gen_indices():
        assert omega(SpinElement.t(wt, i)) == beta(wt, i)

    def rand_spin():
        return SpinElement(wt, {weyl.random_element(wt, rng):
                                Scalar.rational(rng.randint(-3, 3))
                                for _ in range(3)})

    for _ in range(30):
        x, y = rand_spin(), rand_spin()
        assert omega(spin_mul(x, y)) == omega(x) * omega(y)


def test_omega_parity():
    wt = WeylType("D", 3)
    rng = random.Random(83)
    for _ in range(20):
        w = weyl.random_element(wt, rng)
        img = omega(SpinElement.sigma(w))
        assert img.parity() == w.length() % 2
