"""Dunkl-operator modules: frozen values, faithfulness, Hecke identities, centers."""

import random

import pytest

from oddhecke import pbw, weyl
from oddhecke.clifford import CliffordElement
from oddhecke.dunkl import (CliffordCarrier, ModuleVector, act, act_word,
                            anticommute_report, carrier_compatibility_report,
                            center_candidates, check_relations_on_module,
                            default_carrier, dunkl_eta_oH, dunkl_eta_sH,
                            dunkl_y, elementary_symmetric_squares,
                            hecke_report, is_central, jucys_murphy,
                            module_basis, odd_center_example, vacuum,
                            z_element)
from oddhecke.pbw import AlgebraElement, AlgebraSpec
from oddhecke.scalars import MINUS_ONE, ONE, Scalar, T, U, V
from oddhecke.skewpoly import SkewPoly
from oddhecke.spinweyl import omega, spin_transposition
from oddhecke.weyl import WeylType

FAMILIES = ("H", "sH", "oH")
TYPES = ("A", "B", "D")


def mkspec(family, typ, n, corrupt=False):
    return AlgebraSpec(family, WeylType(typ, n), corrupt=corrupt)


def cliff_vector(spec, cl, alpha=None):
    """Module vector x^alpha (x) cl for a CliffordElement cl."""
    alpha = alpha or (0,) * spec.n
    return ModuleVector(spec, {(alpha, mask): s
                               for mask, s in cl.terms.items()})


# -- frozen operator values -----------------------------------------------------


@pytest.mark.parametrize("typ", TYPES)
def test_y_kills_the_vacuum(typ):
    spec = mkspec("H", typ, 2)
    assert dunkl_y(spec, 1, vacuum(spec)).is_zero()
    assert dunkl_y(spec, 2, vacuum(spec)).is_zero()


def test_frozen_y_on_x1_type_a():
    spec = mkspec("H", "A", 2)
    got = dunkl_y(spec, 1, act(spec, pbw.x(spec, 1), vacuum(spec)))
    one = CliffordElement.one(2)
    c = lambda i: CliffordElement.c(2, i)
    e = lambda i: CliffordElement.e(2, i)
    want = (c(1) * e(1)).scale(T) \
        - ((one + c(2) * c(1)) * (one + e(2) * e(1))).scale(U)
    assert got == cliff_vector(spec, want)


def test_frozen_y_on_x1_type_b_rank1():
    spec = mkspec("H", "B", 1)
    got = dunkl_y(spec, 1, act(spec, pbw.x(spec, 1), vacuum(spec)))
    want = (CliffordElement.c(1, 1) * CliffordElement.e(1, 1)).scale(T) \
        - CliffordElement.one(1).scale(V)
    assert got == cliff_vector(spec, want)


def test_frozen_y_on_x1_squared_type_b_rank1_vanishes():
    spec = mkspec("H", "B", 1)
    v = act(spec, pbw.x(spec, 1) * pbw.x(spec, 1), vacuum(spec))
    assert dunkl_y(spec, 1, v).is_zero()


def test_frozen_eta_sh_on_x1_type_a():
    spec = mkspec("sH", "A", 2)
    got = dunkl_eta_sH(spec, 1, act(spec, pbw.x(spec, 1), vacuum(spec)))
    one = CliffordElement.one(2)
    cc = CliffordElement.c(2, 2) * CliffordElement.c(2, 1)
    want = CliffordElement.c(2, 1).scale(T) \
        + ((one + cc) * omega(spin_transposition(spec.wt, 2, 1))).scale(U)
    assert got == cliff_vector(spec, want)


def test_frozen_eta_sh_on_x1_type_b_rank1():
    spec = mkspec("sH", "B", 1)
    got = dunkl_eta_sH(spec, 1, act(spec, pbw.x(spec, 1), vacuum(spec)))
    assert got == ModuleVector(spec, {((0,), 0b1): T + V})


@pytest.mark.parametrize("typ", TYPES)
def test_eta_sh_kills_the_vacuum(typ):
    spec = mkspec("sH", typ, 2)
    assert dunkl_eta_sH(spec, 1, vacuum(spec)).is_zero()


def test_frozen_eta_oh_values():
    a2 = mkspec("oH", "A", 2)
    assert dunkl_eta_oH(a2, 1, SkewPoly.xi(2, 1)) \
        == SkewPoly.one(2).scale(T + U)
    assert dunkl_eta_oH(a2, 1, SkewPoly.one(2)).is_zero()
    assert dunkl_eta_oH(a2, 1, SkewPoly.xi(2, 1) * SkewPoly.xi(2, 2)) \
        == SkewPoly.xi(2, 2).scale(T)
    b1 = mkspec("oH", "B", 1)
    assert dunkl_eta_oH(b1, 1, SkewPoly.xi(1, 1)) \
        == SkewPoly.one(1).scale(T + V)


# -- the action of the full algebra ------------------------------------------------


def test_act_is_left_multiplication_on_the_polynomial_part():
    spec = mkspec("H", "A", 2)
    assert act(spec, pbw.x(spec, 1), vacuum(spec)) \
        == ModuleVector(spec, {((1, 0), 0): ONE})
    so = mkspec("oH", "A", 2)
    assert act(so, pbw.xi(so, 1), vacuum(so)) == SkewPoly.xi(2, 1)


def test_act_group_moves_the_polynomial_and_the_carrier():
    spec = mkspec("H", "A", 2)
    v = act(spec, pbw.x(spec, 1), vacuum(spec))
    assert act(spec, pbw.s(spec, 1), v) == ModuleVector(spec, {((0, 1), 0): ONE})
    b1 = mkspec("H", "B", 1)
    v = act(b1, pbw.x(b1, 1), vacuum(b1))
    flip = pbw.w_elem(b1, weyl.tau(b1.wt, 1))
    assert act(b1, flip, v) == ModuleVector(b1, {((1,), 0): MINUS_ONE})


def test_act_clifford_letter_signs():
    spec = mkspec("H", "A", 2)
    v = act(spec, pbw.x(spec, 1), vacuum(spec))
    got = act(spec, pbw.c(spec, 1), v)
    assert got == ModuleVector(spec, {((1, 0), 0b01): MINUS_ONE})
    got = act(spec, pbw.c(spec, 2), v)
    assert got == ModuleVector(spec, {((1, 0), 0b10): ONE})
    got = act(spec, pbw.e(spec, 1), v)
    assert got == ModuleVector(spec, {((1, 0), 0b0100): ONE})


@pytest.mark.parametrize("family,typ", [("H", "A"), ("H", "B"), ("H", "D"),
                                        ("sH", "A"), ("sH", "B"), ("sH", "D"),
                                        ("oH", "A"), ("oH", "B"), ("oH", "D")])
def test_module_axiom_on_random_words(family, typ):
    spec = mkspec(family, typ, 2)
    rng = random.Random(f"{family}{typ}")
    els = [el for _, el in pbw.atoms(spec)]
    basis = module_basis(spec, 2)
    for _ in range(10):
        a = rng.choice(els) * rng.choice(els)
        b = rng.choice(els)
        for v in rng.sample(basis, min(4, len(basis))):
            assert (act(spec, a * b, v)
                    - act(spec, a, act(spec, b, v))).is_zero()


def test_act_word_matches_act_on_expanded_group_tokens():
    spec = mkspec("sH", "B", 2)
    g = weyl.word_to_element(spec.wt, [1, 2, 1])
    v = act(spec, pbw.x(spec, 1), vacuum(spec))
    via_tokens = act_word(spec, [("sigma", g)], v)
    via_element = act(spec, pbw.sigma(spec, g), v)
    assert via_tokens == via_element


# -- relation faithfulness ----------------------------------------------------------


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("typ", TYPES)
def test_defining_relations_hold_as_operators_rank2(family, typ):
    spec = mkspec(family, typ, 2)
    report = check_relations_on_module(spec, 4)
    assert report and all(ok for _, ok in report), \
        [lab for lab, ok in report if not ok]


@pytest.mark.parametrize("family,typ", [("sH", "A"), ("oH", "B")])
def test_defining_relations_hold_as_operators_rank3(family, typ):
    spec = mkspec(family, typ, 3)
    report = check_relations_on_module(spec, 3)
    assert report and all(ok for _, ok in report), \
        [lab for lab, ok in report if not ok]


@pytest.mark.parametrize("family,typ", [("H", "A"), ("sH", "D"), ("oH", "B")])
def test_corrupt_dunkl_operators_break_faithfulness(family, typ):
    spec = mkspec(family, typ, 2)
    report = check_relations_on_module(spec, 3, corrupt_dunkl=True)
    bad = [lab for lab, ok in report if not ok]
    assert bad and any("bracket" in lab for lab in bad)


def test_corrupt_relation_table_breaks_faithfulness():
    spec = mkspec("H", "B", 2, corrupt=True)
    report = check_relations_on_module(spec, 3)
    assert [lab for lab, ok in report if not ok]


def test_faithfulness_accepts_generic_carrier_injection():
    spec = mkspec("H", "A", 2)

    class Shifted(CliffordCarrier):
        pass

    report = check_relations_on_module(spec, 2, carrier=Shifted(spec.wt, 2))
    assert all(ok for _, ok in report)


# -- carrier compatibility ----------------------------------------------------------


@pytest.mark.parametrize("typ", TYPES)
def test_spin_carrier_compatibility(typ):
    report = carrier_compatibility_report(WeylType(typ, 3))
    assert report and all(ok for _, ok in report)


# -- closed-form brackets pushed to the module --------------------------------------


@pytest.mark.parametrize("typ,power", [("A", 3), ("B", 4), ("D", 3)])
def test_closed_form_bracket_matches_operator_route(typ, power):
    spec = mkspec("H", typ, 2)
    closed = pbw.bracket_y_xpow(spec, 1, 1, power)
    xl = pbw.x(spec, 1)
    prod = AlgebraElement.one(spec)
    for _ in range(power):
        prod = prod * xl
    for v in module_basis(spec, 2)[:8]:
        lhs = act(spec, closed, v)
        rhs = dunkl_y(spec, 1, act(spec, prod, v)) \
            - act(spec, prod, dunkl_y(spec, 1, v))
        assert lhs == rhs


# -- anticommutativity of the odd operators ------------------------------------------


@pytest.mark.parametrize("typ", TYPES)
def test_odd_dunkl_operators_anticommute(typ):
    spec = mkspec("oH", typ, 3)
    report = anticommute_report(spec, 5)
    assert report and all(ok for _, ok in report)


def test_corrupt_odd_operators_do_not_anticommute():
    spec = mkspec("oH", "A", 3)
    report = anticommute_report(spec, 4, corrupt_dunkl=True)
    assert any(not ok for _, ok in report)


def test_anticommute_report_rejects_other_families():
    with pytest.raises(ValueError):
        anticommute_report(mkspec("H", "A", 2))


# -- affine Hecke subalgebra ---------------------------------------------------------


def test_frozen_hecke_generators():
    spec = mkspec("oH", "A", 2)
    z1 = z_element(spec, 1)
    assert z1 == (pbw.xi(spec, 1) * pbw.eta(spec, 1)).scale(MINUS_ONE)
    z2 = z_element(spec, 2)
    swap = pbw.w_elem(spec, weyl.transposition(spec.wt, 1, 2))
    assert z2 == (pbw.xi(spec, 2) * pbw.eta(spec, 2)).scale(MINUS_ONE) \
        + swap.scale(spec.u)
    assert jucys_murphy(2, 1).is_zero()
    assert jucys_murphy(2, 2) == swap


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hecke_identities(n):
    report = hecke_report(n)
    assert report and all(ok for _, ok in report), \
        [lab for lab, ok in report if not ok]


def test_corrupt_hecke_generators_fail():
    report = hecke_report(3, corrupt=True)
    assert any(not ok for _, ok in report)


def test_z_element_requires_odd_type_a():
    with pytest.raises(ValueError):
        z_element(mkspec("oH", "B", 2), 1)
    with pytest.raises(ValueError):
        z_element(mkspec("H", "A", 2), 1)


# -- centers ---------------------------------------------------------------------------


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("typ", TYPES)
def test_symmetric_squares_are_central_rank2(family, typ):
    spec = mkspec(family, typ, 2)
    for label, cand in center_candidates(spec):
        ok, witness = is_central(spec, cand)
        assert ok, (label, witness and witness[0])


def test_elementary_symmetric_squares_shape():
    spec = mkspec("H", "A", 2)
    e1 = elementary_symmetric_squares(spec, "x", 1)
    sq = pbw.x(spec, 1) * pbw.x(spec, 1) + pbw.x(spec, 2) * pbw.x(spec, 2)
    assert e1 == sq


def test_odd_center_example_is_central():
    spec = mkspec("oH", "A", 2)
    ok, witness = is_central(spec, odd_center_example(spec))
    assert ok, witness


def test_odd_center_example_needs_the_group_term():
    # without u*t*s1 the commutator with xi1 is exactly u*t*s1*(xi1 - xi2)
    spec = mkspec("oH", "A", 2)
    s1 = pbw.s(spec, 1)
    literal = odd_center_example(spec) - s1.scale(spec.u * spec.t)
    ok, witness = is_central(spec, literal)
    assert not ok and witness[0] == "xi1"
    residual = (s1 * (pbw.xi(spec, 1) - pbw.xi(spec, 2))).scale(spec.u * spec.t)
    assert witness[1] == -residual


def test_x1_is_not_central_with_bracket_witness():
    spec = mkspec("H", "A", 2)
    ok, witness = is_central(spec, pbw.x(spec, 1))
    assert not ok
    name, comm = witness
    assert name == "y1"
    assert comm == pbw.x(spec, 1) * pbw.y(spec, 1) \
        - pbw.y(spec, 1) * pbw.x(spec, 1)


def test_is_central_rejects_odd_elements():
    spec = mkspec("H", "A", 2)
    with pytest.raises(ValueError):
        is_central(spec, pbw.c(spec, 1))


def test_odd_center_example_acts_centrally_on_the_module():
    spec = mkspec("oH", "A", 2)
    cand = odd_center_example(spec)
    for _, g in pbw.atoms(spec):
        comm = cand * g - g * cand
        for f in module_basis(spec, 3):
            assert act(spec, comm, f).is_zero()


# -- module plumbing -----------------------------------------------------------------


def test_module_vector_is_immutable():
    spec = mkspec("H", "A", 2)
    v = vacuum(spec)
    with pytest.raises(AttributeError):
        v.terms = {}


def test_module_basis_counts():
    spec = mkspec("H", "A", 2)
    # polynomial degree <= 1: 3 exponents, carrier 2^(2n) = 16 masks
    assert len(module_basis(spec, 1)) == 48
    so = mkspec("oH", "A", 2)
    assert len(module_basis(so, 1)) == 3


def test_default_carrier_species():
    assert default_carrier(mkspec("H", "B", 2)).species == 2
    assert default_carrier(mkspec("sH", "B", 2)).species == 1
    assert default_carrier(mkspec("oH", "B", 2)) is None


def test_dunkl_rejects_wrong_family():
    with pytest.raises(ValueError):
        dunkl_y(mkspec("sH", "A", 2), 1, vacuum(mkspec("sH", "A", 2)))
    with pytest.raises(ValueError):
        dunkl_eta_sH(mkspec("H", "A", 2), 1, vacuum(mkspec("H", "A", 2)))
    with pytest.raises(ValueError):
        dunkl_eta_oH(mkspec("sH", "A", 2), 1, SkewPoly.one(2))
