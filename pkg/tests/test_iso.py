"""Tests for the generator-defined algebra maps and their verification."""

import itertools

import pytest

from oddhecke import iso, pbw, weyl
from oddhecke.clifford import CliffordElement, SmashElement
from oddhecke.iso import (
    AlgebraAdapter,
    GroupAdapter,
    GroupLengthParityAdapter,
    Morphism,
    SpinAdapter,
    TensorElement,
    check_homomorphism,
    check_round_trip,
    image_rank,
    morita_H_to_sH,
    morita_oH_to_sH,
    morita_sH_to_H,
    morita_sH_to_oH,
    phi_ddot,
    phi_dot,
    phi_kw,
    phi_plus,
    psi_ddot,
    psi_dot,
    psi_kw,
    psi_plus,
    report_ok,
    specialize,
    tensor_algebra,
    tensor_cliff,
    tensor_group,
)
from oddhecke.pbw import AlgebraElement, AlgebraSpec
from oddhecke.scalars import HALF, I, MINUS_ONE, ONE, R2, T, U, V, QExt, Scalar
from oddhecke.weyl import WeylType

FAMILIES = ("A", "B", "D")
TWO = ONE + ONE

SMASH_MAPS = (phi_dot, phi_kw, phi_ddot, phi_plus)
PAIRS = (
    (phi_dot, psi_dot),
    (phi_kw, psi_kw),
    (phi_ddot, psi_ddot),
    (phi_plus, psi_plus),
)


def spec_for(family, fam, n):
    return AlgebraSpec(family, WeylType(fam, n))


def failing(report):
    return [label for label, ok, _ in report]


# -- relation preservation -----------------------------------------------------


@pytest.mark.parametrize("mk", SMASH_MAPS, ids=lambda f: f.__name__)
@pytest.mark.parametrize("fam", FAMILIES)
@pytest.mark.parametrize("n", (2, 3))
def test_smash_map_preserves_source_relations(mk, fam, n):
    report = check_homomorphism(mk(WeylType(fam, n)))
    bad = [(label, res) for label, ok, res in report if not ok]
    assert not bad, bad[:3]
    assert len(report) > 0


@pytest.mark.parametrize("mk,family", (
    (morita_H_to_sH, "H"),
    (morita_sH_to_oH, "sH"),
), ids=("H_to_sH", "sH_to_oH"))
@pytest.mark.parametrize("fam", FAMILIES)
@pytest.mark.parametrize("n", (2, 3))
def test_morita_map_preserves_source_relations(mk, family, fam, n):
    report = check_homomorphism(mk(spec_for(family, fam, n)))
    bad = [(label, res) for label, ok, res in report if not ok]
    assert not bad, bad[:3]


@pytest.mark.parametrize("mk,family", (
    (morita_sH_to_H, "sH"),
    (morita_oH_to_sH, "oH"),
), ids=("sH_to_H", "oH_to_sH"))
@pytest.mark.parametrize("fam", FAMILIES)
def test_morita_inverse_preserves_source_relations(mk, family, fam):
    report = check_homomorphism(mk(spec_for(family, fam, 2)))
    bad = [(label, res) for label, ok, res in report if not ok]
    assert not bad, bad[:3]


# -- round trips -----------------------------------------------------------------


@pytest.mark.parametrize("fwd,inv", PAIRS,
                         ids=lambda f: getattr(f, "__name__", ""))
@pytest.mark.parametrize("fam", FAMILIES)
@pytest.mark.parametrize("n", (2, 3))
def test_smash_round_trips(fwd, inv, fam, n):
    wt = WeylType(fam, n)
    report = check_round_trip(fwd(wt), inv(wt))
    bad = [label for label, ok in report if not ok]
    assert not bad, bad


@pytest.mark.parametrize("fwd,inv,family", (
    (morita_H_to_sH, morita_sH_to_H, "H"),
    (morita_sH_to_oH, morita_oH_to_sH, "sH"),
), ids=("H_sH", "sH_oH"))
@pytest.mark.parametrize("fam", FAMILIES)
@pytest.mark.parametrize("n", (2, 3))
def test_morita_round_trips(fwd, inv, family, fam, n):
    spec = spec_for(family, fam, n)
    f = fwd(spec)
    g = inv(f.one.adapter.spec)
    report = check_round_trip(f, g)
    bad = [label for label, ok in report if not ok]
    assert not bad, bad


# -- composition of the two covers reproduces the doubled cover -------------------


@pytest.mark.parametrize("fam", FAMILIES)
def test_ddot_is_composition_of_dot_and_kw(fam):
    wt = WeylType(fam, 3)
    md = phi_ddot(wt)
    m1 = phi_kw(wt)
    m2 = phi_dot(wt)
    for tok in md.images:
        via = m2.apply(m1.word_image([tok]))
        assert via == md.images[tok], tok


# -- named reflection-image identities --------------------------------------------


@pytest.mark.parametrize("fam", FAMILIES)
def test_spin_image_identities_for_cover(fam):
    wt = WeylType(fam, 3)
    checks = iso.spin_image_identities(phi_kw(wt), wt)
    bad = [label for label, ok in checks if not ok]
    assert not bad, bad
    assert len(checks) >= 6


@pytest.mark.parametrize("fam", FAMILIES)
def test_spin_image_identities_through_morita(fam):
    spec = spec_for("H", fam, 3)
    checks = iso.spin_image_identities(morita_H_to_sH(spec), spec.wt, spec=spec)
    bad = [label for label, ok in checks if not ok]
    assert not bad, bad


@pytest.mark.parametrize("fam", FAMILIES)
def test_group_image_identities_for_cover(fam):
    wt = WeylType(fam, 3)
    checks = iso.group_image_identities(phi_dot(wt), wt)
    bad = [label for label, ok in checks if not ok]
    assert not bad, bad
    assert len(checks) >= 6


@pytest.mark.parametrize("fam", FAMILIES)
def test_group_image_identities_through_morita(fam):
    spec = spec_for("sH", fam, 3)
    checks = iso.group_image_identities(morita_sH_to_oH(spec), spec.wt,
                                        spec=spec)
    bad = [label for label, ok in checks if not ok]
    assert not bad, bad


# -- frozen generator images -------------------------------------------------------


def test_frozen_phi_dot_generator_image():
    # t_1 |-> beta_1 (x) s_1 with beta_1 = (c_1 - c_2)/r2 at rank 2
    wt = WeylType("A", 2)
    img = phi_dot(wt).images[("t", 1)]
    s1 = weyl.generator(wt, 1)
    want = {(0b01, s1): HALF * R2, (0b10, s1): MINUS_ONE * HALF * R2}
    assert img.terms == want


def test_frozen_phi_kw_generator_image():
    # s_1 |-> -i nu_1 (x) t_1 with nu_1 = (e_1 - e_2)/r2 at rank 2
    wt = WeylType("A", 2)
    img = phi_kw(wt).images[("s", 1)]
    s1 = weyl.generator(wt, 1)
    want = {(0b0100, s1): MINUS_ONE * I * HALF * R2,
            (0b1000, s1): I * HALF * R2}
    assert img.terms == want


def test_frozen_morita_y_image_via_factoring():
    # applying the map to the normal-form element y_1 (not just reading the
    # image dict) exercises the key-factorization path
    spec = spec_for("H", "A", 2)
    m = morita_H_to_sH(spec)
    ad = m.one.adapter
    tgt = ad.spec
    want = tensor_cliff(ad, CliffordElement.e(2, 1)) \
        * tensor_algebra(ad, pbw.eta(tgt, 1))
    assert m.apply(pbw.y(spec, 1)) == want


def test_morita_parameter_transforms():
    spec = spec_for("H", "B", 2)
    tgt1 = morita_H_to_sH(spec).one.adapter.spec
    assert tgt1.t == MINUS_ONE * T
    assert tgt1.u == MINUS_ONE * I * R2 * U
    assert tgt1.v == I * V
    tgt2 = morita_sH_to_oH(tgt1).one.adapter.spec
    assert tgt2.t == T
    assert tgt2.u == MINUS_ONE * TWO * I * U
    assert tgt2.v == MINUS_ONE * I * V


# -- super tensor product sign rule ------------------------------------------------


def test_koszul_sign_over_spin_adapter():
    wt = WeylType("A", 2)
    ad = SpinAdapter(wt)
    one_t1 = tensor_group(ad, weyl.generator(wt, 1))
    e1_one = tensor_cliff(ad, CliffordElement.e(2, 1))
    prod = one_t1 * e1_one
    assert prod == (e1_one * one_t1).scale(MINUS_ONE)
    assert prod.terms == {(0b0100, weyl.generator(wt, 1)): MINUS_ONE}


def test_no_koszul_sign_over_even_group_adapter():
    wt = WeylType("A", 2)
    ad = GroupAdapter(wt)
    one_s1 = tensor_group(ad, weyl.generator(wt, 1))
    c1_one = tensor_cliff(ad, CliffordElement.c(2, 1))
    assert one_s1 * c1_one == c1_one * one_s1


def test_length_graded_adapter_flips_the_sign():
    wt = WeylType("A", 2)
    ad = GroupLengthParityAdapter(wt)
    one_s1 = tensor_group(ad, weyl.generator(wt, 1))
    c1_one = tensor_cliff(ad, CliffordElement.c(2, 1))
    assert one_s1 * c1_one == (c1_one * one_s1).scale(MINUS_ONE)


def test_generator_images_are_parity_homogeneous():
    for fam in FAMILIES:
        wt = WeylType(fam, 3)
        for mk in SMASH_MAPS:
            for tok, img in mk(wt).images.items():
                assert img.parity() is not None, (mk.__name__, tok)


# -- distant braid value in the plus-signed product --------------------------------


def test_plus_cover_distant_braid_value():
    # (t_1 t_3)^2 = -1 in the spin cover; the plus-signed map must reproduce
    # the same value on the image side
    wt = WeylType("A", 4)
    m = phi_plus(wt)
    word = [("t", 1), ("t", 3), ("t", 1), ("t", 3)]
    assert m.word_image(word) == m.one.scale(MINUS_ONE)
    # and the source agrees (distant spin letters anticommute)
    from oddhecke.spinweyl import SpinElement
    t1 = SpinElement.t(wt, 1)
    t3 = SpinElement.t(wt, 3)
    sq = t1 * t3 * t1 * t3
    assert sq == SpinElement.one(wt).scale(MINUS_ONE)


# -- negative controls --------------------------------------------------------------


@pytest.mark.parametrize("mk", SMASH_MAPS, ids=lambda f: f.__name__)
@pytest.mark.parametrize("fam", FAMILIES)
@pytest.mark.parametrize("n", (2, 3))
def test_corrupt_smash_map_fails(mk, fam, n):
    report = check_homomorphism(mk(WeylType(fam, n), corrupt=True))
    assert not report_ok(report)
    assert any(label.startswith("square.") for label, ok, _ in report if not ok)


@pytest.mark.parametrize("mk,family", (
    (morita_H_to_sH, "H"),
    (morita_sH_to_oH, "sH"),
), ids=("H_to_sH", "sH_to_oH"))
@pytest.mark.parametrize("fam", FAMILIES)
def test_corrupt_morita_map_fails(mk, family, fam):
    report = check_homomorphism(mk(spec_for(family, fam, 2), corrupt=True))
    assert not report_ok(report)


# -- linear independence of images ---------------------------------------------------


def test_full_smash_basis_maps_to_full_rank():
    wt = WeylType("B", 2)
    m = phi_dot(wt)
    srcs = [SmashElement(wt, "minus", {(mask, g): ONE})
            for mask in range(4) for g in weyl.enumerate_group(wt)]
    assert image_rank(m, srcs) == (len(srcs), len(srcs))


def test_doubled_cover_full_basis_maps_to_full_rank():
    wt = WeylType("B", 2)
    m = phi_ddot(wt)
    srcs = [SmashElement(wt, "plain", {(mask, g): ONE})
            for mask in range(16) for g in weyl.enumerate_group(wt)]
    assert image_rank(m, srcs) == (128, 128)


def test_morita_images_of_basis_monomials_stay_independent():
    spec = spec_for("H", "A", 2)
    keys = []
    for a1, a2 in itertools.product(range(2), repeat=2):
        for cm in range(4):
            for g in weyl.enumerate_group(spec.wt):
                keys.append(((a1, a2), cm, g, 0, (0, 0)))
    srcs = [AlgebraElement(spec, {k: ONE}) for k in keys]
    m = morita_H_to_sH(spec)
    assert image_rank(m, srcs) == (len(srcs), len(srcs))


def test_specialize_evaluates_parameters():
    s = T * U + V.scale(QExt.rational(3))
    val = specialize(s, QExt.rational(2), QExt.rational(5), QExt.rational(7))
    assert val == QExt.rational(2 * 5 + 3 * 7)


# -- guard rails -----------------------------------------------------------------------


def test_morita_maps_reject_wrong_source_family():
    with pytest.raises(ValueError):
        morita_H_to_sH(spec_for("sH", "A", 2))
    with pytest.raises(ValueError):
        morita_sH_to_oH(spec_for("H", "A", 2))
    with pytest.raises(ValueError):
        morita_sH_to_H(spec_for("oH", "A", 2))
    with pytest.raises(ValueError):
        morita_oH_to_sH(spec_for("H", "A", 2))


def test_tensor_elements_refuse_mixed_adapters():
    wt = WeylType("A", 2)
    a = tensor_cliff(GroupAdapter(wt), CliffordElement.c(2, 1))
    b = tensor_cliff(SpinAdapter(wt), CliffordElement.c(2, 1))
    with pytest.raises(ValueError):
        a + b
