from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from overcommute.certificates import (STEINBERG, AxiomFactor, CertificateError,
                                      CommutatorFactor, CommutatorProduct, Presentation,
                                      RelatorFactor, RelatorProduct, abelianization,
                                      affine_unit_argument, compose_products, fold_pairs,
                                      lift_adjust, psi_transport, surface_datum, t2_bound,
                                      translation_axiom, verify_commutator_product,
                                      verify_relator_product)
from overcommute.derivations import psi_defect_cert, psi_rel_cert
from overcommute.exactfield import const, var
from overcommute.steinberg import R1, R2, expand_relator, rel
from overcommute.torus import torus_knot, torus_presentation
from overcommute.words import EMPTY, Stein, Word, named, w_comm, w_conj, w_inv, xa

V = ("s", "t")
s, t = var("s", V), var("t", V)
a, b = named("a"), named("b")


def translation_product(s, t, alpha=1) -> RelatorProduct:
    return RelatorProduct(w_comm(xa(alpha, s), xa(alpha, t)),
                          (RelatorFactor(EMPTY, rel(R1, alpha, t, s), -1),
                           RelatorFactor(EMPTY, rel(R1, alpha, s, t), 1)))


# -- verification -------------------------------------------------------------------

def test_translation_relator_product():
    res = verify_relator_product(translation_product(s, t))
    assert res.ok and res.cost == 2


def test_empty_products_verify():
    assert verify_relator_product(RelatorProduct(EMPTY, ())).ok
    res = verify_commutator_product(CommutatorProduct(EMPTY, ()))
    assert res.ok and res.cost == 0


def test_torus_products():
    tk = torus_knot(2, 3)
    assert verify_relator_product(tk.relator_product).ok
    assert tk.relator_product.cost == 2
    res = verify_commutator_product(tk.commutator_product)
    assert res.ok and res.cost == 1


def test_sign_flip_is_caught():
    cp = torus_knot(2, 3).commutator_product
    f = cp.factors[0]
    bad = CommutatorProduct(cp.target, (CommutatorFactor(f.f, f.r_witness, -f.sign),),
                            cp.presentation)
    res = verify_commutator_product(bad)
    assert not res.ok and not res.residual.is_identity()


def test_unknown_relator_is_an_error():
    p = RelatorProduct(a, (RelatorFactor(EMPTY, "nope", 1),), torus_presentation(2, 3))
    with pytest.raises(CertificateError):
        verify_relator_product(p)
    with pytest.raises(CertificateError):
        verify_relator_product(RelatorProduct(a, (RelatorFactor(EMPTY, rel(R1, 1, s, t), 1),),
                                              torus_presentation(2, 3)))


def test_axioms_can_be_refused():
    cp = CommutatorProduct.of([translation_axiom(s, t)])
    assert verify_commutator_product(cp).ok
    assert verify_commutator_product(cp).axiom_cost == 2
    assert not verify_commutator_product(cp, allow_axioms=False).ok


def test_axiom_shape_is_checked():
    bogus = AxiomFactor(EMPTY, w_comm(xa(1, s), xa(-1, t)))
    assert not verify_commutator_product(CommutatorProduct.of([bogus])).ok


# -- fold_pairs -----------------------------------------------------------------------

def test_fold_base_case():
    pres = torus_presentation(2, 3)
    f, g = a * b, b ** 2
    p = RelatorProduct.of([RelatorFactor(f, "r", 1), RelatorFactor(g, "r", -1)], pres)
    c = fold_pairs(p)
    assert c.cost == 1 and verify_commutator_product(c).ok


def test_fold_translation_pair_is_unbalanced():
    with pytest.raises(CertificateError):
        fold_pairs(translation_product(s, t))


def test_fold_rejects_odd_and_nonabelian_inputs():
    pres = torus_presentation(2, 3)
    with pytest.raises(CertificateError):
        fold_pairs(RelatorProduct.of([RelatorFactor(a, "r", 1)], pres))


# -- lift_adjust, compose --------------------------------------------------------------

def test_lift_adjust_trivial():
    cp = torus_knot(2, 3).commutator_product
    out = lift_adjust(cp, RelatorProduct(EMPTY, ()), RelatorProduct(EMPTY, ()))
    assert out.cost == cp.cost and out.factors == cp.factors


def test_lift_adjust_adds_two():
    tk = torus_knot(2, 3)
    cp, pres = tk.commutator_product, tk.commutator_product.presentation
    r = RelatorProduct.of([RelatorFactor(b, "r", 1)], pres)
    s_ = RelatorProduct.of([RelatorFactor(a, "r", -1)], pres)
    out = lift_adjust(cp, r, s_)
    assert out.cost == cp.cost + 2 and verify_commutator_product(out).ok
    out1 = lift_adjust(cp, r, RelatorProduct(EMPTY, (), pres))
    assert verify_commutator_product(out1).ok and out1.target == w_comm(tk.meridian * r.target,
                                                                         tk.longitude)


def test_compose_identical_lifts_needs_no_extra():
    tk = torus_knot(2, 3)
    p1 = tk.commutator_product
    m, l = tk.meridian, tk.longitude
    p2 = CommutatorProduct(w_comm(m, l), p1.factors, p1.presentation, (m, l))
    out = compose_products(p1, p2, RelatorProduct(EMPTY, (), p1.presentation))
    assert out.cost == p1.cost + p2.cost
    assert out.target == w_comm(m, l * l) and verify_commutator_product(out).ok


def test_compose_trivial_second():
    tk = torus_knot(2, 3)
    p1 = tk.commutator_product
    p2 = CommutatorProduct(EMPTY, (), p1.presentation, (tk.meridian, EMPTY))
    out = compose_products(p1, p2, RelatorProduct(EMPTY, (), p1.presentation))
    assert out.cost == p1.cost


def test_compose_generic_adds_one():
    tk = torus_knot(2, 3)
    pres = tk.commutator_product.presentation
    p1 = tk.commutator_product
    r = RelatorProduct.of([RelatorFactor(b, "r", 1)], pres)
    p2 = lift_adjust(p1, r, RelatorProduct(EMPTY, (), pres))  # lifts (m r, l)
    out = compose_products(p1, p2, r)
    assert out.cost == p1.cost + p2.cost + 1 and verify_commutator_product(out).ok


def test_compose_needs_difference():
    tk = torus_knot(2, 3)
    with pytest.raises(CertificateError):
        compose_products(tk.commutator_product, tk.commutator_product, None)


# -- psi_transport --------------------------------------------------------------------------

def _psi_certs(inst):
    return psi_rel_cert(inst, 2)          # translation commutators imported


def _defects(gen: Stein):
    return psi_defect_cert(gen, 2)


def test_psi_transport_empty():
    out = psi_transport(RelatorProduct(EMPTY, ()), [], _psi_certs, _defects)
    assert out.cost == 0


def test_psi_transport_translation_commutator():
    x_ls = translation_product(s, t)
    out = psi_transport(x_ls, [(xa(1, s), xa(1, t))], _psi_certs, _defects)
    assert verify_commutator_product(out).ok
    assert out.cost <= 5 * 2 + 2 * 1


def test_psi_transport_missing_certificate():
    x_ls = translation_product(s, t)
    with pytest.raises(CertificateError):
        psi_transport(x_ls, [(xa(1, s), xa(1, t))], {}, _defects)


# -- bounds, surfaces, units ----------------------------------------------------------------

def test_t2_bound_values():
    assert t2_bound(12, 1).t2_bound == 62
    assert t2_bound(12, 1).genus_bound == 63
    assert t2_bound(0, 0).t2_bound == 0
    assert t2_bound(1, 1).t2_bound == 7
    with pytest.raises(ValueError):
        t2_bound(-1, 0)


def test_surface_datum_torus():
    sd = torus_knot(2, 3).datum
    assert sd.genus == 2 and sd.check() and not sd.conditional


def test_surface_datum_cost_zero():
    g = a ** 2
    cp = CommutatorProduct(w_comm(g, a ** 3), (), lifts=(g, a ** 3))
    sd = surface_datum(cp)
    assert sd.genus == 1 and sd.check()


def test_affine_unit_argument():
    assert affine_unit_argument([2, 3]) == {"gcd": 1, "overcommutes": True}
    assert affine_unit_argument([2]) == {"gcd": 3, "overcommutes": False}
    assert affine_unit_argument([3, 5]) == {"gcd": 8, "overcommutes": False}
    with pytest.raises(ValueError):
        affine_unit_argument([])


def test_abelianization():
    assert abelianization(w_comm(a, b)) == {}
    assert abelianization(expand_relator(rel(R1, 1, s, t)))


# -- presentation monotonicity --------------------------------------------------------------

def test_homomorphic_image_keeps_verifying():
    # a -> b a b^-1 , b -> b preserves <a,b | a^2 b^-3> relator up to conjugation
    from overcommute.words import Named, w_map
    tk = torus_knot(2, 3)
    pres = tk.commutator_product.presentation
    img = {Named("a"): w_conj(b, a), Named("b"): b}
    r_img = w_map(pres.relator_word("r"), img)
    assert r_img == w_conj(b, pres.relator_word("r"))
    rp = tk.relator_product
    mapped = RelatorProduct(w_map(rp.target, img),
                            tuple(RelatorFactor(w_map(f.conjugator, img) * b, "r", f.sign)
                                  for f in rp.factors), pres)
    assert verify_relator_product(mapped).ok and mapped.cost <= rp.cost
