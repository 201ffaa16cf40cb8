from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from overcommute.certificates import AxiomFactor, verify_commutator_product
from overcommute.cli import main
from overcommute.derivations import psi_r1_cert
from overcommute.exactfield import QSqrt2, const, var
from overcommute.ghys import ghys_refined
from overcommute.translations import (FRCong, T, algebraic_provider, bilinear_left,
                                      bilinear_right, cube_cert, scale_congruence,
                                      translation_cert)
from overcommute.words import w_inv

V = ("s", "t")
s, t = var("s", V), var("t", V)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7).filter(lambda q: q != 0)


def test_building_blocks_check_symbolically():
    for c, bound in [(bilinear_right(s, t, const(3, V)), 2),
                     (bilinear_left(s, const(2, V), t), 2),
                     (bilinear_left(const(2, V), s, t, -1), 2),
                     (scale_congruence(s, t, const(3, V)), 3)]:
        assert c.check() and c.cost <= bound


def test_scale_by_sqrt2_doubles_both_slots():
    c = scale_congruence(s, t, const(QSqrt2(0, 1), V))
    assert c.lhs == T(s + s, t + t) and c.rhs == T(s, t) and c.check()


def test_cube_certificate():
    c = cube_cert(s, t)
    assert c.target == T(s, t) ** 3
    assert verify_commutator_product(c).ok and c.cost == 9 and c.axiom_cost == 0


def test_symbolic_translation_certificate():
    for alpha in (1, -1):
        c = translation_cert(s, t, alpha)
        assert c.target == T(s, t, alpha)
        assert verify_commutator_product(c).ok
        assert c.cost == 13 and c.axiom_cost == 0
        assert not any(isinstance(f, AxiomFactor) for f in c.factors)


def test_equal_parameters_cost_nothing():
    assert translation_cert(const(5), const(5)).factors == ()


@settings(max_examples=15, deadline=None)
@given(rationals, rationals, st.sampled_from([1, -1]))
def test_numeric_translation_certificates(p, q, alpha):
    c = translation_cert(const(p), const(q), alpha)
    assert verify_commutator_product(c).ok and c.axiom_cost == 0
    assert c.cost <= 13 and (c.cost == 0) == (p == q)


def test_degenerate_slot_is_cheaper():
    # s/3 == t makes some intermediate commutators trivial
    c = translation_cert(const(Fraction(1)), const(Fraction(1, 3)))
    assert verify_commutator_product(c).ok and 0 < c.cost < 13


def test_frcong_calculus():
    a = bilinear_right(s, t, t)
    b = a.sym()
    assert b.lhs == a.rhs and b.check()
    assert a.trans(b).lhs == a.lhs and a.trans(b).rhs == a.lhs
    m = FRCong.refl(T(t, s)) * a
    assert m.check() and m.xi.target == m.lhs * w_inv(m.rhs)


def test_ghys_without_axioms():
    r = ghys_refined(1, translations=algebraic_provider)
    c = r.certificate
    assert r.ok and verify_commutator_product(c).ok
    assert c.cost == 69 and c.axiom_cost == 0 and r.cert_report.genus_bound == 70


def test_psi_r1_without_axioms():
    c = psi_r1_cert(const(Fraction(2)), const(Fraction(3)), 1, a=2, provider=algebraic_provider)
    assert verify_commutator_product(c).ok and c.cost == 16 and c.axiom_cost == 0


def test_cli_translations_option(capsys):
    assert main(["psi", "--schema", "R1", "--translations", "algebraic"]) == 0
    assert "cost 16 (16 realized, 0 imported)" in capsys.readouterr().out
