from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from overcommute.exactfield import const, parse_field, var
from overcommute.steinberg import R1, eta_elem, expand_relator, h_elem, psi_apply, rel
from overcommute.words import (EMPTY, Letter, Named, Stein, UnmappedGenerator, Word, named,
                               parse_word, w_comm, w_conj, w_inv, w_map, xa)

V = ("s", "t")
s, t = var("s", V), var("t", V)


def naive_reduce(seq):
    """Oracle: rescan until no adjacent cancelling pair is left."""
    seq = list(seq)
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i][0] == seq[i + 1][0] and seq[i][1] == -seq[i + 1][1]:
                del seq[i:i + 2]
                changed = True
                break
    return seq


def as_pairs(w: Word):
    return [(l.gen.serialize(), l.sign) for l in w.letters]


letters = st.lists(st.tuples(st.sampled_from("abc"), st.sampled_from([1, -1])), max_size=200)


def build(seq) -> Word:
    return Word([Letter(Named(g), e) for g, e in seq])


# -- examples -------------------------------------------------------------------

def test_letter_times_inverse_is_empty():
    assert (xa(1, t) * w_inv(xa(1, t))).is_identity()


def test_distinct_parameters_do_not_cancel():
    assert len(xa(1, s) * xa(1, t)) == 2


def test_relator_pair_reduces_to_translation_commutator():
    a = w_inv(expand_relator(rel(R1, 1, t, s))) * expand_relator(rel(R1, 1, s, t))
    assert a == w_comm(xa(1, s), xa(1, t))
    assert len(a) == 4


def test_inverse_examples():
    assert w_inv(EMPTY).is_identity()
    x = w_inv(xa(1, t))
    assert len(x) == 1 and x.letters[0].sign == -1
    w = w_inv(xa(1, s) * xa(-1, t))
    assert w.serialize() == "x(-1, t)^-1*x(+1, s)^-1"


def test_conjugation_examples():
    w = xa(1, t)
    assert w_conj(EMPTY, w) == w
    assert w_conj(w, EMPTY).is_identity()
    assert len(w_conj(xa(1, s), xa(1, t))) == 3


def test_commutator_examples():
    a = named("a")
    assert w_comm(a, a).is_identity()
    assert len(w_comm(xa(1, s), xa(1, t))) == 4
    u, v = var("u", ("u",)), 1 - var("u", ("u",))
    eu, ev = eta_elem(1, u), eta_elem(1, v)
    assert len(eu) == len(ev) == 6
    raw = as_pairs(eu) + as_pairs(ev) + as_pairs(w_inv(eu)) + as_pairs(w_inv(ev))
    assert len(raw) == 24
    # the trailing w_-(1) blocks cancel at the two inner junctions
    c = w_comm(eu, ev)
    assert as_pairs(c) == naive_reduce(raw)
    assert len(c) == 18


def test_zero_parameter_is_a_genuine_letter():
    assert not xa(1, 0).is_identity()


def test_map_examples():
    w = parse_word("a*b^-1*a", ())
    assert w_map(w, lambda g: Word.gen(g)) == w
    img = psi_apply(xa(1, t), 2)
    assert img == w_comm(h_elem(1, 2), xa(1, t / 3))
    assert psi_apply(EMPTY, 2).is_identity()
    with pytest.raises(UnmappedGenerator):
        w_map(named("a"), {})


def test_parser_grammar():
    w = parse_word("[x(+1, s), x(+1, t)]", V)
    assert w == w_comm(xa(1, s), xa(1, t))
    assert parse_word("conj(a, b)^-1") == w_conj(named("a"), named("b", -1))
    assert parse_word("1").is_identity()
    assert parse_word("a^3*a^-1") == named("a", 2)
    with pytest.raises(SyntaxError):
        parse_word("a*")


def test_sum_order_shares_the_letter():
    assert Stein(1, t + s) == Stein(1, s + t)
    assert hash(Stein(1, t + s)) == hash(Stein(1, s + t))


# -- properties -----------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(letters)
def test_reduction_matches_oracle(seq):
    assert as_pairs(build(seq)) == [(g, e) for g, e in naive_reduce(seq)]


@settings(max_examples=200, deadline=None)
@given(letters, st.integers(0, 200))
def test_reduction_is_confluent(seq, cut):
    cut = min(cut, len(seq))
    whole = build(seq)
    assert build(seq[:cut]) * build(seq[cut:]) == whole
    assert (build(seq[:cut // 2]) * build(seq[cut // 2:cut])) * build(seq[cut:]) == whole


@settings(max_examples=200, deadline=None)
@given(letters, letters)
def test_length_bounds(a, b):
    A, B = build(a), build(b)
    assert len(A * B) <= len(A) + len(B)
    assert len(w_comm(A, B)) <= 2 * len(A) + 2 * len(B)


@settings(max_examples=200, deadline=None)
@given(letters)
def test_inverse_cancels(seq):
    w = build(seq)
    assert (w * w_inv(w)).is_identity()
    assert (w_inv(w) * w).is_identity()


@settings(max_examples=100, deadline=None)
@given(letters)
def test_map_respects_inversion(seq):
    images = {Named("a"): named("b") * named("c"), Named("b"): named("a", -2), Named("c"): EMPTY}
    w = build(seq)
    assert w_map(w_inv(w), images) == w_inv(w_map(w, images))


@settings(max_examples=100, deadline=None)
@given(letters)
def test_serialization_round_trip(seq):
    w = build(seq)
    assert parse_word(w.serialize()) == w
    assert parse_word(w.serialize()).serialize() == w.serialize()


def test_stein_serialization_round_trip():
    w = w_comm(xa(1, s / (t + 1)), xa(-1, parse_field("r2*s-3", V)))
    assert parse_word(w.serialize(), V) == w
