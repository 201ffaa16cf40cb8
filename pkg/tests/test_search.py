from __future__ import annotations

import pytest

from overcommute.certificates import CertificateError, verify_commutator_product
from overcommute.search import cyclic_reduce, find_conjugator, search_commutator_cert
from overcommute.torus import torus_knot, torus_presentation
from overcommute.words import EMPTY, named, product, w_comm, w_conj, w_inv

a, b, c = named("a"), named("b"), named("c")


def test_cyclic_reduce():
    w = w_conj(a * b, c * a)
    p, core = cyclic_reduce(w)
    assert p * core * w_inv(p) == w
    assert core.letters[0].gen != core.letters[-1].gen or core.letters[0].sign == core.letters[-1].sign


def test_find_conjugator():
    x = a * b * b
    g = c * a ** -1
    y = w_conj(g, x)
    f = find_conjugator(x, y)
    assert f is not None and w_conj(f, x) == y
    assert find_conjugator(a, b) is None
    assert find_conjugator(a * b, b * a) is not None


def test_trefoil_found_at_cost_one():
    tk = torus_knot(2, 3)
    res = search_commutator_cert(w_comm(tk.meridian, tk.longitude), torus_presentation(2, 3),
                                 max_cost=1)
    assert res.found and res.certificate.cost == 1
    assert verify_commutator_product(res.certificate).ok


def test_empty_target_gives_empty_certificate():
    res = search_commutator_cert(EMPTY, torus_presentation(2, 3))
    assert res.found and res.certificate.cost == 0 and res.certificate.factors == ()


def test_target_outside_commutator_subgroup():
    with pytest.raises(CertificateError):
        search_commutator_cert(a, torus_presentation(2, 3))


def test_budget_is_reported():
    tk = torus_knot(3, 5)
    res = search_commutator_cert(w_comm(tk.meridian * b, tk.longitude * a * w_inv(a)),
                                 torus_presentation(3, 5), max_cost=2, budget=10)
    assert not res.found and res.exhausted and res.explored <= 10
    assert res.to_json()["budget_exhausted"]
