"""Torus knot groups <a, b | a^p b^-q>: the meridian and longitude commute
modulo one relator pair, which folds into a single commutator [f, r]."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .certificates import (CertificateError, CommutatorProduct, Presentation,
                           RelatorFactor, RelatorProduct, SurfaceDatum, fold_pairs,
                           surface_datum, verify_commutator_product,
                           verify_relator_product)
from .words import Word, named, w_comm, w_inv

__all__ = ["TorusKnot", "torus_knot", "torus_presentation"]


def torus_presentation(p: int, q: int) -> Presentation:
    return Presentation.finite(f"torus({p},{q})", ["a", "b"], {"r": named("a", p) * named("b", -q)})


def _meridian_exponents(p: int, q: int) -> tuple[int, int]:
    """(u, v) with q u + p v = 1 and u the smallest nonnegative choice."""
    u = pow(q, -1, p) if p > 1 else 0
    v, rem = divmod(1 - q * u, p)
    assert rem == 0
    return u, v


@dataclass
class TorusKnot:
    p: int
    q: int
    u: int
    v: int
    meridian: Word
    longitude: Word
    relator_product: RelatorProduct
    commutator_product: CommutatorProduct
    datum: SurfaceDatum

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "u": self.u, "v": self.v,
                "meridian": self.meridian.serialize(),
                "longitude": self.longitude.serialize(),
                "l_S_cost": self.relator_product.cost,
                "cl_R_cost": self.commutator_product.cost,
                "genus_bound": self.datum.genus,
                "relator_product_ok": verify_relator_product(self.relator_product).ok,
                "commutator_product_ok": verify_commutator_product(self.commutator_product).ok,
                "surface_datum_ok": self.datum.check()}


def torus_knot(p: int, q: int) -> TorusKnot:
    if p < 2 or q < 2:
        raise CertificateError("torus knots need p, q >= 2")
    if gcd(p, q) != 1:
        raise CertificateError(f"p = {p} and q = {q} are not coprime")
    pres = torus_presentation(p, q)
    u, v = _meridian_exponents(p, q)
    au, bv = named("a", u), named("b", v)
    m, l = au * bv, named("a", p)
    # [m, l] = (a^u b^v) r (a^u b^v)^-1 . a^u r^-1 a^-u
    rp = RelatorProduct(w_comm(m, l), (RelatorFactor(m, "r", 1), RelatorFactor(au, "r", -1)), pres)
    if not verify_relator_product(rp).ok:
        raise CertificateError("internal: torus relator product does not verify")
    cp = fold_pairs(rp).with_lifts(m, l)
    return TorusKnot(p, q, u, v, m, l, rp, cp, surface_datum(cp))
