"""The Steinberg presentation of St2(k) and its evaluation into SL2(k).

Relator schemas (alpha = +-1, "x" means x_alpha, "x-" means x_{-alpha}):

    R1(s, t) = x(s+t) x(s)^-1 x(t)^-1
    R2(u, t) = w(u) x(t) w(u)^-1 x-(u^-2 t)
    R3(u, t) = w(u) x(t) w(-u) x-(u^-2 t)
    R4(u, v) = x(-uv) R1_{-alpha}(u^-1, v^-1) x(-uv)^-1

with w(u) = x(u) x-(-u^-1) x(u).  R1 and R2 normally generate the relation
subgroup; R3 and R4 are derived (see ``derivations``).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactfield import FieldElem, QSqrt2, const, parse_field, var
from .words import (EMPTY, Named, Stein, Word, product, w_comm, w_inv, w_map,
                    xa)

__all__ = [
    "SLMatrix", "RelatorInstance", "expand_relator", "w_elem", "h_elem",
    "eta_elem", "c_elem", "pi_eval", "psi_apply", "psi_gen", "ghys_words",
    "verify_ghys", "GhysReport", "prop53_checks", "prop53_item4",
    "random_param", "rel", "ghys_pieces", "R1", "R2", "R3", "R4", "SCHEMAS",
]

R1, R2, R3, R4 = "R1", "R2", "R3", "R4"
SCHEMAS = (R1, R2, R3, R4)


def _fe(x, vars=()) -> FieldElem:
    return x if isinstance(x, FieldElem) else const(x, vars)


# -- SL2 -----------------------------------------------------------------------

@dataclass(frozen=True)
class SLMatrix:
    m11: FieldElem
    m12: FieldElem
    m21: FieldElem
    m22: FieldElem

    @classmethod
    def identity(cls, vars=()) -> SLMatrix:
        one, zero = const(1, vars), const(0, vars)
        return cls(one, zero, zero, one)

    def __mul__(self, o: SLMatrix) -> SLMatrix:
        return SLMatrix(self.m11 * o.m11 + self.m12 * o.m21,
                        self.m11 * o.m12 + self.m12 * o.m22,
                        self.m21 * o.m11 + self.m22 * o.m21,
                        self.m21 * o.m12 + self.m22 * o.m22)

    def inverse(self) -> SLMatrix:
        # determinant one
        return SLMatrix(self.m22, -self.m12, -self.m21, self.m11)

    def det(self) -> FieldElem:
        return self.m11 * self.m22 - self.m12 * self.m21

    def entries(self) -> tuple[FieldElem, ...]:
        return (self.m11, self.m12, self.m21, self.m22)

    def __eq__(self, other):
        if not isinstance(other, SLMatrix):
            return NotImplemented
        return all(a.equals(b) for a, b in zip(self.entries(), other.entries()))

    __hash__ = None

    def is_identity(self) -> bool:
        return (self.m12.is_zero() and self.m21.is_zero()
                and (self.m11 - 1).is_zero() and (self.m22 - 1).is_zero())

    def is_central(self) -> bool:
        """True for +-I."""
        return (self.m12.is_zero() and self.m21.is_zero()
                and self.m11.equals(self.m22)
                and (self.m11 * self.m11 - 1).is_zero())

    def serialize(self) -> list[list[str]]:
        return [[self.m11.serialize(), self.m12.serialize()],
                [self.m21.serialize(), self.m22.serialize()]]

    def __repr__(self):
        return f"SLMatrix({self.serialize()})"


def _x_matrix(alpha: int, t: FieldElem) -> SLMatrix:
    one, zero = const(1, t.vars), const(0, t.vars)
    if alpha == 1:
        return SLMatrix(one, t, zero, one)
    return SLMatrix(one, zero, t, one)


def pi_eval(w: Word, vars=None) -> SLMatrix:
    """Image of a word over the Stein alphabet in SL2(k)."""
    acc = None
    for l in w.letters:
        if not isinstance(l.gen, Stein):
            raise TypeError(f"named generator {l.gen.symbol!r} has no SL2 image")
        t = l.gen.t if l.sign == 1 else -l.gen.t
        m = _x_matrix(l.gen.alpha, t)
        acc = m if acc is None else acc * m
    if acc is None:
        return SLMatrix.identity(vars or ())
    return acc


# -- derived elements ------------------------------------------------------------

def _unit(u, what="u") -> FieldElem:
    u = _fe(u)
    if u.is_zero():
        raise ValueError(f"{what} must be a unit (nonzero)")
    return u


def w_elem(alpha: int, u) -> Word:
    u = _unit(u)
    return product((xa(alpha, u), xa(-alpha, -u.inverse()), xa(alpha, u)))


def h_elem(alpha: int, u) -> Word:
    u = _unit(u)
    return w_elem(alpha, u) * w_inv(w_elem(alpha, const(1, u.vars)))


def eta_elem(alpha: int, u) -> Word:
    u = _unit(u)
    return w_elem(alpha, u) * w_elem(-alpha, const(1, u.vars))


def c_elem(u, v, alpha: int = 1) -> Word:
    u, v = _unit(u), _unit(v, "v")
    return product((h_elem(alpha, u * v), w_inv(h_elem(alpha, u)),
                    w_inv(h_elem(alpha, v))))


# -- relators --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class RelatorInstance:
    schema: str
    alpha: int
    params: tuple[FieldElem, ...]

    def __post_init__(self):
        if self.schema not in SCHEMAS:
            raise ValueError(f"unknown relator schema {self.schema!r}")
        if self.alpha not in (1, -1):
            raise ValueError("alpha must be +1 or -1")
        if len(self.params) != 2:
            raise ValueError("relator instances take two parameters")
        object.__setattr__(self, "params", tuple(_fe(p) for p in self.params))
        if self.schema in (R2, R3) and self.params[0].is_zero():
            raise ValueError(f"{self.schema}: u must be nonzero")
        if self.schema == R4 and any(p.is_zero() for p in self.params):
            raise ValueError("R4: u and v must be nonzero")

    def __eq__(self, other):
        return (isinstance(other, RelatorInstance) and self.schema == other.schema
                and self.alpha == other.alpha
                and all(a.equals(b) for a, b in zip(self.params, other.params)))

    def __hash__(self):
        return hash((self.schema, self.alpha) + self.params)

    def expand(self) -> Word:
        return expand_relator(self)

    def to_json(self) -> dict:
        return {"schema": self.schema, "alpha": self.alpha,
                "params": [p.serialize() for p in self.params]}

    @classmethod
    def from_json(cls, d: dict, vars=None) -> RelatorInstance:
        return cls(d["schema"], int(d["alpha"]),
                   tuple(parse_field(p, vars) for p in d["params"]))

    def __str__(self):
        a = "+" if self.alpha == 1 else "-"
        return f"{self.schema}{a}({', '.join(p.serialize() for p in self.params)})"


def rel(schema: str, alpha: int, p, q) -> RelatorInstance:
    return RelatorInstance(schema, alpha, (_fe(p), _fe(q)))


_EXPAND_CACHE: dict = {}


def expand_relator(r: RelatorInstance) -> Word:
    hit = _EXPAND_CACHE.get(r)
    if hit is not None:
        return hit
    a = r.alpha
    p, q = r.params
    if p.vars != q.vars:
        if p.is_constant():
            p = const(p, q.vars)
        else:
            q = const(q, p.vars)
    if r.schema == R1:
        w = product((xa(a, p + q), xa(a, p, -1), xa(a, q, -1)))
    elif r.schema == R2:
        W = w_elem(a, p)
        w = product((W, xa(a, q), w_inv(W), xa(-a, q / (p * p))))
    elif r.schema == R3:
        w = product((w_elem(a, p), xa(a, q), w_elem(a, -p), xa(-a, q / (p * p))))
    else:
        g = xa(a, -(p * q))
        inner = expand_relator(RelatorInstance(R1, -a, (p.inverse(), q.inverse())))
        w = product((g, inner, w_inv(g)))
    if len(_EXPAND_CACHE) > 50000:
        _EXPAND_CACHE.clear()
    _EXPAND_CACHE[r] = w
    return w


# -- psi --------------------------------------------------------------------------

def psi_gen(alpha: int, t: FieldElem, a=2) -> Word:
    """[h_alpha(a), x_alpha(t/(a^2-1))]"""
    a = const(a, t.vars)
    d = a * a - 1
    if d.is_zero():
        raise ValueError("psi needs a^2 != 1")
    return w_comm(h_elem(alpha, a), xa(alpha, t / d))


def psi_apply(w: Word, a=2) -> Word:
    """The endomorphism x_alpha(t) -> [h_alpha(a), x_alpha(t/(a^2-1))]."""
    af = _fe(a)
    if (af * af - 1).is_zero() or af.is_zero():
        raise ValueError("psi needs a not in {0, 1, -1}")

    def image(g):
        if isinstance(g, Named):
            raise KeyError(g)
        return psi_gen(g.alpha, g.t, a)

    return w_map(w, image)


# -- Ghys' example -----------------------------------------------------------------

def _R1(alpha, u, v) -> tuple[Word, list[RelatorInstance]]:
    a = alpha
    rels = [rel(R1, a, u * u, -u), rel(R3, a, -u, u * u), rel(R1, a, -v, -u)]
    ex = [expand_relator(r) for r in rels]
    w = product((xa(a, -(u * v), -1), ex[0], xa(-a, u.inverse(), -1), xa(a, -u, -1),
                 ex[1], ex[2], xa(a, -u), xa(-a, u.inverse()), xa(a, -(u * v))))
    return w, rels


def _R2(alpha, u, v) -> tuple[Word, list[RelatorInstance]]:
    a = alpha
    rels = [rel(R4, a, u, v), rel(R1, a, -v, v * v), rel(R3, a, v, v * v)]
    ex = [expand_relator(r) for r in rels]
    Wv = w_elem(a, v)
    w = product((ex[0], ex[1], w_inv(Wv), ex[2], Wv))
    return w, rels


def ghys_pieces(alpha: int = 1, vars=("u",)):
    """The field elements u, v = 1 - u and the four R-blocks."""
    u = var(vars[0], vars)
    v = 1 - u
    return {
        "u": u, "v": v,
        "R1uv": _R1(alpha, u, v), "R1vu": _R1(alpha, v, u),
        "R2uv": _R2(alpha, u, v), "R2vu": _R2(alpha, v, u),
    }


def ghys_words(alpha: int = 1, u: str = "u") -> dict:
    P = ghys_pieces(alpha, (u,))
    uu, v = P["u"], P["v"]
    W = w_elem(alpha, -(uu * v))
    lhs = w_comm(eta_elem(alpha, uu), eta_elem(alpha, v))
    rhs = product((P["R1uv"][0], w_inv(W), P["R2uv"][0], w_inv(P["R2vu"][0]), W,
                   w_inv(P["R1vu"][0])))
    used = P["R1uv"][1] + P["R1vu"][1] + P["R2uv"][1] + P["R2vu"][1]
    return {"lhs": lhs, "rhs": rhs, "relators_used": used}


@dataclass
class GhysReport:
    free_equal: bool
    pi_equal: bool
    residual: Word
    relator_count: int
    notes: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"free_equal": self.free_equal, "pi_equal": self.pi_equal,
                "residual": self.residual.serialize(),
                "residual_length": len(self.residual),
                "relator_count": self.relator_count, "notes": list(self.notes)}


def verify_ghys(alpha: int = 1) -> GhysReport:
    g = ghys_words(alpha)
    diff = g["lhs"] * w_inv(g["rhs"])
    pi_ok = pi_eval(g["lhs"]) == pi_eval(g["rhs"])
    return GhysReport(free_equal=diff.is_identity(), pi_equal=pi_ok,
                      residual=diff, relator_count=len(g["relators_used"]))


# -- identities at the level of SL2 ----------------------------------------------

def prop53_checks(alpha: int, u: FieldElem, v: FieldElem, t: FieldElem) -> dict[str, bool]:
    """SL2 images of the classical St2 identities (items 1, 2, 3, 5)."""
    P = pi_eval
    W = P(w_elem(alpha, u))
    out = {
        "w(u)=w(-u)^-1": W == P(w_elem(alpha, -u)).inverse(),
        "w(u)=w_-(-1/u)": W == P(w_elem(-alpha, -u.inverse())),
        "h x h^-1 = x(u^2 t)": P(product((h_elem(alpha, u), xa(alpha, t),
                                          w_inv(h_elem(alpha, u))))) == P(xa(alpha, u * u * t)),
        "h(u)=h_-(u)^-1": P(h_elem(alpha, u)) == P(h_elem(-alpha, u)).inverse(),
        "c(u,v)=I": P(c_elem(u, v, alpha)).is_identity(),
    }
    return out


def prop53_item4(alpha: int, u: FieldElem, v: FieldElem) -> list[str]:
    """Which candidate right-hand sides match w(u) w_-(v) w(u)^-1 under pi."""
    lhs = pi_eval(product((w_elem(alpha, u), w_elem(-alpha, v), w_inv(w_elem(alpha, u)))))
    cands = {
        "w_alpha(-u^2 v)": w_elem(alpha, -(u * u * v)),
        "w_-alpha(u^-2 v^-1)": w_elem(-alpha, (u * u * v).inverse()),
        "w_alpha(u^2 v)": w_elem(alpha, u * u * v),
        "w_-alpha(-u^-2 v)": w_elem(-alpha, -(v / (u * u))),
        "w_-alpha(u^2 v)": w_elem(-alpha, u * u * v),
    }
    return [name for name, w in cands.items() if pi_eval(w) == lhs]


def random_param(rng: random.Random, vars=("u",), unit: bool = False, span: int = 5) -> FieldElem:
    """A random element (a + b r2 + c u)/(d + e u) of Q(r2)(u); resampled if zero
    when ``unit`` is set."""
    while True:
        c = [rng.randint(-span, span) for _ in range(5)]
        num = const(QSqrt2(Fraction(c[0]), Fraction(c[1], rng.randint(1, 3))), vars)
        den = const(rng.randint(1, span), vars)
        if vars:
            x = var(vars[0], vars)
            num = num + c[2] * x
            den = den + c[3] * x
        if den.is_zero():
            continue
        val = num / den
        if unit and val.is_zero():
            continue
        return val
