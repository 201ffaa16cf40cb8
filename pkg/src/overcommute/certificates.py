"""Verifiable certificates for relator length and [F, R]-commutator length.

A ``RelatorProduct`` writes a word as a product of conjugated relators and
witnesses membership in R together with an upper bound for the relator
length.  A ``CommutatorProduct`` writes a word as a product of commutators
``[f, r]^{+-1}`` where every ``r`` carries its own ``RelatorProduct``; its
cost bounds the commutator length in [F, R], hence the overcommutation
length when the target is ``[g, h]``.

``AxiomFactor`` is the one escape hatch: a literal word whose commutator
cost is imported rather than constructed.  Verifiers check its shape, count
its claimed cost and flag it; ``verify_commutator_product`` can be told to
reject axioms altogether.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .steinberg import RelatorInstance, expand_relator
from .words import (EMPTY, _reduce, Letter, Named, Stein, Word, parse_word, product,
                    w_comm, w_conj, w_inv)

__all__ = [
    "Presentation", "STEINBERG", "RelatorFactor", "RelatorProduct",
    "CommutatorFactor", "AxiomFactor", "CommutatorProduct", "SurfaceDatum",
    "BoundReport", "VerifyResult", "CertificateError",
    "verify_relator_product", "verify_commutator_product", "fold_pairs",
    "lift_adjust", "compose_products", "psi_transport", "t2_bound",
    "surface_datum", "affine_unit_argument", "abelianization",
    "translation_axiom", "ghys_refined", "search_commutator_cert",
    "conj_factors", "inv_factors", "inv_product", "conj_product",
    "concat_products",
]


class CertificateError(ValueError):
    pass


# -- presentations ---------------------------------------------------------------

@dataclass(frozen=True)
class Presentation:
    """Either the Steinberg presentation (schema relators) or a finite one."""

    name: str
    relators: tuple[tuple[str, Word], ...] = ()
    generators: tuple[str, ...] = ()
    steinberg: bool = False
    allow_derived: bool = True

    @classmethod
    def finite(cls, name: str, generators: Sequence[str], relators: dict) -> Presentation:
        rels = tuple((k, v if isinstance(v, Word) else parse_word(v))
                     for k, v in relators.items())
        return cls(name, rels, tuple(generators))

    def relator_word(self, ref) -> Word:
        if isinstance(ref, RelatorInstance):
            if not self.steinberg:
                raise CertificateError(f"relator schema {ref.schema} unknown to {self.name}")
            if ref.schema in ("R3", "R4") and not self.allow_derived:
                raise CertificateError(f"derived schema {ref.schema} not allowed in {self.name}")
            return expand_relator(ref)
        for k, w in self.relators:
            if k == ref:
                return w
        raise CertificateError(f"relator {ref!r} unknown to {self.name}")

    def to_json(self) -> dict:
        if self.steinberg:
            return {"name": self.name, "steinberg": True,
                    "allow_derived": self.allow_derived}
        return {"name": self.name, "generators": list(self.generators),
                "relators": {k: w.serialize() for k, w in self.relators}}

    @classmethod
    def from_json(cls, d: dict) -> Presentation:
        if d.get("steinberg"):
            return cls(d["name"], steinberg=True,
                       allow_derived=bool(d.get("allow_derived", True)))
        return cls.finite(d["name"], d.get("generators", []), d.get("relators", {}))


STEINBERG = Presentation("steinberg", steinberg=True)
STEINBERG_STRICT = Presentation("steinberg-r1r2", steinberg=True, allow_derived=False)


# -- relator products ---------------------------------------------------------------

@dataclass(frozen=True)
class RelatorFactor:
    conjugator: Word
    relator: Union[RelatorInstance, str]
    sign: int = 1

    def expand(self, pres: Presentation = STEINBERG) -> Word:
        r = pres.relator_word(self.relator)
        return w_conj(self.conjugator, r if self.sign == 1 else w_inv(r))

    def conj(self, g: Word) -> RelatorFactor:
        return RelatorFactor(g * self.conjugator, self.relator, self.sign)

    def inverse(self) -> RelatorFactor:
        return RelatorFactor(self.conjugator, self.relator, -self.sign)


def conj_factors(g: Word, fs: Iterable[RelatorFactor]) -> tuple[RelatorFactor, ...]:
    return tuple(f.conj(g) for f in fs)


def inv_factors(fs: Sequence[RelatorFactor]) -> tuple[RelatorFactor, ...]:
    return tuple(f.inverse() for f in reversed(fs))


def _expand_all(fs, pres) -> Word:
    # stream g r^e g^-1 for every factor through one reduction stack
    stack: list = []
    for f in fs:
        r = pres.relator_word(f.relator)
        _reduce(f.conjugator.letters, stack)
        _reduce(r.letters if f.sign == 1 else r.inverse().letters, stack)
        _reduce(f.conjugator.inverse().letters, stack)
    return Word(stack, reduced=True)


@dataclass(frozen=True)
class RelatorProduct:
    target: Word
    factors: tuple[RelatorFactor, ...] = ()
    presentation: Presentation = STEINBERG

    @property
    def cost(self) -> int:
        return len(self.factors)

    def expand(self) -> Word:
        return _expand_all(self.factors, self.presentation)

    @classmethod
    def of(cls, factors: Sequence[RelatorFactor], pres: Presentation = STEINBERG) -> RelatorProduct:
        """Product whose target is the expansion itself."""
        factors = tuple(factors)
        return cls(_expand_all(factors, pres), factors, pres)

    def conj(self, g: Word) -> RelatorProduct:
        return RelatorProduct(w_conj(g, self.target), conj_factors(g, self.factors),
                              self.presentation)

    def inverse(self) -> RelatorProduct:
        return RelatorProduct(w_inv(self.target), inv_factors(self.factors), self.presentation)

    def __mul__(self, other: RelatorProduct) -> RelatorProduct:
        return RelatorProduct(self.target * other.target, self.factors + other.factors,
                              self.presentation)


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    residual: Word
    cost: int = 0
    axiom_cost: int = 0
    message: str = ""

    def __bool__(self):
        return self.ok


def verify_relator_product(p: RelatorProduct) -> VerifyResult:
    prod = p.expand()
    residual = prod * w_inv(p.target)
    return VerifyResult(residual.is_identity(), residual, p.cost)


# -- commutator products ------------------------------------------------------------

@dataclass(frozen=True)
class CommutatorFactor:
    """``[f, r]^sign`` with ``r = r_witness.target`` witnessed in R."""

    f: Word
    r_witness: RelatorProduct
    sign: int = 1

    cost = 1

    def expand(self) -> Word:
        c = w_comm(self.f, self.r_witness.target)
        return c if self.sign == 1 else w_inv(c)

    def conj(self, g: Word) -> CommutatorFactor:
        return CommutatorFactor(w_conj(g, self.f), self.r_witness.conj(g), self.sign)

    def inverse(self) -> CommutatorFactor:
        return CommutatorFactor(self.f, self.r_witness, -self.sign)


# kinds of imported facts the verifier knows how to recognise
AXIOM_KINDS = {
    "translations-xi2": "commutator of two translations [x_a(s), x_a(t)] is a product "
                        "of two commutators [f, r] (imported, topological proof)",
}


def _is_translation_commutator(w: Word) -> bool:
    ls = w.letters
    if len(ls) != 4 or not all(isinstance(l.gen, Stein) for l in ls):
        return False
    a, b, c, d = ls
    return (a.sign == b.sign == 1 and c.sign == d.sign == -1
            and a.gen == c.gen and b.gen == d.gen
            and a.gen.alpha == b.gen.alpha)


@dataclass(frozen=True)
class AxiomFactor:
    """``conjugator * word^sign * conjugator^-1`` with an imported cost."""

    conjugator: Word
    word: Word
    sign: int = 1
    cost: int = 2
    kind: str = "translations-xi2"
    provenance: str = "imported: translation commutators cost two (topological argument)"

    def expand(self) -> Word:
        return w_conj(self.conjugator, self.word if self.sign == 1 else w_inv(self.word))

    def conj(self, g: Word) -> AxiomFactor:
        return AxiomFactor(g * self.conjugator, self.word, self.sign, self.cost,
                           self.kind, self.provenance)

    def inverse(self) -> AxiomFactor:
        return AxiomFactor(self.conjugator, self.word, -self.sign, self.cost,
                           self.kind, self.provenance)

    def shape_ok(self) -> bool:
        if self.kind == "translations-xi2":
            return _is_translation_commutator(self.word)
        return False


def translation_axiom(s, t, alpha: int = 1, conjugator: Word = EMPTY, sign: int = 1) -> AxiomFactor:
    from .words import xa
    return AxiomFactor(conjugator, w_comm(xa(alpha, s), xa(alpha, t)), sign)


Factor = Union[CommutatorFactor, AxiomFactor]


@dataclass(frozen=True)
class CommutatorProduct:
    target: Word
    factors: tuple = ()
    presentation: Presentation = STEINBERG
    lifts: tuple | None = None  # (g, h) with target = [g, h], when known

    @property
    def cost(self) -> int:
        return sum(f.cost for f in self.factors)

    @property
    def axiom_cost(self) -> int:
        return sum(f.cost for f in self.factors if isinstance(f, AxiomFactor))

    @property
    def realized_cost(self) -> int:
        return sum(1 for f in self.factors if isinstance(f, CommutatorFactor))

    def expand(self) -> Word:
        return product(f.expand() for f in self.factors)

    @classmethod
    def of(cls, factors: Sequence, pres: Presentation = STEINBERG, lifts=None) -> CommutatorProduct:
        factors = tuple(factors)
        return cls(product(f.expand() for f in factors), factors, pres, lifts)

    def conj(self, g: Word) -> CommutatorProduct:
        return CommutatorProduct(w_conj(g, self.target), tuple(f.conj(g) for f in self.factors),
                                 self.presentation)

    def inverse(self) -> CommutatorProduct:
        return CommutatorProduct(w_inv(self.target),
                                 tuple(f.inverse() for f in reversed(self.factors)),
                                 self.presentation)

    def __mul__(self, other: CommutatorProduct) -> CommutatorProduct:
        return CommutatorProduct(self.target * other.target, self.factors + other.factors,
                                 self.presentation)

    def with_lifts(self, g: Word, h: Word) -> CommutatorProduct:
        return CommutatorProduct(self.target, self.factors, self.presentation, (g, h))


def conj_product(g: Word, p: CommutatorProduct) -> CommutatorProduct:
    return p.conj(g)


def inv_product(p: CommutatorProduct) -> CommutatorProduct:
    return p.inverse()


def concat_products(ps: Iterable[CommutatorProduct]) -> CommutatorProduct:
    ps = list(ps)
    if not ps:
        return CommutatorProduct(EMPTY, ())
    out = ps[0]
    for p in ps[1:]:
        out = out * p
    return out


def verify_commutator_product(p: CommutatorProduct, allow_axioms: bool = True) -> VerifyResult:
    residual = p.expand() * w_inv(p.target)
    msg = ""
    ok = residual.is_identity()
    if not ok:
        msg = "product does not reduce to target"
    for i, f in enumerate(p.factors):
        if isinstance(f, AxiomFactor):
            if not allow_axioms:
                ok, msg = False, f"factor {i}: axiom imports not allowed"
            elif not f.shape_ok():
                ok, msg = False, f"factor {i}: word does not match axiom kind {f.kind}"
                if residual.is_identity():
                    residual = f.word
            continue
        if f.r_witness.presentation != p.presentation:
            pass  # witness carries its own presentation
        res = verify_relator_product(f.r_witness)
        if not res.ok:
            ok = False
            msg = msg or f"factor {i}: relator witness fails"
            if residual.is_identity():
                residual = res.residual
    return VerifyResult(ok, residual, p.cost, p.axiom_cost, msg)


# -- abelianization ----------------------------------------------------------------

def abelianization(w: Word) -> dict:
    """Exponent sums per generator (the image in the free abelian group)."""
    out: dict = {}
    for l in w.letters:
        out[l.gen] = out.get(l.gen, 0) + l.sign
    return {g: n for g, n in out.items() if n}


# -- fold ----------------------------------------------------------------------------

def fold_pairs(p: RelatorProduct, require_balanced: bool = True) -> CommutatorProduct:
    """Pair each relator occurrence with a later inverse occurrence.

    ``f r f^-1 . X . g r^-1 g^-1 = [f r f^-1, X g f^-1] . X`` turns every pair
    into one commutator; the leftover X is folded recursively.
    """
    factors = list(p.factors)
    if require_balanced:
        if len(factors) % 2:
            raise CertificateError("odd number of relator factors")
        bal: list = []
        for f in factors:
            for entry in bal:
                if entry[0] == f.relator:
                    entry[1] += f.sign
                    break
            else:
                bal.append([f.relator, f.sign])
        if any(n for _, n in bal):
            raise CertificateError("relator signs do not balance")
        if abelianization(p.target):
            raise CertificateError("target has nonzero abelianization")
    if not verify_relator_product(p).ok:
        raise CertificateError("input relator product does not verify")
    pres = p.presentation
    out: list[CommutatorFactor] = []
    rest = factors
    while rest:
        c1 = rest[0]
        j = next((k for k in range(1, len(rest))
                  if rest[k].relator == c1.relator and rest[k].sign == -c1.sign), None)
        if j is None:
            raise CertificateError(f"no partner for factor {c1.relator}")
        between = rest[1:j]
        X = _expand_all(between, pres)
        g = c1.conjugator
        k = X * rest[j].conjugator
        rho = RelatorProduct.of([c1], pres)
        # [A, k g^-1] with A = g r g^-1  ==  [k g^-1, A]^-1
        out.append(CommutatorFactor(k * w_inv(g), rho, -1))
        rest = between + rest[j + 1:]
    return CommutatorProduct(p.target, tuple(out), pres)


# -- transformers ------------------------------------------------------------------

def _require(ok: VerifyResult, what: str):
    if not ok.ok:
        raise CertificateError(f"{what} does not verify: {ok.message or ok.residual}")


def lift_adjust(p: CommutatorProduct, r: RelatorProduct, s: RelatorProduct,
                lifts: tuple | None = None) -> CommutatorProduct:
    """Certificate for [g r, h s] from one for [g, h].

    [g r, h s] = [g r g^-1, g h g^-1] [g, h] [h g r h^-1, h s h^-1]
    """
    g, h = lifts or p.lifts or (None, None)
    if g is None:
        raise CertificateError("lift_adjust needs the lifts (g, h)")
    _require(verify_commutator_product(p), "input certificate")
    _require(verify_relator_product(r), "r witness")
    _require(verify_relator_product(s), "s witness")
    if w_comm(g, h) != p.target:
        raise CertificateError("lifts do not match the certificate target")
    R, S = r.target, s.target
    # a trivial adjustment contributes [f, 1] = 1 and is dropped
    first = (CommutatorFactor(w_conj(g, h), r.conj(g), -1),) if R else ()
    last = (CommutatorFactor(w_conj(h, g * R), s.conj(h), 1),) if S else ()
    factors = first + p.factors + last
    out = CommutatorProduct(w_comm(g * R, h * S), factors, p.presentation, (g * R, h * S))
    return out


def compose_products(p1: CommutatorProduct, p2: CommutatorProduct,
                     difference: RelatorProduct | None) -> CommutatorProduct:
    """Certificate for [g1, h1 h2] from certificates for [g1, h1] and [g2, h2].

    ``difference`` witnesses g1^-1 g2 in R.  [g1, h1 h2] = [g1, h1] h1 [g1, h2] h1^-1
    and [g1, h2] differs from [g2, h2] by one commutator when g1 != g2.
    """
    if p1.lifts is None or p2.lifts is None:
        raise CertificateError("compose_products needs lifts on both certificates")
    if difference is None:
        raise CertificateError("missing lift-difference witness")
    g1, h1 = p1.lifts
    g2, h2 = p2.lifts
    _require(verify_commutator_product(p1), "p1")
    _require(verify_commutator_product(p2), "p2")
    _require(verify_relator_product(difference), "difference witness")
    if w_inv(g1) * g2 != difference.target:
        raise CertificateError("difference witness does not match g1^-1 g2")
    if difference.target.is_identity():
        inner = p2
    else:
        # g2 = g1 d:  [g1 d, h2] = [g1 d g1^-1, g1 h2 g1^-1] [g1, h2]
        # hence [g1, h2] = [g1 h2 g1^-1, g1 d g1^-1] [g2, h2]
        d = difference.conj(g1)
        fix = CommutatorFactor(w_conj(g1, h2), d, 1)
        inner = CommutatorProduct(w_comm(g1, h2), (fix,) + p2.factors, p1.presentation)
    tail = inner.conj(h1)
    out = CommutatorProduct(w_comm(g1, h1 * h2), p1.factors + tail.factors,
                            p1.presentation, (g1, h1 * h2))
    return out


def psi_transport(x_ls: RelatorProduct, x_cl: Sequence[tuple[Word, Word]],
                  psi_rel_certs, defect_certs) -> CommutatorProduct:
    """Commutator certificate for x from a relator product and a commutator
    expression, transported through the endomorphism psi.

    ``psi_rel_certs`` maps RelatorInstance -> CommutatorProduct for psi(r)
    (a dict or a callable); ``defect_certs`` maps a Stein generator to a
    RelatorProduct for g^-1 psi(g) (dict or callable).
    """
    from .steinberg import psi_apply

    def lookup(m, key, what):
        try:
            v = m(key) if callable(m) else m[key]
        except KeyError:
            v = None
        if v is None:
            raise CertificateError(f"missing {what} for {key}")
        return v

    _require(verify_relator_product(x_ls), "x relator product")
    x = x_ls.target
    if product(w_comm(f, g) for f, g in x_cl) != x:
        raise CertificateError("commutator expression does not reduce to the target")
    if x.is_identity() and not x_ls.factors and not x_cl:
        return CommutatorProduct(EMPTY, (), x_ls.presentation)

    # psi(x) as a product of transported relator certificates
    psi_parts: list = []
    for fac in x_ls.factors:
        cert = lookup(psi_rel_certs, fac.relator, "psi-relator certificate")
        _require(verify_commutator_product(cert), f"psi certificate for {fac.relator}")
        c = cert if fac.sign == 1 else cert.inverse()
        psi_parts.extend(c.conj(psi_apply(fac.conjugator)).factors)

    # defects d(g) = g^-1 psi(g) for arbitrary words, built letter by letter
    cache: dict = {}

    def defect(w: Word) -> RelatorProduct:
        acc: tuple = ()
        prefix = EMPTY
        for l in w.letters:
            d = cache.get(l.gen)
            if d is None:
                d = lookup(defect_certs, l.gen, "defect certificate")
                _require(verify_relator_product(d), f"defect certificate for {l.gen}")
                cache[l.gen] = d
            letter = Word([l], reduced=True)
            if l.sign == 1:
                dl = d.factors
            else:
                # d(x^-1) = x d(x)^-1 x^-1
                dl = conj_factors(w_inv(letter), inv_factors(d.factors))
            acc = conj_factors(w_inv(letter), acc) + dl
            prefix = prefix * letter
        return RelatorProduct(w_inv(w) * psi_apply(w), acc, x_ls.presentation)

    # [psi f, psi g] = xi1 [f, g] xi2; collect all xi to the left
    xis: list = []
    prefix = EMPTY
    for f, g in x_cl:
        df, dg = defect(f), defect(g)
        R, S = df.target, dg.target
        xi1 = CommutatorFactor(w_conj(f, g), df.conj(f), -1)
        xi2 = CommutatorFactor(w_conj(g, f * R), dg.conj(g), 1)
        xis.append(xi1.conj(prefix))
        prefix = prefix * w_comm(f, g)
        xis.append(xi2.conj(prefix))
    # psi(x) = Xi . x  =>  x = Xi^-1 . psi(x)
    inv_xis = [f.inverse() for f in reversed(xis)]
    out = CommutatorProduct(x, tuple(inv_xis) + tuple(psi_parts), x_ls.presentation)
    _require(verify_commutator_product(out), "transported certificate")
    return out


# -- bounds and surfaces ------------------------------------------------------------

@dataclass
class BoundReport:
    l_S_cost: int | None = None
    cl_cost: int | None = None
    cl_R_cost: int | None = None
    t2_bound: int | None = None
    genus_bound: int | None = None
    provenance: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"l_S_cost": self.l_S_cost, "cl_cost": self.cl_cost,
                "cl_R_cost": self.cl_R_cost, "t2_bound": self.t2_bound,
                "genus_bound": self.genus_bound, "provenance": dict(self.provenance)}


def t2_bound(l_S_cost: int, cl_cost: int = 1, provenance: str = "paper-script") -> BoundReport:
    if l_S_cost < 0 or cl_cost < 0:
        raise ValueError("costs are nonnegative")
    b = 5 * l_S_cost + 2 * cl_cost
    return BoundReport(l_S_cost, cl_cost, b, b, b + 1,
                       {"l_S_cost": provenance, "cl_cost": provenance,
                        "t2_bound": provenance, "genus_bound": provenance})


@dataclass
class SurfaceDatum:
    genus: int
    pairs: list
    witnesses: list
    axiom_slots: list = field(default_factory=list)
    axiom_costs: list = field(default_factory=list)

    @property
    def conditional(self) -> bool:
        return bool(self.axiom_slots)

    def check(self) -> bool:
        # an imported slot stands in for ``cost`` pairs it does not spell out
        if self.genus != len(self.pairs) + sum(c - 1 for c in self.axiom_costs):
            return False
        if not product(w_comm(a, b) for a, b in self.pairs).is_identity():
            return False
        for i, w in enumerate(self.witnesses):
            if w is None:
                if i + 1 not in self.axiom_slots:
                    return False
                continue
            if not verify_relator_product(w).ok or w.target != self.pairs[i + 1][1]:
                return False
        return True


def surface_datum(p: CommutatorProduct, lifts: tuple | None = None) -> SurfaceDatum:
    """Genus (cost + 1) system with prod [a_i, b_i] = 1 and b_i in R for i >= 2.

    Inverted commutators are rewritten as [f, r]^-1 = [r f r^-1, r^-1].  An
    imported axiom factor contributes its literal commutator pair, counted at
    its claimed cost, and is listed in ``axiom_slots``.
    """
    g, h = lifts or p.lifts or (None, None)
    if g is None:
        raise CertificateError("surface_datum needs the lifts (g, h)")
    _require(verify_commutator_product(p), "certificate")
    if w_comm(g, h) != p.target:
        raise CertificateError("lifts do not match the certificate target")
    pairs = [(g, h)]
    witnesses: list = []
    slots: list = []
    costs: list = []
    for f in reversed(p.factors):
        if isinstance(f, AxiomFactor):
            a, b = f.word.letters[0], f.word.letters[1]
            A = w_conj(f.conjugator, Word([a], reduced=True))
            B = w_conj(f.conjugator, Word([b], reduced=True))
            # inverse of conj(c, [A0, B0]^sign)
            pairs.append((B, A) if f.sign == 1 else (A, B))
            witnesses.append(None)
            slots.append(len(pairs) - 1)
            costs.append(f.cost)
            continue
        r = f.r_witness
        if f.sign == -1:
            pairs.append((f.f, r.target))
            witnesses.append(r)
        else:
            pairs.append((w_conj(r.target, f.f), w_inv(r.target)))
            witnesses.append(r.inverse())
    return SurfaceDatum(p.cost + 1, pairs, witnesses, slots, costs)


def affine_unit_argument(units: Sequence[int]) -> dict:
    units = list(units)
    if not units:
        raise ValueError("empty unit list")
    if any(abs(u) < 2 for u in units):
        raise ValueError("units must satisfy |u| >= 2")
    g = 0
    for u in units:
        g = math.gcd(g, u * u - 1)
    return {"gcd": g, "overcommutes": g == 1}


# -- entry points living in other modules ---------------------------------------------

def ghys_refined(alpha: int = 1, **kw):
    from .ghys import ghys_refined as run
    return run(alpha, **kw)


def search_commutator_cert(target: Word, presentation: Presentation = STEINBERG, max_cost: int = 2,
                           max_word_len: int = 12, budget: int = 20000, seed: int = 0, **kw):
    from .search import search_commutator_cert as run
    return run(target, presentation, max_cost, max_word_len, budget, seed, **kw)
