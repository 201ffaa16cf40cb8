"""Explicit witnesses for congruences modulo R in the Steinberg presentation.

A ``Congruence`` records ``lhs == rhs (mod R)`` together with a list of
conjugated relators whose product is exactly ``lhs * rhs^-1`` in F.  All
witnesses are built from the two defining schemas R1 and R2 through a small
set of primitive moves:

* merge   x(a) x(b)  -> x(a+b)   (one R1)
* drop    x(0)       -> 1        (one R1)
* flip    x(a)^-1    -> x(-a)    (two R1)
* push    w x w^-1   -> x'       (one R2 plus flips)

On top of these sit the commutator gadgets used by the psi certificates and
the refined Ghys ledger.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .certificates import (STEINBERG, AxiomFactor, CertificateError,
                           CommutatorFactor, CommutatorProduct, RelatorFactor,
                           RelatorProduct, conj_factors, inv_factors,
                           translation_axiom, verify_commutator_product)
from .exactfield import FieldElem, const
from .steinberg import (R1, R2, R3, R4, h_elem, psi_gen, rel, w_elem)
from .words import (EMPTY, Letter, Stein, Word, product, w_comm, w_conj,
                    w_inv, xa)

__all__ = [
    "Congruence", "collect", "letter_flip", "push_through", "push_blocks",
    "central_congruence", "r3_product", "r4_product", "expand_derived",
    "psi_defect", "psi_defect_cert", "in_R", "hall_witt_display_form",
    "comm_with_central", "r3_pair_cert", "psi_r1_cert", "psi_r2_cert",
    "psi_rel_cert", "w_blocks", "h_blocks", "translation_pair_cert",
]


def _fe(x, vars=()) -> FieldElem:
    return x if isinstance(x, FieldElem) else const(x, vars)


def _expand(fs) -> Word:
    return product(f.expand(STEINBERG) for f in fs)


@dataclass(frozen=True)
class Congruence:
    lhs: Word
    rhs: Word
    witness: tuple = ()

    def check(self) -> bool:
        return self.lhs * w_inv(self.rhs) == _expand(self.witness)

    @classmethod
    def refl(cls, w: Word) -> Congruence:
        return cls(w, w, ())

    def sym(self) -> Congruence:
        return Congruence(self.rhs, self.lhs, inv_factors(self.witness))

    def trans(self, other: Congruence) -> Congruence:
        if self.rhs != other.lhs:
            raise CertificateError("congruences do not chain")
        return Congruence(self.lhs, other.rhs, self.witness + other.witness)

    def __mul__(self, other: Congruence) -> Congruence:
        # AC (BD)^-1 = A (C D^-1) A^-1 . A B^-1
        return Congruence(self.lhs * other.lhs, self.rhs * other.rhs,
                          conj_factors(self.lhs, other.witness) + self.witness)

    def inv(self) -> Congruence:
        # A^-1 B = A^-1 (A B^-1)^-1 A
        return Congruence(w_inv(self.lhs), w_inv(self.rhs),
                          conj_factors(w_inv(self.lhs), inv_factors(self.witness)))

    def conj(self, g: Word) -> Congruence:
        return Congruence(w_conj(g, self.lhs), w_conj(g, self.rhs),
                          conj_factors(g, self.witness))

    def in_context(self, left: Word, right: Word) -> Congruence:
        # L A R (L B R)^-1 = L (A B^-1) L^-1
        return Congruence(product((left, self.lhs, right)), product((left, self.rhs, right)),
                          conj_factors(left, self.witness))

    def quotient(self) -> RelatorProduct:
        """The R-element lhs^-1 rhs."""
        A = self.lhs
        fs = conj_factors(w_inv(A), inv_factors(self.witness))
        return RelatorProduct(w_inv(A) * self.rhs, fs)

    def difference(self) -> RelatorProduct:
        """The R-element lhs rhs^-1."""
        return RelatorProduct(self.lhs * w_inv(self.rhs), tuple(self.witness))


def _chain(*cs: Congruence) -> Congruence:
    out = cs[0]
    for c in cs[1:]:
        out = out.trans(c)
    return out


def _product(cs: Sequence[Congruence]) -> Congruence:
    out = Congruence.refl(EMPTY)
    for c in cs:
        out = out * c
    return out


# -- primitive moves ---------------------------------------------------------------

def merge(alpha: int, a: FieldElem, b: FieldElem) -> Congruence:
    """x(a) x(b) == x(a+b); witness R1(b, a)^-1."""
    return Congruence(product((xa(alpha, a), xa(alpha, b))), xa(alpha, a + b),
                      (RelatorFactor(EMPTY, rel(R1, alpha, b, a), -1),))


def drop_zero(alpha: int, vars=()) -> Congruence:
    """x(0) == 1; witness R1(0, 0)^-1 (which reduces to the letter x(0))."""
    z = const(0, vars)
    return Congruence(xa(alpha, z), EMPTY, (RelatorFactor(EMPTY, rel(R1, alpha, z, z), -1),))


def letter_flip(alpha: int, a: FieldElem) -> Congruence:
    """x(a)^-1 == x(-a); witness R1(0,0) R1(a,-a)."""
    z = a - a
    return Congruence(xa(alpha, a, -1), xa(alpha, -a),
                      (RelatorFactor(EMPTY, rel(R1, alpha, z, z), 1),
                       RelatorFactor(EMPTY, rel(R1, alpha, a, -a), 1)))


def flip_word(w: Word) -> Congruence:
    """Replace every inverse letter x(a)^-1 by x(-a)."""
    parts = []
    for l in w.letters:
        lw = Word([l], reduced=True)
        if l.sign == 1:
            parts.append(Congruence.refl(lw))
        else:
            parts.append(letter_flip(l.gen.alpha, l.gen.t))
    return _product(parts)


def collect(w: Word) -> Congruence:
    """w == normal form: positive letters, no two adjacent with the same root,
    no x(0).  Uses R1 only."""
    stack: list[Letter] = []
    witness: tuple = ()

    def stack_word():
        return Word(stack, reduced=True)

    def rewrite(k: int, c: Congruence, new_letters):
        # stack = S . A with |A| = k and A == B by c
        nonlocal witness, stack
        S = Word(stack[:len(stack) - k], reduced=True)
        witness = witness + conj_factors(S, c.witness)
        stack = stack[:len(stack) - k] + list(new_letters)

    for l in w.letters:
        if not isinstance(l.gen, Stein):
            raise CertificateError("collect works on Steinberg letters only")
        stack.append(l)
        if l.sign == -1:
            rewrite(1, letter_flip(l.gen.alpha, l.gen.t),
                    [Letter(Stein(l.gen.alpha, -l.gen.t), 1)])
        while True:
            top = stack[-1] if stack else None
            if top is not None and top.gen.t.is_zero():
                rewrite(1, drop_zero(top.gen.alpha, top.gen.t.vars), [])
                continue
            if len(stack) >= 2 and stack[-2].gen.alpha == stack[-1].gen.alpha:
                a, b = stack[-2].gen.t, stack[-1].gen.t
                al = stack[-1].gen.alpha
                rewrite(2, merge(al, a, b), [Letter(Stein(al, a + b), 1)])
                continue
            break
    out = Congruence(w, stack_word(), witness)
    return out


def in_R(w: Word) -> RelatorProduct:
    """Witness w in R when ``collect`` reduces it to the empty word."""
    c = collect(w)
    if not c.rhs.is_identity():
        raise CertificateError(f"collect leaves {c.rhs}")
    return c.difference()


# -- Weyl conjugation ------------------------------------------------------------------

def w_inverse_flip(alpha: int, e: FieldElem) -> Congruence:
    """w(e)^-1 == w(-e), letterwise flips."""
    return flip_word(w_inv(w_elem(alpha, e)))


def push_through(alpha: int, e: FieldElem, sign: int, beta: int, b: FieldElem) -> Congruence:
    """B x_beta(b) B^-1 == x' where B = w_alpha(e)^sign.

    beta = alpha:  x' = x_{-alpha}(-e^-2 b)
    beta = -alpha: x' = x_alpha(-e^2 b)
    """
    W = w_elem(alpha, e)
    x = xa(beta, b)
    if sign == 1 and beta == alpha:
        # R2(e, b) = W x W^-1 x_-(e^-2 b)
        b2 = b / (e * e)
        c = Congruence(w_conj(W, x), xa(-alpha, b2, -1),
                       (RelatorFactor(EMPTY, rel(R2, alpha, e, b), 1),))
        return c.trans(letter_flip(-alpha, b2))
    if sign == -1 and beta == -alpha:
        # from W x(b') W^-1 == x_-(b) with b' = -e^2 b
        bp = -(e * e * b)
        c = push_through(alpha, e, 1, alpha, bp)        # W x(b') W^-1 == x_-(-e^-2 b') = x_-(b)
        c = Congruence(c.lhs, x, c.witness) if c.rhs == x else None
        if c is None:
            raise CertificateError("internal: push rule mismatch")
        back = c.conj(w_inv(W))                          # x(b') == W^-1 x_-(b) W
        return back.sym()
    # use W^sign == w(-e)^-sign letterwise
    flip = w_inverse_flip(alpha, e) if sign == -1 else w_inverse_flip(alpha, -e)
    # flip: W^-1 == w(-e)  (sign -1)   or   w(-e)^-1 == W (sign +1)
    if sign == -1:
        B_eq = flip                       # W^-1 == w(-e)
    else:
        B_eq = flip.sym()                 # W == w(-e)^-1
    inner = push_through(alpha, -e, -sign, beta, b)
    whole = B_eq * Congruence.refl(x) * B_eq.inv()
    return whole.trans(inner)


def push_blocks(blocks: Sequence[tuple[int, FieldElem, int]], letter: Letter) -> Congruence:
    """C l C^-1 == l' for C = prod w_{alpha_i}(e_i)^{sign_i}, pushing innermost first."""
    if letter.sign == -1:
        pos = Letter(letter.gen, 1)
        return push_blocks(blocks, pos).inv()
    beta, b = letter.gen.alpha, letter.gen.t
    cur = Congruence.refl(Word([letter], reduced=True))
    for alpha, e, sign in reversed(blocks):
        B = w_elem(alpha, e)
        B = B if sign == 1 else w_inv(B)
        lifted = cur.conj(B)
        beta_now = cur.rhs.letters[0].gen.alpha
        b_now = cur.rhs.letters[0].gen.t
        step = push_through(alpha, e, sign, beta_now, b_now)
        cur = lifted.trans(step)
    return cur


def blocks_word(blocks) -> Word:
    return product(w_elem(a, e) if s == 1 else w_inv(w_elem(a, e)) for a, e, s in blocks)


def w_blocks(alpha: int, e, sign: int = 1) -> list:
    return [(alpha, _fe(e), sign)]


def h_blocks(alpha: int, a) -> list:
    a = _fe(a)
    return [(alpha, a, 1), (alpha, const(1, a.vars), -1)]


def central_congruence(blocks, g: Word) -> Congruence:
    """C g C^-1 == g when every letter of g is pushed back to itself."""
    C = blocks_word(blocks)
    parts = []
    for l in g.letters:
        c = push_blocks(blocks, l)
        if c.rhs != Word([l], reduced=True):
            raise CertificateError(f"block product does not centralise {l.serialize()}")
        parts.append(c)
    out = _product(parts)
    if out.lhs != w_conj(C, g):
        raise CertificateError("internal: central congruence lhs mismatch")
    return out


# -- derived schemas over {R1, R2} --------------------------------------------------------

def r3_product(u, t, alpha: int = 1) -> RelatorProduct:
    """R3(u,t) = R2(u,t) . y^-1 (w(u) w(-u)) y with y = x_-(u^-2 t); w(u)w(-u) via R1."""
    u, t = _fe(u), _fe(t)
    if u.vars != t.vars:
        u, t = (const(u, t.vars), t) if u.is_constant() else (u, const(t, u.vars))
    y = xa(-alpha, t / (u * u))
    ww = in_R(w_elem(alpha, u) * w_elem(alpha, -u))
    fs = (RelatorFactor(EMPTY, rel(R2, alpha, u, t), 1),) + conj_factors(w_inv(y), ww.factors)
    from .steinberg import expand_relator
    return RelatorProduct(expand_relator(rel(R3, alpha, u, t)), fs)


def r4_product(u, v, alpha: int = 1) -> RelatorProduct:
    u, v = _fe(u), _fe(v)
    from .steinberg import expand_relator
    g = xa(alpha, -(u * v))
    return RelatorProduct(expand_relator(rel(R4, alpha, u, v)),
                          (RelatorFactor(g, rel(R1, -alpha, u.inverse(), v.inverse()), 1),))


def expand_derived(p: RelatorProduct) -> RelatorProduct:
    """Replace R3/R4 factors by their witnesses over R1, R2."""
    out: tuple = ()
    for f in p.factors:
        r = f.relator
        if getattr(r, "schema", None) == R3:
            sub = r3_product(*r.params, alpha=r.alpha)
        elif getattr(r, "schema", None) == R4:
            sub = r4_product(*r.params, alpha=r.alpha)
        else:
            out += (f,)
            continue
        fs = sub.factors if f.sign == 1 else inv_factors(sub.factors)
        out += conj_factors(f.conjugator, fs)
    return RelatorProduct(p.target, out, p.presentation)


# -- psi defects ------------------------------------------------------------------------

def psi_defect(alpha: int, t: FieldElem, a=2) -> Congruence:
    """psi(x(t)) = [h(a), x(t')] == x(t)."""
    a = const(a, t.vars)
    tp = t / (a * a - 1)
    y = Letter(Stein(alpha, tp), 1)
    hx = push_blocks(h_blocks(alpha, a), y)          # h y h^-1 == x(a^2 t')
    c = hx * letter_flip(alpha, tp)                  # ... y^-1 == x(a^2 t') x(-t')
    c = c.trans(merge(alpha, a * a * tp, -tp))
    if c.rhs != xa(alpha, t):
        raise CertificateError("internal: psi defect mismatch")
    return c


def psi_defect_cert(gen: Stein, a=2) -> RelatorProduct:
    """RelatorProduct for g^-1 psi(g)."""
    c = psi_defect(gen.alpha, gen.t, a)              # psi(g) g^-1 = witness
    g = Word.gen(gen)
    return RelatorProduct(w_inv(g) * c.lhs, conj_factors(w_inv(g), c.witness))


def psi_word_congruence(w: Word, a=2) -> Congruence:
    """psi(w) == w letterwise."""
    parts = []
    for l in w.letters:
        c = psi_defect(l.gen.alpha, l.gen.t, a)
        parts.append(c if l.sign == 1 else c.inv())
    return _product(parts)


# -- commutator gadgets -----------------------------------------------------------------

class Builder:
    """Accumulates commutator factors f_1 ... f_k with target = f_1...f_k . rest."""

    def __init__(self, target: Word):
        self.target = target
        self.factors: list = []
        self.rest = target
        self.labels: list[tuple[str, int, str]] = []

    def emit(self, factor, label: str = "", expect: Word | None = None):
        self.factors.append(factor)
        self.rest = w_inv(factor.expand()) * self.rest
        kind = "axiom" if isinstance(factor, AxiomFactor) else "realized"
        self.labels.append((label, factor.cost, kind))
        if expect is not None and self.rest != expect:
            raise CertificateError(f"builder step {label!r}: unexpected remainder")

    def emit_product(self, p: CommutatorProduct, label: str = "", expect: Word | None = None):
        for f in p.factors:
            self.emit(f, label)
        if expect is not None and self.rest != expect:
            raise CertificateError(f"builder step {label!r}: unexpected remainder")

    def finish(self, lifts=None) -> CommutatorProduct:
        if not self.rest.is_identity():
            raise CertificateError(f"builder left remainder {self.rest}")
        return CommutatorProduct(self.target, tuple(self.factors), STEINBERG, lifts)


def hall_witt_display_form(x: Word, y: Word, c: Word) -> Word:
    """The displayed Hall-Witt product, read with [a, b] = a^-1 b^-1 a b.

    With that convention it reduces to the empty word for all x, y, c.
    """
    def C(a, b):
        return product((w_inv(a), w_inv(b), a, b))
    return product((C(C(x, y), product((w_inv(x), c, x))),
                    C(C(c, x), product((w_inv(c), y, c))),
                    C(C(y, c), product((w_inv(y), x, y)))))


def hall_witt_ours(X: Word, Y: Word, Z: Word) -> Word:
    """The same identity in the [a, b] = a b a^-1 b^-1 convention:
    [[X,Y]^-1, X Z X^-1] [[Z,X]^-1, Z Y Z^-1] [[Y,Z]^-1, Y X Y^-1] = 1."""
    return product((w_comm(w_inv(w_comm(X, Y)), w_conj(X, Z)),
                    w_comm(w_inv(w_comm(Z, X)), w_conj(Z, Y)),
                    w_comm(w_inv(w_comm(Y, Z)), w_conj(Y, X))))


def comm_with_central(P: Word, Q: Word, c: Word, cong: Callable[[Word], Congruence],
                      mode: str = "direct") -> CommutatorProduct:
    """Certificate for [[P, Q], c] when c centralises P and Q modulo R.

    ``cong(g)`` must return c g c^-1 == g.  The ``literal`` mode follows the
    Hall-Witt route (three commutators); ``direct`` conjugates the commutator
    and uses the lift identity (two commutators).
    """
    a = w_comm(P, Q)
    target = w_comm(a, c)
    b = Builder(target)
    cP, cQ = cong(P), cong(Q)
    if mode == "direct":
        # c P c^-1 = P r,  c Q c^-1 = Q s
        r = RelatorProduct(w_inv(P) * w_conj(c, P), conj_factors(w_inv(P), cP.witness))
        r = _retarget(r, w_inv(P) * cP.lhs)
        s = _retarget(RelatorProduct(EMPTY, conj_factors(w_inv(Q), cQ.witness)),
                      w_inv(Q) * cQ.lhs)
        # c a c^-1 = xi1 a xi2  with xi1 = [P r P^-1, P Q P^-1], xi2 = [Q P r Q^-1, Q s Q^-1]
        xi1 = CommutatorFactor(w_conj(P, Q), r.conj(P), -1)
        xi2 = CommutatorFactor(w_conj(Q, P * r.target), s.conj(Q), 1)
        # [a, c] = a xi2^-1 a^-1 xi1^-1
        b.emit(xi2.inverse().conj(a), "central: conjugated lift")
        b.emit(xi1.inverse(), "central: lift")
        return b.finish()
    if mode != "literal":
        raise ValueError("mode must be 'direct' or 'literal'")
    # [[Q,P]^-1, Q c Q^-1] [[c,Q]^-1, c P c^-1] [[P,c]^-1, P Q P^-1] = 1, and
    # [Q,P]^-1 = a;  Q c Q^-1 = c rho1 with rho1 = c^-1 Q c Q^-1
    wP = RelatorProduct(cP.lhs * w_inv(P), tuple(cP.witness))      # [c, P]
    wQ = RelatorProduct(cQ.lhs * w_inv(Q), tuple(cQ.witness))      # [c, Q]
    rho1 = wQ.inverse().conj(w_inv(c))                             # c^-1 [Q, c] c = c^-1 Q c Q^-1
    # xi_c^-1 = [P Q P^-1, [c, P]]
    b.emit(CommutatorFactor(w_conj(P, Q), wP, 1), "Hall-Witt term 3")
    # xi_b^-1 = [c P c^-1, [Q, c]]
    b.emit(CommutatorFactor(w_conj(c, P), wQ.inverse(), 1), "Hall-Witt term 2")
    # (c [a, rho1] c^-1)^-1
    b.emit(CommutatorFactor(a, rho1, 1).conj(c).inverse(), "Hall-Witt term 1 (lift)")
    return b.finish()


def _retarget(p: RelatorProduct, target: Word) -> RelatorProduct:
    return RelatorProduct(target, p.factors, p.presentation)


def _const_like(x, ref: FieldElem) -> FieldElem:
    return const(x, ref.vars)


def r3_pair_cert(s, t, alpha: int = 1, a=2, mode: str = "literal") -> CommutatorProduct:
    """Certificate for R3(s,t) R3(-s,t)^-1.

    With W = w(s), W' = w(-s):  R3(s,t) R3(-s,t)^-1 = W [x(t), W' W^-1] [W', W^-1] W^-1,
    [W', W^-1] = [rho, W^-1] with rho = W' W in R, and x(t) = [h, y] sigma
    reduces [x(t), c] to one commutator plus [[h, y], c].
    """
    from .steinberg import expand_relator
    s, t = _fe(s), _fe(t)
    if s.vars != t.vars:
        s, t = (const(s, t.vars), t) if s.is_constant() else (s, const(t, s.vars))
    target = expand_relator(rel(R3, alpha, s, t)) * w_inv(expand_relator(rel(R3, alpha, -s, t)))
    W, Wp = w_elem(alpha, s), w_elem(alpha, -s)
    c = Wp * w_inv(W)
    x = xa(alpha, t)
    blocks = [(alpha, -s, 1), (alpha, s, -1)]
    cong = lambda g: central_congruence(blocks, g)
    aa = const(a, t.vars)
    tp = t / (aa * aa - 1)
    h, y = h_elem(alpha, aa), xa(alpha, tp)
    hy = w_comm(h, y)
    defect = psi_defect(alpha, t, a)                 # [h, y] == x(t)
    sigma = defect.quotient()                        # [h, y]^-1 x(t)
    rho = in_R(Wp * W)

    b = Builder(target)
    inner = Builder(w_comm(x, c) * w_comm(Wp, w_inv(W)))
    # [x, c] = [[h,y] sigma, c] = [h,y] [sigma, c] [h,y]^-1 . [[h,y], c]
    inner.emit(CommutatorFactor(c, sigma, -1).conj(hy), "r3 pair: translation defect")
    inner.emit_product(comm_with_central(h, y, c, cong, mode), f"r3 pair: central ({mode})")
    # [W', W^-1] = [rho W^-1, W^-1] = [rho, W^-1] = [W^-1, rho]^-1
    inner.emit(CommutatorFactor(w_inv(W), rho, -1), "r3 pair: w(-s) vs w(s)^-1")
    core = inner.finish()
    b.emit_product(core.conj(W), "r3 pair")
    return b.finish()


def translation_pair_cert(s, t, alpha: int = 1, conjugator: Word = EMPTY,
                          provider=None) -> CommutatorProduct | None:
    """Certificate for conj(g, [x(s), x(t)]) = conj(g, R1(t,s)^-1 R1(s,t)).

    Without a provider the cost-two fact is imported as an axiom factor.
    With one, ``provider(s, t, alpha)`` must return a CommutatorProduct for
    [x(s), x(t)]; a None answer is passed on, never replaced by the axiom.
    """
    s, t = _fe(s), _fe(t)
    target = w_conj(conjugator, w_comm(xa(alpha, s), xa(alpha, t)))
    if target.is_identity():             # s == t: nothing to import
        return CommutatorProduct(target, ())
    if provider is not None:
        p = provider(s, t, alpha)
        return None if p is None else p.conj(conjugator)
    f = translation_axiom(s, t, alpha, conjugator)
    return CommutatorProduct(target, (f,))


# -- psi of the defining relators ------------------------------------------------------------

def psi_r1_cert(s, t, alpha: int = 1, a=2, provider=None) -> CommutatorProduct:
    """psi(R1(s,t)) = xi [[h,x(s')] x(s'), [h,x(t')]] = xi^3 [x(a^2 s'), x(t)], then xi^2."""
    from .steinberg import expand_relator, psi_apply
    s, t = _fe(s), _fe(t)
    if s.vars != t.vars:
        s, t = (const(s, t.vars), t) if s.is_constant() else (s, const(t, s.vars))
    aa = const(a, s.vars)
    d = aa * aa - 1
    sp, tp = s / d, t / d
    h = h_elem(alpha, aa)
    target = psi_apply(expand_relator(rel(R1, alpha, s, t)), a)
    b = Builder(target)
    A = xa(alpha, sp) * xa(alpha, tp)
    # x(s'+t') = A rho,  rho = x(t')^-1 x(s')^-1 x(s'+t') = conj(x(s'+t')^-1, R1(t', s'))
    rho = RelatorProduct(w_inv(A) * xa(alpha, sp + tp),
                         (RelatorFactor(xa(alpha, sp + tp, -1), rel(R1, alpha, tp, sp), 1),))
    hA = w_comm(h, A)
    # [h, A rho] = [h, A] . A [h, rho] A^-1 ;  move the second factor left past [h, A]
    b.emit(CommutatorFactor(h, rho, 1).conj(hA * A), "psi R1: additivity")
    X, Y = w_conj(h, xa(alpha, sp)), w_comm(h, xa(alpha, tp))
    # now [X, Y] with X = [h,x(s')] x(s') = h x(s') h^-1
    if b.rest != w_comm(X, Y):
        raise CertificateError("internal: psi R1 middle form")
    cx = push_blocks(h_blocks(alpha, aa), Letter(Stein(alpha, sp), 1))   # X == x(a^2 s')
    X0 = cx.rhs
    # X = X0 sigma1 with sigma1 = X0^-1 X ; Y = Y0 sigma2 with Y0 = x(t)
    sigma1 = Congruence(X0, X, inv_factors(cx.witness)).quotient()
    cy = psi_defect(alpha, t, a)                                          # Y == x(t)
    Y0 = cy.rhs
    sigma2 = Congruence(Y0, Y, inv_factors(cy.witness)).quotient()
    # [X0 s1, Y0 s2] = [X0 s1 X0^-1, X0 Y0 X0^-1] [X0, Y0] [Y0 X0 s1 Y0^-1, Y0 s2 Y0^-1]
    S1 = sigma1.target
    xi1 = CommutatorFactor(w_conj(X0, Y0), sigma1.conj(X0), -1)
    xi3 = CommutatorFactor(w_conj(Y0, X0 * S1), sigma2.conj(Y0), 1)
    b.emit(xi1, "psi R1: lift (left)")
    core = w_comm(X0, Y0)
    b.emit(xi3.conj(core), "psi R1: lift (right)")
    tc = translation_pair_cert(X0.letters[0].gen.t, t, alpha, EMPTY, provider)
    if tc is None:
        raise CertificateError("no certificate for the translation commutator")
    b.emit_product(tc, "psi R1: translations")
    return b.finish()


def psi_r2_cert(u, t, alpha: int = 1, a=2, mode: str = "direct") -> CommutatorProduct:
    """psi(R2(u,t)) = [h c, X r] [h, x]   (h = h_{-alpha}(a), x = x_-(u^-2 t'), X = x_-(-u^-2 t')).

    [h c, X r] = h [c, X r] h^-1 . [h, X r];  X r = [h, y] sigma;
    [h, X r] [h, x] = xi [h, x^-1][h, x] = xi [x^-1, [h,x]^-1] = xi xi.
    """
    from .steinberg import expand_relator, psi_apply
    u, t = _fe(u), _fe(t)
    if u.vars != t.vars:
        u, t = (const(u, t.vars), t) if u.is_constant() else (u, const(t, u.vars))
    aa = const(a, u.vars)
    d = aa * aa - 1
    tp = t / d
    target = psi_apply(expand_relator(rel(R2, alpha, u, t)), a)
    Psi = psi_apply(w_elem(alpha, u), a)
    ha = h_elem(alpha, aa)
    h = h_elem(-alpha, aa)
    bneg = tp / (u * u)
    x = xa(-alpha, bneg)
    X = xa(-alpha, -bneg)
    # c = h^-1 Psi h_alpha Psi^-1, central modulo R; compare with c0 built from w-blocks
    c = product((w_inv(h), Psi, ha, w_inv(Psi)))
    psi_w = psi_word_congruence(w_elem(alpha, u), a)               # Psi == w(u)
    c_eq = (Congruence.refl(w_inv(h)) * psi_w * Congruence.refl(ha) * psi_w.inv())  # c == c0
    blocks0 = [(-alpha, const(1, u.vars), 1), (-alpha, aa, -1),
               (alpha, u, 1), (alpha, aa, 1), (alpha, const(1, u.vars), -1), (alpha, u, -1)]
    if c_eq.rhs != blocks_word(blocks0):
        raise CertificateError("internal: c0 block form")

    def cong(g: Word) -> Congruence:
        # c g c^-1 == c0 g c0^-1 == g
        lift = c_eq * Congruence.refl(g) * c_eq.inv()
        return lift.trans(central_congruence(blocks0, g))

    # Psi x(t') Psi^-1 = X r
    px = (psi_w * Congruence.refl(xa(alpha, tp)) * psi_w.inv()).trans(
        push_blocks([(alpha, u, 1)], Letter(Stein(alpha, tp), 1)))
    if px.rhs != X:
        raise CertificateError("internal: Weyl push of x(t')")
    r = px.sym().quotient()              # X^-1 Psi x Psi^-1
    Xr = w_conj(Psi, xa(alpha, tp))
    # Eq. (1) for the root -alpha: [h, y] == X with y = x_-(-u^-2 t'/(a^2-1))
    yv = -bneg / d
    y = xa(-alpha, yv)
    hy_eq = psi_defect(-alpha, -bneg, a)                            # [h, y] == X
    hy = hy_eq.lhs
    # Xr = hy sigma
    sigma_eq = hy_eq.trans(px.sym())                                # [h,y] == Xr
    sigma = sigma_eq.quotient()                                     # [h,y]^-1 Xr

    b = Builder(target)
    if b.rest != w_comm(h * c, Xr) * w_comm(h, x):
        raise CertificateError("internal: psi R2 outer form")
    # [h c, Xr] = h [c, Xr] h^-1 [h, Xr]
    # [c, Xr] = [c, hy sigma] = [c, hy] . hy [c, sigma] hy^-1
    cen = comm_with_central(h, y, c, cong, mode)                    # [[h,y], c]
    b.emit_product(cen.inverse().conj(h), f"psi R2: central ({mode})")
    b.emit(CommutatorFactor(c, sigma, 1).conj(h * hy), "psi R2: Eq.(1) defect")
    # [h, Xr] = [h, x^-1 rho'] with rho' = x X r ;  = [h, x^-1] . x^-1 [h, rho'] x
    flip = letter_flip(-alpha, bneg)                                # x^-1 == X
    rho_p = flip.trans(px.sym()).quotient()                         # x Xr
    hx_inv = w_comm(h, w_inv(x))
    b.emit(CommutatorFactor(h, rho_p, 1).conj(hx_inv * w_inv(x)), "psi R2: sign of x")
    # [h, x^-1][h, x] = [x^-1, [h,x]^-1],  [h,x]^-1 = x^-3 rho''
    if b.rest != w_comm(w_inv(x), w_inv(w_comm(h, x))):
        raise CertificateError("internal: psi R2 final form")
    hx = psi_defect(-alpha, bneg * d, a)                            # [h, x] == x_-(d b)
    m = None
    if d.is_constant():
        dv = d.constant_value()
        if not dv.irr and dv.rat.denominator == 1 and dv.rat > 0:
            m = int(dv.rat)
    if m is None:
        raise CertificateError("psi R2 needs a^2 - 1 to be a positive integer")
    # [h,x]^-1 == x_-(d b)^-1 == x_-(-d b) == x^-m via R1 merges
    pow_eq = collect(w_inv(x) ** m).sym()
    chain = hx.inv().trans(letter_flip(-alpha, bneg * d)).trans(pow_eq)
    rho2 = chain.sym().quotient()                                   # x^m [h,x]^-1
    # [x^-1, x^-m rho2] = [x^-1, x^-m] x^-m [x^-1, rho2] x^m
    b.emit(CommutatorFactor(w_inv(x), rho2, 1).conj(w_inv(x) ** m), "psi R2: final")
    return b.finish()


def psi_rel_cert(inst, a=2, provider=None, mode: str = "direct") -> CommutatorProduct:
    """psi-certificate for a defining relator (R1, R2) or an R4 instance."""
    from .steinberg import psi_apply
    if inst.schema == R1:
        return psi_r1_cert(*inst.params, alpha=inst.alpha, a=a, provider=provider)
    if inst.schema == R2:
        return psi_r2_cert(*inst.params, alpha=inst.alpha, a=a, mode=mode)
    if inst.schema == R4:
        u, v = inst.params
        inner = psi_r1_cert(u.inverse(), v.inverse(), -inst.alpha, a, provider)
        return inner.conj(psi_apply(xa(inst.alpha, -(u * v)), a))
    raise CertificateError(f"no psi certificate for schema {inst.schema}")
