"""Bounded, deterministic search for commutator certificates.

A single factor is found exactly: ``T = [f, r]`` holds iff ``f r f^-1 = T r``,
which is a conjugacy problem in F, solved by cyclic reduction.  Longer
certificates peel one candidate factor ``[f, r]^+-1`` off the front and
recurse.  Candidates for r are single conjugated relators whose parameters
come from the target; candidates for f are subwords of the target.

The search is breadth-first on cost, then by word length, then by
serialization.  Finding nothing proves nothing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .certificates import (STEINBERG, CertificateError, CommutatorFactor,
                           CommutatorProduct, Presentation, RelatorFactor,
                           RelatorProduct, abelianization, verify_commutator_product)
from .exactfield import FieldElem, const
from .steinberg import R1, R2, rel
from .words import EMPTY, Stein, Word, product, w_comm, w_conj, w_inv

__all__ = ["SearchResult", "search_commutator_cert", "cyclic_reduce", "find_conjugator"]


@dataclass
class SearchResult:
    certificate: CommutatorProduct | None
    explored: int
    exhausted: bool
    message: str = ""
    candidates: dict = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.certificate is not None

    def to_json(self) -> dict:
        c = self.certificate
        return {"found": self.found, "cost": None if c is None else c.cost,
                "explored": self.explored, "budget_exhausted": self.exhausted,
                "message": self.message, "candidates": dict(self.candidates)}


# -- conjugacy in F ---------------------------------------------------------------

def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """(p, c) with w = p c p^-1 and c cyclically reduced."""
    ls = w.letters
    i, j = 0, len(ls) - 1
    while i < j and ls[i].cancels(ls[j]):
        i += 1
        j -= 1
    return Word(ls[:i], reduced=True), Word(ls[i:j + 1], reduced=True)


def find_conjugator(x: Word, y: Word) -> Word | None:
    """Some f with f x f^-1 = y, or None if x and y are not conjugate."""
    p, cx = cyclic_reduce(x)
    q, cy = cyclic_reduce(y)
    if len(cx) != len(cy):
        return None
    if not cx.letters:
        return q * w_inv(p)
    n = len(cx)
    for k in range(n):
        rot = cx.letters[k:] + cx.letters[:k]
        if all(a.sign == b.sign and a.gen == b.gen for a, b in zip(rot, cy.letters)):
            A = Word(cx.letters[:k], reduced=True)
            f = product((q, w_inv(A), w_inv(p)))
            return f
    return None


# -- candidates ----------------------------------------------------------------

def _subwords(w: Word, max_len: int) -> list[Word]:
    seen: dict = {}
    ls = w.letters
    for i in range(len(ls) + 1):
        for j in range(i, min(len(ls), i + max_len) + 1):
            s = Word(ls[i:j], reduced=True)
            for cand in (s, w_inv(s)):
                seen.setdefault(cand, cand)
    out = list(seen)
    out.sort(key=lambda x: (len(x), x.serialize()))
    return out


def _param_pool(target: Word) -> list[FieldElem]:
    base: list[FieldElem] = []
    for l in target.letters:
        if isinstance(l.gen, Stein) and not any(l.gen.t.equals(b) for b in base):
            base.append(l.gen.t)
    pool: list[FieldElem] = []

    def add(x):
        if not any(x.equals(p) for p in pool):
            pool.append(x)

    vars_ = base[0].vars if base else ()
    add(const(0, vars_))
    for b in base:
        add(b)
        add(-b)
    for i, b in enumerate(base):
        for c in base[i + 1:]:
            add(b + c)
            add(b - c)
            add(c - b)
    return pool


def _relator_candidates(target: Word, pres: Presentation, conjugators: list[Word],
                        max_word_len: int) -> list[RelatorProduct]:
    insts: list = []
    if pres.steinberg:
        pool = _param_pool(target)
        alphas = sorted({l.gen.alpha for l in target.letters if isinstance(l.gen, Stein)}) or [1]
        units = [p for p in pool if not p.is_zero()]
        for a in alphas:
            for s in pool:
                for t in pool:
                    insts.append(rel(R1, a, s, t))
            for e in units[:4]:
                for t in pool[:4]:
                    insts.append(rel(R2, a, e, t))
    else:
        insts = [k for k, _ in pres.relators]
    out = []
    for inst in insts:
        for g in conjugators:
            for sign in (1, -1):
                rp = RelatorProduct.of([RelatorFactor(g, inst, sign)], pres)
                if rp.target and len(rp.target) <= 4 * max_word_len:
                    out.append(rp)
    uniq: dict = {}
    for rp in out:
        uniq.setdefault(rp.target, rp)
    res = list(uniq.values())
    res.sort(key=lambda r: (len(r.target), r.target.serialize()))
    return res


# -- search ------------------------------------------------------------------------

class _Budget(Exception):
    pass


def search_commutator_cert(target: Word, presentation: Presentation = STEINBERG,
                           max_cost: int = 2, max_word_len: int = 12, budget: int = 20000,
                           seed: int = 0, max_candidates: int = 400) -> SearchResult:
    """Look for a CommutatorProduct of cost <= max_cost for ``target``.

    Raises CertificateError when the target is not in [F, F].
    """
    if abelianization(target):
        raise CertificateError("target is not in [F, F] (nonzero abelianization)")
    if target.is_identity():
        return SearchResult(CommutatorProduct(EMPTY, (), presentation), 0, False, "trivial target")

    conjs = _subwords(target, min(max_word_len, 6))
    rcands = _relator_candidates(target, presentation, conjs, max_word_len)
    if len(rcands) > max_candidates:
        # keep the shortest half, sample the rest reproducibly
        head = rcands[:max_candidates // 2]
        rng = random.Random(seed)
        tail = rng.sample(rcands[max_candidates // 2:], max_candidates - len(head))
        tail.sort(key=lambda r: (len(r.target), r.target.serialize()))
        rcands = head + tail
    fcands = [f for f in conjs if f][:max(8, max_word_len)]
    counter = [0]

    def tick():
        counter[0] += 1
        if counter[0] > budget:
            raise _Budget()

    def one(T: Word) -> CommutatorFactor | None:
        for r in rcands:
            tick()
            R = r.target
            f = find_conjugator(R, T * R)              # T = [f, R]
            if f is not None:
                return CommutatorFactor(f, r, 1)
            tick()
            f = find_conjugator(w_inv(R), w_inv(R) * T)  # T = [f, R]^-1
            if f is not None:
                return CommutatorFactor(f, r, -1)
        return None

    def rec(T: Word, k: int) -> list | None:
        if T.is_identity():
            return []
        if k == 0:
            return None
        hit = one(T)
        if hit is not None:
            return [hit]
        if k == 1:
            return None
        for r in rcands:
            for f in fcands:
                for sign in (1, -1):
                    tick()
                    c = CommutatorFactor(f, r, sign)
                    rest = w_inv(c.expand()) * T
                    if len(rest) > len(T) + 2 * max_word_len:
                        continue
                    sub = rec(rest, k - 1)
                    if sub is not None:
                        return [c] + sub
        return None

    exhausted = False
    found = None
    try:
        for k in range(1, max_cost + 1):       # breadth-first on cost
            found = rec(target, k)
            if found is not None:
                break
    except _Budget:
        exhausted = True
    info = {"relator_candidates": len(rcands), "conjugator_candidates": len(fcands)}
    if found is None:
        msg = "budget exhausted" if exhausted else f"no certificate of cost <= {max_cost}"
        return SearchResult(None, min(counter[0], budget), exhausted, msg, info)
    cert = CommutatorProduct(target, tuple(found), presentation)
    if not verify_commutator_product(cert).ok:
        raise CertificateError("internal: search produced a non-verifying certificate")
    return SearchResult(cert, counter[0], False, f"found cost {cert.cost}", info)


def translation_provider(max_cost: int = 4, budget: int = 20000, seed: int = 0):
    """Provider for translation commutators backed by the search."""
    from .words import xa

    def provide(s, t, alpha):
        T = w_comm(xa(alpha, s), xa(alpha, t))
        res = search_commutator_cert(T, STEINBERG, max_cost, 12, budget, seed)
        return res.certificate

    return provide
