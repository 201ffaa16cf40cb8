"""Acceptance suite: one pass/fail line per criterion, with its time limit.

Run with ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or directly with ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from math import gcd

import pytest

from overcommute import certio
from overcommute.alexander import (LaurentMat, LaurentPoly, alexander_polynomial,
                                   genus2_obstruction, ocmt_check, parse_laurent,
                                   smith_normal_form, stevedore, submodule_membership)
from overcommute.certificates import (AxiomFactor, CommutatorFactor, CommutatorProduct,
                                      RelatorFactor, RelatorProduct, affine_unit_argument,
                                      compose_products, fold_pairs, lift_adjust,
                                      psi_transport, surface_datum, t2_bound,
                                      verify_commutator_product, verify_relator_product)
from overcommute.cli import main as cli_main
from overcommute.derivations import psi_defect_cert, psi_r2_cert, psi_rel_cert, r3_pair_cert
from overcommute.exactfield import const
from overcommute.ghys import ghys_refined
from overcommute.steinberg import (R1, SCHEMAS, expand_relator, pi_eval, prop53_checks,
                                   prop53_item4, random_param, rel, verify_ghys)
from overcommute.torus import torus_knot, torus_presentation
from overcommute.words import EMPTY, Letter, Named, Stein, Word, named, w_comm, w_inv, xa

LINES: list[str] = []


@contextmanager
def criterion(n: int, title: str, limit: float | None = None):
    """Time the body; the body stores its verdict and detail in the yielded dict."""
    box = {"ok": False, "detail": ""}
    t0 = time.perf_counter()
    try:
        yield box
    finally:
        dt = time.perf_counter() - t0
        in_time = limit is None or dt < limit
        ok = bool(box["ok"]) and in_time
        lim = f" (limit {limit:g} s)" if limit is not None else ""
        line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}: {box['detail']}  [{dt:.2f} s{lim}]"
        LINES.append(line)
        print(line)
    assert box["ok"], line
    assert in_time, line


# -- 1 ---------------------------------------------------------------------------

def test_c01_relator_soundness():
    with criterion(1, "relator soundness", 10) as box:
        rng = random.Random(1)
        bad = n = 0
        for _ in range(200):
            for schema in SCHEMAS:
                p = random_param(rng, ("u",), unit=True)
                q = random_param(rng, ("u",), unit=(schema == "R4"))
                alpha = rng.choice((1, -1))
                n += 1
                bad += not pi_eval(expand_relator(rel(schema, alpha, p, q))).is_identity()
        box["ok"] = bad == 0
        box["detail"] = f"{n} instances, {bad} failures"


# -- 2 ---------------------------------------------------------------------------

def test_c02_prop53_suite():
    with criterion(2, "SL2 identities of the Steinberg calculus", 10) as box:
        rng = random.Random(2)
        bad = 0
        item4: set = set()
        for i in range(100):
            u = random_param(rng, ("u",), unit=True)
            v = random_param(rng, ("u",), unit=True)
            x = random_param(rng, ("u",))
            alpha = (1, -1)[i % 2]
            bad += not all(prop53_checks(alpha, u, v, x).values())
            got = prop53_item4(alpha, u, v)
            item4 = set(got) if i == 0 else item4 & set(got)
        box["ok"] = bad == 0 and "w_alpha(-u^2 v)" in item4
        box["detail"] = (f"100 draws, {bad} failures; item 4 resolved to "
                         f"{sorted(item4)} on every draw")


# -- 3 ---------------------------------------------------------------------------

def test_c03_ghys_coarse():
    with criterion(3, "Ghys coarse bound", 60) as box:
        reps = [verify_ghys(a) for a in (1, -1)]
        b = t2_bound(reps[0].relator_count, 1)
        box["ok"] = (all(r.pi_equal and r.relator_count == 12 for r in reps)
                     and b.t2_bound == 62)
        box["detail"] = (f"pi_equal={[r.pi_equal for r in reps]}, "
                         f"free_equal={[r.free_equal for r in reps]}, relators=12, "
                         f"bound {b.t2_bound}")


# -- 4 ---------------------------------------------------------------------------

def test_c04_ghys_refined():
    with criterion(4, "Ghys refined certificate", 120) as box:
        out = []
        for a in (1, -1):
            r = ghys_refined(a)
            c = r.certificate
            realized_ok = all(verify_relator_product(f.r_witness).ok
                              for f in c.factors if isinstance(f, CommutatorFactor))
            flagged = all(f.provenance.startswith("imported")
                          for f in c.factors if isinstance(f, AxiomFactor))
            out.append((verify_commutator_product(c).ok and realized_ok and flagged
                        and c.cost == 25 and r.tokens_before_fold == 24
                        and r.cert_report.genus_bound == 26, c))
        c = out[0][1]
        box["ok"] = all(ok for ok, _ in out)
        box["detail"] = (f"cost {c.cost} = {c.realized_cost} realized + {c.axiom_cost} "
                         f"imported, 24 tokens before the fold, genus 26, alpha = +1 and -1")


# -- 5 ---------------------------------------------------------------------------

def test_c05_torus_knots():
    with criterion(5, "torus knots (2,3), (3,5)", 1) as box:
        parts = []
        ok = True
        for p, q in ((2, 3), (3, 5)):
            tk = torus_knot(p, q)
            folded = fold_pairs(tk.relator_product)
            ok &= (verify_relator_product(tk.relator_product).ok
                   and tk.relator_product.cost == 2
                   and verify_commutator_product(folded).ok and folded.cost == 1
                   and tk.datum.genus == 2 and tk.datum.check())
            parts.append(f"({p},{q}): l_S 2, cl_R {folded.cost}, genus {tk.datum.genus}")
        box["ok"] = ok
        box["detail"] = "; ".join(parts)


# -- 6 ---------------------------------------------------------------------------

def translation_product(s, t, alpha=1) -> RelatorProduct:
    return RelatorProduct(w_comm(xa(alpha, s), xa(alpha, t)),
                          (RelatorFactor(EMPTY, rel(R1, alpha, t, s), -1),
                           RelatorFactor(EMPTY, rel(R1, alpha, s, t), 1)))


def test_c06_translation_commutators():
    with criterion(6, "translation commutators", 5) as box:
        rng = random.Random(6)
        bad = 0
        for _ in range(50):
            s, t = random_param(rng, ()), random_param(rng, ())
            alpha = rng.choice((1, -1))
            rp = translation_product(s, t, alpha)
            res = verify_relator_product(rp)
            bad += not (res.ok and res.cost == 2)
        box["ok"] = bad == 0
        box["detail"] = f"50 pairs, {bad} failures, cost 2 each"


# -- 7 ---------------------------------------------------------------------------

def _pool(rng: random.Random) -> list:
    pool: list = []
    for p, q in ((2, 3), (3, 5), (2, 5)):
        tk = torus_knot(p, q)
        pool += [tk.relator_product, tk.commutator_product]
    for _ in range(4):
        s, t = random_param(rng, ()), random_param(rng, ())
        pool.append(translation_product(s, t))
    pool.append(psi_r2_cert(const(3), const(5)))
    pool.append(r3_pair_cert(const(3), const(9)))
    pool.append(psi_rel_cert(rel(R1, 1, const(2), const(7)), 2))
    return pool


def _rand_letter(rng: random.Random, cert) -> Word:
    if isinstance(cert, (RelatorProduct, CommutatorProduct)) and cert.presentation.name.startswith("torus"):
        return named(rng.choice("ab"), rng.choice((1, -1)))
    return xa(rng.choice((1, -1)), const(rng.randint(1, 9)), rng.choice((1, -1)))


def _bump(inst):
    p0, p1 = inst.params
    return rel(inst.schema, inst.alpha, p0, p1 + 1)


def mutate(cert, rng: random.Random):
    """One single-point change: sign, conjugator, deletion, parameter, target, or witness."""
    fs = list(cert.factors)
    kinds = ["sign", "conj", "delete", "target"]
    if isinstance(cert, RelatorProduct) and any(not isinstance(f.relator, str) for f in fs):
        kinds.append("param")
    if any(isinstance(f, CommutatorFactor) for f in fs):
        kinds.append("witness")
    kind = rng.choice(kinds)
    i = rng.randrange(len(fs))
    f = fs[i]
    x = _rand_letter(rng, cert)
    if kind == "target":
        return type(cert)(cert.target * x, cert.factors, cert.presentation,
                          *((cert.lifts,) if isinstance(cert, CommutatorProduct) else ())), kind
    if kind == "delete":
        del fs[i]
    elif kind == "sign":
        fs[i] = f.inverse()
    elif kind == "conj":
        if isinstance(f, RelatorFactor):
            fs[i] = RelatorFactor(f.conjugator * x, f.relator, f.sign)
        elif isinstance(f, CommutatorFactor):
            fs[i] = CommutatorFactor(f.f * x, f.r_witness, f.sign)
        else:
            fs[i] = AxiomFactor(f.conjugator * x, f.word, f.sign, f.cost, f.kind, f.provenance)
    elif kind == "param":
        j = next(k for k, g in enumerate(fs) if not isinstance(g.relator, str))
        g = fs[j]
        fs[j] = RelatorFactor(g.conjugator, _bump(g.relator), g.sign)
    elif kind == "witness":
        j = next(k for k, g in enumerate(fs) if isinstance(g, CommutatorFactor))
        g = fs[j]
        w = g.r_witness
        wf = list(w.factors)
        wf[0] = wf[0].inverse()
        fs[j] = CommutatorFactor(g.f, RelatorProduct(w.target, tuple(wf), w.presentation), g.sign)
    if isinstance(cert, RelatorProduct):
        return RelatorProduct(cert.target, tuple(fs), cert.presentation), kind
    return CommutatorProduct(cert.target, tuple(fs), cert.presentation, cert.lifts), kind


def _verify(cert):
    if isinstance(cert, RelatorProduct):
        return verify_relator_product(cert)
    return verify_commutator_product(cert)


def test_c07_mutation_soundness():
    with criterion(7, "certificate soundness under mutation", 30) as box:
        rng = random.Random(7)
        pool = _pool(rng)
        assert all(_verify(c).ok for c in pool)
        caught, kinds = 0, {}
        for _ in range(500):
            cert = rng.choice(pool)
            bad, kind = mutate(cert, rng)
            res = _verify(bad)
            if not res.ok and not res.residual.is_identity():
                caught += 1
            kinds[kind] = kinds.get(kind, 0) + 1
        box["ok"] = caught == 500
        box["detail"] = f"{caught}/500 rejected with a nonempty residual; kinds {kinds}"


# -- 8 ---------------------------------------------------------------------------

COPRIME = [(p, q) for p in range(2, 8) for q in range(2, 10) if gcd(p, q) == 1]


def _rand_word(rng, n=4) -> Word:
    out = EMPTY
    for _ in range(rng.randint(0, n)):
        out = out * named(rng.choice("ab"), rng.choice((1, -1)))
    return out


def _rand_relprod(rng, pres, k=1) -> RelatorProduct:
    return RelatorProduct.of([RelatorFactor(_rand_word(rng), "r", rng.choice((1, -1)))
                              for _ in range(k)], pres)


def test_c08_cost_arithmetic():
    with criterion(8, "cost arithmetic", None) as box:
        rng = random.Random(8)
        counts = dict.fromkeys(("lift_adjust", "compose", "fold", "psi_transport",
                                "surface_datum"), 0)
        bad = dict.fromkeys(counts, 0)
        for _ in range(50):
            p, q = rng.choice(COPRIME)
            tk = torus_knot(p, q)
            pres = torus_presentation(p, q)
            cp = tk.commutator_product
            r, s = _rand_relprod(rng, pres), _rand_relprod(rng, pres)
            out = lift_adjust(cp, r, s)
            counts["lift_adjust"] += 1
            bad["lift_adjust"] += not (verify_commutator_product(out).ok
                                       and out.cost == cp.cost + 2)
            sd = surface_datum(out)
            counts["surface_datum"] += 1
            bad["surface_datum"] += not (sd.genus == out.cost + 1 and sd.check())

            p2 = lift_adjust(cp, r, RelatorProduct(EMPTY, (), pres))
            comp = compose_products(cp, p2, r)
            counts["compose"] += 1
            bad["compose"] += not (verify_commutator_product(comp).ok
                                   and comp.cost <= cp.cost + p2.cost + 1)

            k = rng.randint(1, 3)
            signs = [1] * k + [-1] * k
            rng.shuffle(signs)
            fs = [RelatorFactor(_rand_word(rng), "r", e) for e in signs]
            rp = RelatorProduct.of(fs, pres)
            rp = RelatorProduct(rp.expand(), rp.factors, pres)
            folded = fold_pairs(rp)
            counts["fold"] += 1
            bad["fold"] += not (verify_commutator_product(folded).ok
                                and folded.cost == rp.cost // 2)

            st = (random_param(rng, ()), random_param(rng, ()))
            alpha = rng.choice((1, -1))
            x_ls = translation_product(*st, alpha)
            moved = psi_transport(x_ls, [(xa(alpha, st[0]), xa(alpha, st[1]))],
                                  lambda inst: psi_rel_cert(inst, 2),
                                  lambda g: psi_defect_cert(g, 2))
            counts["psi_transport"] += 1
            bad["psi_transport"] += not (verify_commutator_product(moved).ok
                                         and moved.cost <= 5 * x_ls.cost + 2 * 1)
        box["ok"] = not any(bad.values()) and min(counts.values()) >= 50
        box["detail"] = ", ".join(f"{k} {counts[k] - bad[k]}/{counts[k]}" for k in counts)


# -- 9 ---------------------------------------------------------------------------

def test_c09_stevedore():
    with criterion(9, "Alexander module of the Stevedore example", 5) as box:
        S = stevedore()
        pres, bd = S["presentation"], S["boundary"]
        delta = alexander_polynomial(S["closed"])
        scale = parse_laurent("t-2")
        mems = [submodule_membership(bd[k], pres, scale) for k in ("m", "l")]
        inv = pres.invariants()
        rep = ocmt_check(pres, bd, S["u"])
        ok = (delta.primitive_integer() == parse_laurent("2*t^2-5*t+2")
              and delta.evaluate(Fraction(1, 2)) == 0
              and all(m.member for m in mems)
              and inv["free_rank"] == 1
              and inv["torsion"] == [parse_laurent("2*t-1").canonical()]
              and pres.dim_at(Fraction(1, 2)) == 2 and pres.dim_at(2) == 1
              and rep.dims_direct == {"2": 1, "1/2": 2}
              and not genus2_obstruction(pres)["cyclic"])
        box["ok"] = ok
        box["detail"] = (f"Delta ~ {delta.primitive_integer().serialize()}, Delta(1/2) = "
                         f"{delta.evaluate(Fraction(1, 2))}, m and l in (t-2)H1, "
                         f"free rank {inv['free_rank']} + torsion "
                         f"{[f.serialize() for f in inv['torsion']]}, dims {rep.dims}, "
                         f"not cyclic")


# -- 10 --------------------------------------------------------------------------

def _rand_lmat(rng, m, n, deg=3) -> LaurentMat:
    def entry():
        if rng.random() < 0.2:
            return LaurentPoly()
        lo = rng.randint(-2, 1)
        return LaurentPoly({lo + i: Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                            for i in range(rng.randint(1, deg + 1))})
    return LaurentMat([[entry() for _ in range(n)] for _ in range(m)])


def _unimodular(rng, n) -> LaurentMat:
    M = LaurentMat.identity(n)
    for _ in range(3):
        if n > 1:
            i, j = rng.sample(range(n), 2)
            f = LaurentPoly({rng.randint(-1, 1): Fraction(rng.randint(-3, 3))})
            M.rows[i] = [a + f * b for a, b in zip(M.rows[i], M.rows[j])]
        k = rng.randrange(n)
        c = LaurentPoly({rng.randint(-2, 2): Fraction(rng.choice((-3, -1, 2, 5)))})
        M.rows[k] = [a * c for a in M.rows[k]]
    return M


def test_c10_snf_suite():
    with criterion(10, "Smith normal form properties", 60) as box:
        rng = random.Random(10)
        bad = 0
        for _ in range(200):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            A = _rand_lmat(rng, m, n)
            s = smith_normal_form(A)          # raises if U A V = D fails
            ok = s.check(A)
            ok &= s.U.det().is_unit() and s.V.det().is_unit()
            fs = s.invariant_factors
            ok &= all(fs[i].divides(fs[i + 1]) for i in range(len(fs) - 1))
            B = _unimodular(rng, m) * A * _unimodular(rng, n)
            ok &= smith_normal_form(B).invariant_factors == fs
            bad += not ok
        box["ok"] = bad == 0
        box["detail"] = f"200 matrices up to 4x4, degree <= 3, {bad} failures"


# -- 11 --------------------------------------------------------------------------

def test_c11_affine_units():
    with criterion(11, "affine unit argument", None) as box:
        r = affine_unit_argument([2, 3])
        box["ok"] = r == {"gcd": 1, "overcommutes": True}
        box["detail"] = f"[2,3] -> gcd {r['gcd']}, overcommutes {r['overcommutes']}"


# -- 12 --------------------------------------------------------------------------

def _digest(argv, capsys) -> str:
    cli_main(argv + ["--json"])
    return json.loads(capsys.readouterr().out)["digest"]


def test_c12_determinism(capsys, tmp_path):
    cert = tmp_path / "t.json"
    certio.save(torus_knot(2, 3).commutator_product, cert)
    commands = [
        ["verify", str(cert)],
        ["ghys", "--refined", "--axiom", "translations-xi2", "--seed", "4"],
        ["steinberg-check", "--samples", "20", "--seed", "4"],
        ["alexander"],
        ["torus-knot", "-p", "3", "-q", "5"],
        ["psi", "--schema", "R2", "--params", "3,5", "--seed", "4"],
        ["search", "a*b^-1*a*a*b*a^-1*a^-1*a^-1", "--relator", "r=a^2*b^-3",
         "--max-cost", "1", "--seed", "4"],
    ]
    with criterion(12, "determinism of report digests", None) as box:
        same = [(_digest(c, capsys), _digest(c, capsys)) for c in commands]
        box["ok"] = all(a == b for a, b in same)
        box["detail"] = f"{sum(a == b for a, b in same)}/{len(commands)} commands repeat their digest"


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
