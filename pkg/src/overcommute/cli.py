"""Command line entry point.

Every command builds a structured report, writes it as JSON with ``--out``
(or to stdout with ``--json``) and prints a short summary otherwise.  The
report digest is a sha256 of the canonical JSON without the timestamp, so
two runs with the same flags and seed give the same digest.

Exit codes: 0 success, 1 a check or verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__

SEED_ENV = "OVERCOMMUTE_SEED"


class InputError(Exception):
    """Bad user input: exit code 2."""


# -- reports -------------------------------------------------------------------------

def _canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=str)


def make_report(command: str, inputs: dict, results: dict, provenance: dict, ok: bool) -> dict:
    rep = {
        "command": command,
        "version": __version__,
        "inputs": inputs,
        "inputs_digest": hashlib.sha256(_canonical(inputs).encode()).hexdigest(),
        "ok": ok,
        "results": results,
        "provenance": provenance,
    }
    rep["digest"] = hashlib.sha256(_canonical(rep).encode()).hexdigest()
    rep["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return rep


def _emit(rep: dict, args, summary: list[str]) -> None:
    text = json.dumps(rep, indent=2, sort_keys=True, default=str) + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    if getattr(args, "json", False):
        sys.stdout.write(text)
        return
    for line in summary:
        print(line)
    print(f"digest {rep['digest']}")


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV, "0")
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer, got {raw!r}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(str(e)) from e


# -- verify -------------------------------------------------------------------------

def cmd_verify(args) -> int:
    from .certio import CertificateFormatError, loads, verify_any
    from .certificates import CertificateError, RelatorProduct
    text = _read(args.path)
    try:
        cert = loads(text)
        res = verify_any(cert)
    except (CertificateFormatError, CertificateError) as e:
        raise InputError(f"malformed certificate: {e}") from e
    kind = "relator-product" if isinstance(cert, RelatorProduct) else "commutator-product"
    results = {"kind": kind, "verified": res.ok, "cost": res.cost,
               "axiom_cost": res.axiom_cost, "residual": res.residual.serialize(),
               "residual_length": len(res.residual), "message": res.message}
    prov = {"cost": "verified-certificate" if res.ok else "unverified"}
    if res.axiom_cost:
        prov["axiom_cost"] = "axiom-import"
    rep = make_report("verify", {"path": str(args.path),
                                 "sha256": hashlib.sha256(text.encode()).hexdigest()},
                      results, prov, res.ok)
    summary = [f"{kind}: {'verified' if res.ok else 'FAILED'}, cost {res.cost}"]
    if not res.ok:
        summary.append(f"residual ({len(res.residual)} letters): {res.residual.serialize()[:200]}")
    _emit(rep, args, summary)
    return 0 if res.ok else 1


# -- ghys ---------------------------------------------------------------------------

def cmd_ghys(args) -> int:
    from .certificates import t2_bound
    from .steinberg import verify_ghys
    if args.alpha not in (1, -1):
        raise InputError("--alpha must be 1 or -1")
    g = verify_ghys(args.alpha)
    coarse = t2_bound(g.relator_count, 1)
    results = {"pi_equal": g.pi_equal, "free_equal": g.free_equal,
               "relator_count": g.relator_count,
               "residual": g.residual.serialize(), "bounds": {"coarse": coarse.to_json()}}
    prov = {"relator_count": "paper-script", "coarse.t2_bound": "paper-script",
            "coarse.genus_bound": "paper-script"}
    ok = g.pi_equal and g.relator_count == 12
    summary = [f"Ghys identity: pi_equal={g.pi_equal} free_equal={g.free_equal} "
               f"relators={g.relator_count}",
               f"coarse bound: ocl <= {coarse.t2_bound} (genus <= {coarse.genus_bound})"]
    if args.refined:
        from .ghys import ghys_refined
        if args.axiom == "translations-xi2":
            translations = "axiom"
        elif args.translations == "algebraic":
            from .translations import algebraic_provider as translations
        else:
            from .search import translation_provider
            translations = translation_provider(max_cost=args.search_cost, budget=args.budget,
                                                seed=args.seed)
        r = ghys_refined(args.alpha, hall_witt=args.hall_witt, translations=translations)
        rj = r.to_json()
        results["refined"] = rj
        prov.update({f"refined.{k}": v for k, v in r.cert_report.provenance.items()})
        if r.certificate is not None:
            ok = ok and r.ok
            summary.append(f"refined: ocl <= {r.certificate.cost} (genus <= {r.certificate.cost + 1}),"
                           f" {r.certificate.realized_cost} realized + {r.certificate.axiom_cost}"
                           f" imported, {r.tokens_before_fold} tokens before the fold")
            if args.cert_out:
                from .certio import save
                save(r.certificate, args.cert_out)
        else:
            summary.append(f"refined: no bound; {len(r.unresolved)} translation commutators "
                           f"unresolved by search (use --axiom translations-xi2)")
    rep = make_report("ghys", {"alpha": args.alpha, "refined": args.refined,
                               "axiom": args.axiom, "hall_witt": args.hall_witt,
                               "translations": args.translations, "seed": args.seed, "budget": args.budget,
                               "search_cost": args.search_cost}, results, prov, ok)
    _emit(rep, args, summary)
    return 0 if ok else 1


# -- steinberg-check -------------------------------------------------------------------

def _check_sample(job: tuple[int, int]) -> dict:
    from .steinberg import (R1, R2, R3, R4, SCHEMAS, expand_relator, pi_eval,
                            prop53_checks, prop53_item4, random_param, rel)
    seed, i = job
    rng = random.Random(f"{seed}:{i}")
    vars_ = ("u",)
    p = random_param(rng, vars_, unit=True)
    q = random_param(rng, vars_, unit=True)
    t = random_param(rng, vars_)
    out = {"index": i, "params": [p.serialize(), q.serialize(), t.serialize()]}
    for a in (1, -1):
        for schema in SCHEMAS:
            second = q if schema == R4 else t
            ok = pi_eval(expand_relator(rel(schema, a, p, second))).is_identity()
            out[f"{schema}[{a:+d}]"] = ok
        for name, ok in prop53_checks(a, p, q, t).items():
            out[f"{name}[{a:+d}]"] = ok
        out[f"item4[{a:+d}]"] = prop53_item4(a, p, q)
    return out


def cmd_steinberg_check(args) -> int:
    if args.samples < 1:
        raise InputError("--samples must be at least 1")
    jobs = [(args.seed, i) for i in range(args.samples)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            rows = list(ex.map(_check_sample, jobs, chunksize=max(1, len(jobs) // (4 * args.jobs))))
    else:
        rows = [_check_sample(j) for j in jobs]
    keys = [k for k in rows[0] if k not in ("index", "params") and not k.startswith("item4")]
    passed = {k: sum(1 for r in rows if r[k]) for k in keys}
    item4 = sorted({tuple(r[k]) for r in rows for k in r if k.startswith("item4")})
    # item 4 as printed has no matching right-hand side; report which candidates match
    resolved = [list(c) for c in item4]
    ok = all(v == len(rows) for v in passed.values()) and all(len(c) > 0 for c in item4)
    results = {"samples": len(rows), "passed": passed, "item4_matches": resolved,
               "sample_digest": hashlib.sha256(_canonical(rows).encode()).hexdigest()}
    rep = make_report("steinberg-check", {"samples": args.samples, "seed": args.seed},
                      results, {"passed": "paper-script"}, ok)
    bad = [k for k, v in passed.items() if v != len(rows)]
    summary = [f"{len(rows)} samples, {len(keys)} identities each: "
               + ("all pass" if not bad else f"failures in {bad}"),
               f"item 4 matches: {resolved}"]
    _emit(rep, args, summary)
    return 0 if ok else 1


# -- alexander -------------------------------------------------------------------------

def cmd_alexander(args) -> int:
    from .alexander import (ModulePresentation, alexander_polynomial, data_path,
                            genus2_obstruction, ocmt_check, parse_boundary, parse_matrix)
    shipped = args.matrix is None
    try:
        mat = parse_matrix(_read(args.matrix) if args.matrix
                           else data_path("stevedore_matrix.txt").read_text())
        bpath = args.boundary
        if bpath is None and shipped:
            boundary = parse_boundary(data_path("stevedore_boundary.txt").read_text())
        elif bpath is not None:
            boundary = parse_boundary(_read(bpath))
        else:
            boundary = None
        closed_text = (_read(args.closed) if args.closed else
                       data_path("stevedore_closed.txt").read_text() if shipped else None)
        closed = parse_matrix(closed_text) if closed_text else None
        u = Fraction(args.u)
    except (ValueError, SyntaxError, ZeroDivisionError) as e:
        raise InputError(str(e)) from e
    if u == 0:
        raise InputError("--u must be nonzero")
    gens = [f"g{i}" for i in range(mat.m)]
    pres = ModulePresentation(gens, mat)
    if boundary is None:
        boundary = {"m": [0] * mat.m, "l": [0] * mat.m}
    if any(len(v) != mat.m for v in boundary.values()):
        raise InputError("boundary vectors must have one entry per matrix row")
    rep_ocmt = ocmt_check(pres, boundary, u)
    results = rep_ocmt.to_json()
    delta_pres = ModulePresentation([f"c{i}" for i in range(closed.m)], closed) if closed else pres
    delta = alexander_polynomial(delta_pres)
    results["alexander_polynomial"] = delta.serialize()
    results["alexander_polynomial_integral"] = delta.primitive_integer().serialize()
    results["alexander_source"] = "closed presentation" if closed else "module presentation"
    results["delta_at_1/u"] = str(delta.evaluate(1 / u)) if not delta.is_zero() else None
    g2 = genus2_obstruction(pres)
    results["genus2_obstruction"] = g2
    results["ocmt_refuted"] = g2["cyclic"] or not rep_ocmt.boundary_divisible
    ok = True
    rep = make_report("alexander", {"matrix": args.matrix or "shipped:stevedore",
                                    "boundary": args.boundary or ("shipped:stevedore" if shipped else None),
                                    "closed": args.closed or ("shipped:stevedore" if shipped else None),
                                    "u": str(u)},
                      results, {"all": "paper-script"}, ok)
    summary = [f"boundary in (t-{u})H1: m={rep_ocmt.m_member.member} l={rep_ocmt.l_member.member}",
               f"module: free rank {results['free_rank']}, torsion {results['torsion']}, "
               f"cyclic={rep_ocmt.cyclic}",
               f"dims: {results['dims']}",
               f"Alexander polynomial {results['alexander_polynomial_integral']}, "
               f"value at 1/u: {results['delta_at_1/u']}"]
    _emit(rep, args, summary)
    return 0 if ok else 1


# -- torus-knot -----------------------------------------------------------------------

def cmd_torus_knot(args) -> int:
    from .certificates import CertificateError
    from .torus import torus_knot
    try:
        tk = torus_knot(args.p, args.q)
    except CertificateError as e:
        raise InputError(str(e)) from e
    results = tk.to_json()
    if args.cert_out:
        from .certio import save
        save(tk.commutator_product, args.cert_out)
        results["certificate_file"] = str(args.cert_out)
    ok = results["relator_product_ok"] and results["commutator_product_ok"] and results["surface_datum_ok"]
    rep = make_report("torus-knot", {"p": args.p, "q": args.q}, results,
                      {"l_S_cost": "verified-certificate", "cl_R_cost": "verified-certificate",
                       "genus_bound": "verified-certificate"}, ok)
    _emit(rep, args, [f"T({args.p},{args.q}): m = {results['meridian']}, l = {results['longitude']}",
                      f"l_S <= {results['l_S_cost']}, cl_R <= {results['cl_R_cost']}, "
                      f"genus <= {results['genus_bound']}"])
    return 0 if ok else 1


# -- psi ---------------------------------------------------------------------------------

def cmd_psi(args) -> int:
    from .certificates import CertificateError, verify_commutator_product
    from .derivations import psi_rel_cert
    from .exactfield import parse_field
    from .steinberg import rel
    try:
        params = [parse_field(x.strip()) for x in args.params.split(",")]
        if len(params) != 2:
            raise ValueError("--params takes two field expressions")
        inst = rel(args.schema, args.alpha, *params)
        a = parse_field(args.a)
    except (ValueError, SyntaxError, ZeroDivisionError) as e:
        raise InputError(str(e)) from e
    if args.axiom == "translations-xi2":
        provider, tag = None, "axiom-import"
    elif args.translations == "algebraic":
        from .translations import algebraic_provider as provider
        tag = "algebraic"
    else:
        from .search import translation_provider
        provider = translation_provider(max_cost=args.search_cost, budget=args.budget, seed=args.seed)
        tag = "search"
    results = {"relator": inst.to_json()}
    try:
        cert = psi_rel_cert(inst, a, provider=provider, mode=args.hall_witt)
    except CertificateError as e:
        results.update({"found": False, "message": str(e)})
        rep = make_report("psi", {"schema": args.schema, "params": args.params, "a": args.a,
                                  "axiom": args.axiom}, results, {}, False)
        _emit(rep, args, [f"psi({args.schema}): no certificate ({e})"])
        return 1
    res = verify_commutator_product(cert)
    results.update({"found": True, "verified": res.ok, "cost": cert.cost,
                    "realized_cost": cert.realized_cost, "axiom_cost": cert.axiom_cost})
    prov = {"cost": "verified-certificate" + (f"+{tag}" if cert.axiom_cost or tag == "search" else "")}
    if args.cert_out:
        from .certio import save
        save(cert, args.cert_out)
    rep = make_report("psi", {"schema": args.schema, "params": args.params, "a": args.a,
                              "axiom": args.axiom, "hall_witt": args.hall_witt,
                              "translations": args.translations}, results, prov, res.ok)
    _emit(rep, args, [f"psi({args.schema}): cost {cert.cost} ({cert.realized_cost} realized, "
                      f"{cert.axiom_cost} imported), verified={res.ok}"])
    return 0 if res.ok else 1


# -- search -------------------------------------------------------------------------------

def cmd_search(args) -> int:
    from .certificates import STEINBERG, CertificateError, Presentation
    from .search import search_commutator_cert
    from .words import parse_word
    try:
        if args.relator:
            rels = dict(r.split("=", 1) for r in args.relator)
            pres = Presentation.finite("cli", [], rels)
        else:
            pres = STEINBERG
        target = parse_word(args.target)
    except (ValueError, SyntaxError, ZeroDivisionError) as e:
        raise InputError(str(e)) from e
    try:
        res = search_commutator_cert(target, pres, args.max_cost, args.max_word_len,
                                     args.budget, args.seed)
    except CertificateError as e:
        raise InputError(str(e)) from e
    results = res.to_json()
    if res.found and args.cert_out:
        from .certio import save
        save(res.certificate, args.cert_out)
    rep = make_report("search", {"target": args.target, "relators": args.relator,
                                 "max_cost": args.max_cost, "max_word_len": args.max_word_len,
                                 "budget": args.budget, "seed": args.seed},
                      results, {"cost": "search"} if res.found else {}, True)
    _emit(rep, args, [f"search: {res.message} ({res.explored} probes)"])
    return 0 if res.found else 1


# -- parser -------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    seed = _default_seed()
    ap = argparse.ArgumentParser(prog="overcommute",
                                 description="Certificates for overcommutation length.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--json", action="store_true", help="print the JSON report")
        return p

    p = common(sub.add_parser("verify", help="verify a certificate file"))
    p.add_argument("path")
    p.set_defaults(func=cmd_verify)

    p = common(sub.add_parser("ghys", help="commutator of two diagonal matrices in St2"))
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--refined", action="store_true")
    p.add_argument("--axiom", choices=["translations-xi2"])
    p.add_argument("--translations", choices=["search", "algebraic"], default="search",
                   help="how to certify [x(s), x(t)] when no axiom is imported")
    p.add_argument("--hall-witt", choices=["literal", "direct"], default="literal")
    p.add_argument("--cert-out", help="write the refined certificate here")
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--budget", type=int, default=3000)
    p.add_argument("--search-cost", type=int, default=4)
    p.set_defaults(func=cmd_ghys)

    p = common(sub.add_parser("steinberg-check", help="SL2 soundness of the relators"))
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_steinberg_check)

    p = common(sub.add_parser("alexander", help="boundary divisibility over Q[t, 1/t]"))
    p.add_argument("--matrix", help="relation matrix (default: shipped Stevedore data)")
    p.add_argument("--boundary", help="boundary vectors file")
    p.add_argument("--closed", help="closed presentation for the Alexander polynomial")
    p.add_argument("--u", default="2")
    p.set_defaults(func=cmd_alexander)

    p = common(sub.add_parser("torus-knot", help="meridian/longitude certificate"))
    p.add_argument("-p", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--cert-out")
    p.set_defaults(func=cmd_torus_knot)

    p = common(sub.add_parser("psi", help="psi-image certificate of a relator"))
    p.add_argument("--schema", choices=["R1", "R2", "R4"], default="R1")
    p.add_argument("--params", default="2,3", help="two field expressions, comma separated")
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("-a", default="2")
    p.add_argument("--axiom", choices=["translations-xi2"])
    p.add_argument("--translations", choices=["search", "algebraic"], default="search",
                   help="how to certify [x(s), x(t)] when no axiom is imported")
    p.add_argument("--hall-witt", choices=["literal", "direct"], default="direct")
    p.add_argument("--cert-out")
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--budget", type=int, default=3000)
    p.add_argument("--search-cost", type=int, default=4)
    p.set_defaults(func=cmd_psi)

    p = common(sub.add_parser("search", help="bounded search for a commutator certificate"))
    p.add_argument("target")
    p.add_argument("--relator", action="append", help="name=word; finite presentation")
    p.add_argument("--max-cost", type=int, default=2)
    p.add_argument("--max-word-len", type=int, default=12)
    p.add_argument("--budget", type=int, default=20000)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--cert-out")
    p.set_defaults(func=cmd_search)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
