"""Certificate files: versioned JSON, round-trippable bit for bit.

Layout::

    {"format": "overcommute-certificate", "version": 1,
     "kind": "relator-product" | "commutator-product",
     "presentation": {...}, "vars": [...], "target": "<word>",
     "factors": [...], "lifts": ["<g>", "<h>"]   # lifts optional
    }

Words use the word grammar; Steinberg relator instances are
``{"schema", "alpha", "params"}`` with field-expression strings.  Every field
parameter is parsed over the single ``vars`` list of the file.
"""

from __future__ import annotations

import json
from pathlib import Path

from .certificates import (AxiomFactor, CertificateError, CommutatorFactor,
                           CommutatorProduct, Presentation, RelatorFactor,
                           RelatorProduct)
from .exactfield import parse_field
from .steinberg import RelatorInstance
from .words import Stein, Word, parse_word

__all__ = ["FORMAT", "VERSION", "to_json", "from_json", "dumps", "loads",
           "save", "load", "CertificateFormatError"]

FORMAT = "overcommute-certificate"
VERSION = 1


class CertificateFormatError(ValueError):
    """Malformed certificate file (as opposed to a certificate that fails)."""


# -- variables -------------------------------------------------------------------

def _word_vars(w: Word, acc: set):
    for l in w.letters:
        if isinstance(l.gen, Stein):
            acc.update(l.gen.t.vars)


def _rel_vars(rp: RelatorProduct, acc: set):
    _word_vars(rp.target, acc)
    for f in rp.factors:
        _word_vars(f.conjugator, acc)
        if isinstance(f.relator, RelatorInstance):
            for p in f.relator.params:
                acc.update(p.vars)


def _collect_vars(cert) -> tuple[str, ...]:
    acc: set = set()
    if isinstance(cert, RelatorProduct):
        _rel_vars(cert, acc)
    else:
        _word_vars(cert.target, acc)
        for f in cert.factors:
            if isinstance(f, CommutatorFactor):
                _word_vars(f.f, acc)
                _rel_vars(f.r_witness, acc)
            else:
                _word_vars(f.conjugator, acc)
                _word_vars(f.word, acc)
        for w in cert.lifts or ():
            _word_vars(w, acc)
    return tuple(sorted(acc))


# -- encoding --------------------------------------------------------------------

def _rel_factor_json(f: RelatorFactor) -> dict:
    if isinstance(f.relator, RelatorInstance):
        r = {"schema": f.relator.schema, "alpha": f.relator.alpha,
             "params": [p.serialize() for p in f.relator.params]}
    else:
        r = f.relator
    return {"conjugator": f.conjugator.serialize(), "relator": r, "sign": f.sign}


def _rel_product_json(rp: RelatorProduct) -> dict:
    return {"target": rp.target.serialize(),
            "factors": [_rel_factor_json(f) for f in rp.factors]}


def _comm_factor_json(f) -> dict:
    if isinstance(f, CommutatorFactor):
        return {"type": "commutator", "f": f.f.serialize(), "sign": f.sign,
                "r_witness": _rel_product_json(f.r_witness)}
    return {"type": "axiom", "conjugator": f.conjugator.serialize(),
            "word": f.word.serialize(), "sign": f.sign, "cost": f.cost,
            "kind": f.kind, "provenance": f.provenance}


def to_json(cert: RelatorProduct | CommutatorProduct) -> dict:
    out = {"format": FORMAT, "version": VERSION}
    if isinstance(cert, RelatorProduct):
        out["kind"] = "relator-product"
        out["presentation"] = cert.presentation.to_json()
        out["vars"] = list(_collect_vars(cert))
        out.update(_rel_product_json(cert))
        return out
    out["kind"] = "commutator-product"
    out["presentation"] = cert.presentation.to_json()
    out["vars"] = list(_collect_vars(cert))
    out["target"] = cert.target.serialize()
    out["factors"] = [_comm_factor_json(f) for f in cert.factors]
    if cert.lifts is not None:
        out["lifts"] = [w.serialize() for w in cert.lifts]
    return out


def dumps(cert) -> str:
    return json.dumps(to_json(cert), indent=2, sort_keys=True) + "\n"


def save(cert, path) -> None:
    Path(path).write_text(dumps(cert))


# -- decoding --------------------------------------------------------------------

def _need(d: dict, key: str, typ=None):
    if not isinstance(d, dict) or key not in d:
        raise CertificateFormatError(f"missing field {key!r}")
    v = d[key]
    if typ is not None and not isinstance(v, typ):
        raise CertificateFormatError(f"field {key!r} has the wrong type")
    return v


def _sign(d: dict) -> int:
    s = _need(d, "sign", int)
    if s not in (1, -1):
        raise CertificateFormatError("sign must be +1 or -1")
    return s


class _Decoder:
    def __init__(self, vars):
        self.vars = tuple(vars)

    def word(self, s) -> Word:
        if not isinstance(s, str):
            raise CertificateFormatError("words are strings")
        try:
            return parse_word(s, self.vars)
        except (SyntaxError, ValueError, KeyError, ZeroDivisionError) as e:
            raise CertificateFormatError(f"bad word {s!r}: {e}") from e

    def relator(self, r):
        if isinstance(r, str):
            return r
        schema = _need(r, "schema", str)
        alpha = _need(r, "alpha", int)
        params = _need(r, "params", list)
        try:
            ps = tuple(parse_field(p, self.vars) for p in params)
            return RelatorInstance(schema, alpha, ps)
        except (SyntaxError, ValueError, TypeError, ZeroDivisionError) as e:
            raise CertificateFormatError(f"bad relator instance {r!r}: {e}") from e

    def rel_product(self, d: dict, pres: Presentation) -> RelatorProduct:
        fs = tuple(RelatorFactor(self.word(_need(f, "conjugator")), self.relator(_need(f, "relator")),
                                 _sign(f))
                   for f in _need(d, "factors", list))
        return RelatorProduct(self.word(_need(d, "target")), fs, pres)

    def comm_factor(self, f: dict, pres: Presentation):
        typ = _need(f, "type", str)
        if typ == "commutator":
            return CommutatorFactor(self.word(_need(f, "f")),
                                    self.rel_product(_need(f, "r_witness", dict), pres), _sign(f))
        if typ == "axiom":
            return AxiomFactor(self.word(_need(f, "conjugator")), self.word(_need(f, "word")),
                               _sign(f), _need(f, "cost", int), _need(f, "kind", str),
                               _need(f, "provenance", str))
        raise CertificateFormatError(f"unknown factor type {typ!r}")


def from_json(d: dict) -> RelatorProduct | CommutatorProduct:
    if not isinstance(d, dict) or d.get("format") != FORMAT:
        raise CertificateFormatError("not a certificate file")
    if d.get("version") != VERSION:
        raise CertificateFormatError(f"unsupported version {d.get('version')!r}")
    try:
        pres = Presentation.from_json(_need(d, "presentation", dict))
    except (KeyError, TypeError, SyntaxError, AttributeError) as e:
        raise CertificateFormatError(f"bad presentation: {e}") from e
    dec = _Decoder(_need(d, "vars", list))
    kind = _need(d, "kind", str)
    if kind == "relator-product":
        return dec.rel_product(d, pres)
    if kind == "commutator-product":
        fs = tuple(dec.comm_factor(f, pres) for f in _need(d, "factors", list))
        lifts = d.get("lifts")
        if lifts is not None:
            if not isinstance(lifts, list) or len(lifts) != 2:
                raise CertificateFormatError("lifts must be a pair of words")
            lifts = (dec.word(lifts[0]), dec.word(lifts[1]))
        return CommutatorProduct(dec.word(_need(d, "target")), fs, pres, lifts)
    raise CertificateFormatError(f"unknown certificate kind {kind!r}")


def loads(text: str):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise CertificateFormatError(f"not JSON: {e}") from e
    return from_json(d)


def load(path):
    return loads(Path(path).read_text())


def verify_any(cert):
    """Run the matching verifier."""
    from .certificates import verify_commutator_product, verify_relator_product
    if isinstance(cert, RelatorProduct):
        return verify_relator_product(cert)
    if not isinstance(cert, CommutatorProduct):
        raise CertificateError("not a certificate")
    return verify_commutator_product(cert)
