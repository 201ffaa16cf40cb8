"""Modules over the Laurent ring L = Q[t, 1/t].

L is a principal ideal domain (a localization of Q[t]); its units are c t^k.
Everything here reduces to Euclid in Q[t] after clearing powers of t:

* ``lp_gcd_ext``: Bezout over L,
* ``smith_normal_form``: U A V = D with unimodular U, V,
* ``submodule_membership``: solve target = scale x + A y,
* ``ocmt_check`` / ``genus2_obstruction`` / ``alexander_polynomial`` for the
  boundary divisibility test of a knot complement and its cyclicity
  obstruction.

The shipped example is the knot complement in 0-surgery on the Stevedore
knot: generators (m_L, m_K), one relation l_L = (2t-5+2/t) m_L + (1/t-2) m_K,
boundary m_K = (0, 1), l_K = (t-2, 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "LaurentPoly", "LaurentMat", "ModulePresentation", "SNFResult", "OCMTReport",
    "lp_gcd_ext", "smith_normal_form", "submodule_membership", "ocmt_check",
    "alexander_polynomial", "genus2_obstruction", "parse_laurent", "parse_matrix",
    "stevedore", "parse_boundary", "data_path",
]


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class LaurentPoly:
    """Finite sum c_k t^k with rational c_k and any integer k."""

    __slots__ = ("c",)

    def __init__(self, coeffs: dict | None = None):
        self.c = {int(k): _q(v) for k, v in (coeffs or {}).items() if v}

    # -- constructors ------------------------------------------------------------
    @classmethod
    def const(cls, a) -> LaurentPoly:
        return cls({0: a})

    @classmethod
    def mono(cls, k: int, a=1) -> LaurentPoly:
        return cls({k: a})

    @classmethod
    def t(cls) -> LaurentPoly:
        return cls({1: 1})

    @classmethod
    def from_poly(cls, coeffs: Sequence, shift: int = 0) -> LaurentPoly:
        return cls({i + shift: a for i, a in enumerate(coeffs)})

    # -- structure ---------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.c

    def low(self) -> int:
        return min(self.c)

    def high(self) -> int:
        return max(self.c)

    def degree(self) -> int:
        """Span high - low; the Euclidean size on L (-1 for zero)."""
        return self.high() - self.low() if self.c else -1

    def is_unit(self) -> bool:
        return len(self.c) == 1

    def to_poly(self) -> tuple[list[Fraction], int]:
        """(coefficients of t^-low * self in Q[t], low)."""
        lo = self.low()
        return [self.c.get(lo + i, Fraction(0)) for i in range(self.degree() + 1)], lo

    def canonical(self) -> LaurentPoly:
        """Associate with lowest exponent 0 and leading coefficient 1."""
        if not self.c:
            return self
        lo, lead = self.low(), self.c[self.high()]
        return LaurentPoly({k - lo: v / lead for k, v in self.c.items()})

    def unit_part(self) -> LaurentPoly:
        """u with self = u * canonical(self)."""
        return LaurentPoly({self.low(): self.c[self.high()]})

    def primitive_integer(self) -> LaurentPoly:
        """Associate in Z[t] with coprime coefficients and positive lead, lowest exponent 0."""
        if not self.c:
            return self
        p = self.canonical()
        den = lcm(*(v.denominator for v in p.c.values()))
        ints = {k: v * den for k, v in p.c.items()}
        g = gcd(*(int(v) for v in ints.values()))
        return LaurentPoly({k: v / g for k, v in ints.items()})

    def evaluate(self, x) -> Fraction:
        x = _q(x)
        if x == 0 and any(k < 0 for k in self.c):
            raise ZeroDivisionError("negative power of t at t = 0")
        return sum((v * x ** k for k, v in self.c.items()), Fraction(0))

    def bar(self) -> LaurentPoly:
        """t -> 1/t"""
        return LaurentPoly({-k: v for k, v in self.c.items()})

    # -- arithmetic -------------------------------------------------------------
    def __add__(self, o):
        o = _lp(o)
        out = dict(self.c)
        for k, v in o.c.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.c.items()})

    def __sub__(self, o):
        return self + (-_lp(o))

    def __rsub__(self, o):
        return _lp(o) - self

    def __mul__(self, o):
        o = _lp(o)
        out: dict = {}
        for i, a in self.c.items():
            for j, b in o.c.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_unit():
                raise ValueError("only units have negative powers")
            (k, v), = self.c.items()
            return LaurentPoly({k * n: v ** n})
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def unit_inverse(self) -> LaurentPoly:
        if not self.is_unit():
            raise ValueError(f"{self} is not a unit of L")
        (k, v), = self.c.items()
        return LaurentPoly({-k: 1 / v})

    def divmod(self, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        """self = q b + r with r = 0 or degree(r) < degree(b)."""
        if b.is_zero():
            raise ZeroDivisionError("division by zero in L")
        if self.is_zero():
            return LaurentPoly(), LaurentPoly()
        A, ea = self.to_poly()
        B, eb = b.to_poly()
        Q, R = _poly_divmod(A, B)
        q = LaurentPoly.from_poly(Q, ea - eb)
        r = LaurentPoly.from_poly(R, ea)
        return q, r

    def divides(self, a: LaurentPoly) -> bool:
        if self.is_zero():
            return a.is_zero()
        return a.divmod(self)[1].is_zero()

    def exact_div(self, b: LaurentPoly) -> LaurentPoly:
        q, r = self.divmod(b)
        if not r.is_zero():
            raise ValueError("inexact division in L")
        return q

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = LaurentPoly.const(o)
        return isinstance(o, LaurentPoly) and self.c == o.c

    def __hash__(self):
        return hash(tuple(sorted(self.c.items())))

    def serialize(self) -> str:
        if not self.c:
            return "0"
        parts = []
        for k in sorted(self.c, reverse=True):
            v = self.c[k]
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if k == 0:
                body = str(a)
            else:
                tp = "t" if k == 1 else f"t^{k}"
                body = tp if a == 1 else f"{a}*{tp}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += sign + body
        return s

    def __repr__(self):
        return f"LaurentPoly({self.serialize()})"

    __str__ = serialize


def _lp(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(A: list, B: list) -> tuple[list, list]:
    A, B = _trim(list(A)), _trim(list(B))
    if not B:
        raise ZeroDivisionError
    Q = [Fraction(0)] * max(len(A) - len(B) + 1, 0)
    R = list(A)
    lb = B[-1]
    while len(R) >= len(B) and R:
        k = len(R) - len(B)
        f = R[-1] / lb
        Q[k] = f
        for i, b in enumerate(B):
            R[i + k] -= f * b
        _trim(R)
    return Q, R


# -- gcd ------------------------------------------------------------------------

def lp_gcd_ext(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly, LaurentPoly]:
    """(g, p, q) with p a + q b = g, g the canonical gcd in L."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zeros")
    r0, r1 = a, b
    s0, s1 = LaurentPoly.const(1), LaurentPoly()
    t0, t1 = LaurentPoly(), LaurentPoly.const(1)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    u = r0.unit_part().unit_inverse()
    g, p, q = r0 * u, s0 * u, t0 * u
    if p * a + q * b != g:
        raise ArithmeticError("internal: Bezout identity failed")
    return g, p, q


# -- matrices ---------------------------------------------------------------------

class LaurentMat:
    def __init__(self, rows: Sequence[Sequence]):
        self.rows = [[_lp(x) for x in r] for r in rows]
        self.m = len(self.rows)
        self.n = len(self.rows[0]) if self.rows else 0
        if any(len(r) != self.n for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, m: int, n: int) -> LaurentMat:
        out = cls([])
        out.rows = [[LaurentPoly() for _ in range(n)] for _ in range(m)]
        out.m, out.n = m, n
        return out

    @classmethod
    def identity(cls, n: int) -> LaurentMat:
        out = cls.zeros(n, n)
        for i in range(n):
            out.rows[i][i] = LaurentPoly.const(1)
        return out

    def copy(self) -> LaurentMat:
        out = LaurentMat.zeros(self.m, self.n)
        out.rows = [list(r) for r in self.rows]
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __setitem__(self, ij, v):
        i, j = ij
        self.rows[i][j] = _lp(v)

    def __mul__(self, o: LaurentMat) -> LaurentMat:
        if self.n != o.m:
            raise ValueError("dimension mismatch")
        out = LaurentMat.zeros(self.m, o.n)
        for i in range(self.m):
            for j in range(o.n):
                acc = LaurentPoly()
                for k in range(self.n):
                    if not self.rows[i][k].is_zero() and not o.rows[k][j].is_zero():
                        acc = acc + self.rows[i][k] * o.rows[k][j]
                out.rows[i][j] = acc
        return out

    def __eq__(self, o):
        return isinstance(o, LaurentMat) and self.m == o.m and self.n == o.n and self.rows == o.rows

    def transpose(self) -> LaurentMat:
        return LaurentMat([[self.rows[i][j] for i in range(self.m)] for j in range(self.n)]) \
            if self.m else LaurentMat.zeros(self.n, 0)

    def column(self, j: int) -> list:
        return [self.rows[i][j] for i in range(self.m)]

    def hstack(self, o: LaurentMat) -> LaurentMat:
        if self.m != o.m:
            raise ValueError("row counts differ")
        out = LaurentMat.zeros(self.m, self.n + o.n)
        out.rows = [a + b for a, b in zip(self.rows, o.rows)]
        return out

    def det(self) -> LaurentPoly:
        if self.m != self.n:
            raise ValueError("determinant of a non-square matrix")
        return _det([list(r) for r in self.rows])

    def evaluate(self, x) -> list[list[Fraction]]:
        return [[e.evaluate(x) for e in r] for r in self.rows]

    def serialize(self) -> list[list[str]]:
        return [[e.serialize() for e in r] for r in self.rows]

    def __repr__(self):
        return f"LaurentMat({self.serialize()})"


def _det(rows) -> LaurentPoly:
    n = len(rows)
    if n == 0:
        return LaurentPoly.const(1)
    if n == 1:
        return rows[0][0]
    out = LaurentPoly()
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


def _rank_q(M: list[list[Fraction]]) -> int:
    M = [list(r) for r in M]
    rank, rows = 0, len(M)
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for r in range(rows):
            if r != rank and M[r][c] != 0:
                f = M[r][c] / M[rank][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
    return rank


# -- Smith normal form -------------------------------------------------------------

@dataclass
class SNFResult:
    U: LaurentMat
    D: LaurentMat
    V: LaurentMat
    invariant_factors: list

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def check(self, A: LaurentMat) -> bool:
        if self.U * A * self.V != self.D:
            return False
        for M in (self.U, self.V):
            if M.m and not M.det().is_unit():
                return False
        fs = self.invariant_factors
        return all(fs[i].divides(fs[i + 1]) for i in range(len(fs) - 1))


def smith_normal_form(A: LaurentMat) -> SNFResult:
    """U A V = D; pivot on the smallest degree entry, ties by position."""
    m, n = A.m, A.n
    D = A.copy()
    U, V = LaurentMat.identity(m), LaurentMat.identity(n)

    def swap_rows(i, j):
        D.rows[i], D.rows[j] = D.rows[j], D.rows[i]
        U.rows[i], U.rows[j] = U.rows[j], U.rows[i]

    def swap_cols(i, j):
        for M in (D, V):
            for r in M.rows:
                r[i], r[j] = r[j], r[i]

    def add_row(src, dst, f):       # row dst += f * row src
        for M in (D, U):
            M.rows[dst] = [a + f * b if not b.is_zero() else a
                           for a, b in zip(M.rows[dst], M.rows[src])]

    def add_col(src, dst, f):       # col dst += f * col src
        for M in (D, V):
            for r in M.rows:
                if not r[src].is_zero():
                    r[dst] = r[dst] + f * r[src]

    k = 0
    while k < min(m, n):
        # pivot: smallest degree in the remaining block
        best = None
        for i in range(k, m):
            for j in range(k, n):
                e = D.rows[i][j]
                if not e.is_zero() and (best is None or e.degree() < best[0]):
                    best = (e.degree(), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(k, i)
        swap_cols(k, j)
        while True:
            p = D.rows[k][k]
            dirty = False
            for i in range(k + 1, m):
                e = D.rows[i][k]
                if e.is_zero():
                    continue
                q, r = e.divmod(p)
                add_row(k, i, -q)
                if not r.is_zero():
                    dirty = True
            for j in range(k + 1, n):
                e = D.rows[k][j]
                if e.is_zero():
                    continue
                q, r = e.divmod(p)
                add_col(k, j, -q)
                if not r.is_zero():
                    dirty = True
            if dirty:
                # a remainder of smaller degree appeared; move it to the pivot
                best = None
                for i in range(k, m):
                    for j in ((k,) if i > k else range(k, n)):
                        e = D.rows[i][j]
                        if not e.is_zero() and (best is None or e.degree() < best[0]):
                            best = (e.degree(), i, j)
                _, i, j = best
                swap_rows(k, i)
                swap_cols(k, j)
                continue
            # divisibility of the rest of the block
            bad = next(((i, j) for i in range(k + 1, m) for j in range(k + 1, n)
                        if not p.divides(D.rows[i][j])), None)
            if bad is None:
                break
            add_row(bad[0], k, LaurentPoly.const(1))
        # normalize the pivot to canonical form
        u = D.rows[k][k].unit_part().unit_inverse()
        D.rows[k] = [e * u for e in D.rows[k]]
        U.rows[k] = [e * u for e in U.rows[k]]
        k += 1
    factors = [D.rows[i][i] for i in range(min(m, n)) if not D.rows[i][i].is_zero()]
    res = SNFResult(U, D, V, factors)
    if not res.check(A):
        raise ArithmeticError("internal: Smith normal form check failed")
    return res


# -- modules ---------------------------------------------------------------------

@dataclass
class ModulePresentation:
    """Cokernel of ``relations`` (columns are relation vectors)."""

    generators: list
    relations: LaurentMat

    def __post_init__(self):
        if self.relations.m != len(self.generators):
            raise ValueError("relation vectors must have one entry per generator")

    def snf(self) -> SNFResult:
        return smith_normal_form(self.relations)

    def invariants(self) -> dict:
        s = self.snf()
        torsion = [f for f in s.invariant_factors if not f.is_unit()]
        free = len(self.generators) - s.rank
        return {"free_rank": free, "torsion": torsion,
                "min_generators": free + len(torsion)}

    def dim_at(self, c) -> int:
        """dim_Q of M / (t - c) M."""
        inv = self.invariants()
        return inv["free_rank"] + sum(1 for f in inv["torsion"] if f.evaluate(c) == 0)

    def dim_at_direct(self, c) -> int:
        if self.relations.n == 0:
            return len(self.generators)
        return len(self.generators) - _rank_q(self.relations.evaluate(c))


@dataclass
class Membership:
    member: bool
    x: list | None = None
    y: list | None = None

    def to_json(self) -> dict:
        d = {"member": self.member}
        if self.member:
            d["witness"] = {"x": [e.serialize() for e in self.x],
                            "y": [e.serialize() for e in self.y]}
        return d


def submodule_membership(target: Sequence, pres: ModulePresentation,
                         scale: LaurentPoly) -> Membership:
    """Is target = scale * x + A y for some x, y over L?"""
    m = len(pres.generators)
    b = [_lp(e) for e in target]
    if len(b) != m:
        raise ValueError("target length differs from generator count")
    S = LaurentMat.identity(m)
    S.rows = [[e * scale for e in r] for r in S.rows]
    M = S.hstack(pres.relations) if pres.relations.n else S
    snf = smith_normal_form(M)
    c = [sum((snf.U.rows[i][j] * b[j] for j in range(m)), LaurentPoly()) for i in range(m)]
    w = [LaurentPoly() for _ in range(M.n)]
    for i in range(m):
        d = snf.D.rows[i][i] if i < M.n else LaurentPoly()
        if d.is_zero():
            if not c[i].is_zero():
                return Membership(False)
            continue
        q, r = c[i].divmod(d)
        if not r.is_zero():
            return Membership(False)
        w[i] = q
    z = [sum((snf.V.rows[i][j] * w[j] for j in range(M.n)), LaurentPoly()) for i in range(M.n)]
    x, y = z[:m], z[m:]
    # exact replay of the witness
    for i in range(m):
        acc = scale * x[i]
        for j in range(pres.relations.n):
            acc = acc + pres.relations.rows[i][j] * y[j]
        if acc != b[i]:
            raise ArithmeticError("internal: membership witness does not reproduce the target")
    return Membership(True, x, y)


@dataclass
class OCMTReport:
    u: Fraction
    m_member: Membership
    l_member: Membership
    cyclic: bool
    invariants: dict
    dims: dict
    dims_direct: dict
    alexander: LaurentPoly

    @property
    def boundary_divisible(self) -> bool:
        return self.m_member.member and self.l_member.member

    def to_json(self) -> dict:
        inv = self.invariants
        return {
            "u": str(self.u),
            "m_in_(t-u)H1": self.m_member.to_json(),
            "l_in_(t-u)H1": self.l_member.to_json(),
            "boundary_divisible": self.boundary_divisible,
            "cyclic": self.cyclic,
            "free_rank": inv["free_rank"],
            "torsion": [f.serialize() for f in inv["torsion"]],
            "min_generators": inv["min_generators"],
            "dims": {k: v for k, v in self.dims.items()},
            "dims_direct": {k: v for k, v in self.dims_direct.items()},
            "alexander_polynomial": self.alexander.serialize(),
        }


def ocmt_check(pres: ModulePresentation, boundary: dict, u) -> OCMTReport:
    u = _q(u)
    if u == 0:
        raise ValueError("u must be nonzero")
    scale = LaurentPoly({1: 1, 0: -u})
    mm = submodule_membership(boundary["m"], pres, scale)
    ll = submodule_membership(boundary["l"], pres, scale)
    inv = pres.invariants()
    pts = {str(u): u, str(1 / u): 1 / u}
    dims = {k: pres.dim_at(c) for k, c in pts.items()}
    direct = {k: pres.dim_at_direct(c) for k, c in pts.items()}
    return OCMTReport(u, mm, ll, inv["min_generators"] <= 1, inv, dims, direct,
                      alexander_polynomial(pres))


def alexander_polynomial(pres: ModulePresentation) -> LaurentPoly:
    """gcd of the maximal minors (the order of the module); zero when the
    module has positive rank."""
    s = pres.snf()
    m = len(pres.generators)
    if s.rank < m:
        return LaurentPoly()
    out = LaurentPoly.const(1)
    for f in s.invariant_factors:
        out = out * f
    return out.canonical()


def genus2_obstruction(pres: ModulePresentation) -> dict:
    inv = pres.invariants()
    return {"cyclic": inv["min_generators"] <= 1, "min_generators": inv["min_generators"]}


# -- parsing and the shipped example --------------------------------------------------

def parse_laurent(text: str) -> LaurentPoly:
    """Laurent expression in ``t`` over Q, e.g. ``2*t-5+2*t^-1``."""
    from .exactfield import parse_field
    f = parse_field(text, ("t",))
    num, den = f.num, f.den
    if len(den.terms) != 1:
        raise ValueError(f"not a Laurent polynomial: {text!r}")
    (dk,), dc = next(iter(den.terms.items()))
    out: dict = {}
    for (k,), c in num.terms.items():
        q = c / dc
        if q.irr:
            raise ValueError("Laurent coefficients must be rational")
        out[k - dk] = Fraction(int(q.rat.numerator), int(q.rat.denominator))
    return LaurentPoly(out)


def parse_matrix(text: str) -> LaurentMat:
    """One row per line, cells separated by commas; '#' starts a comment."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        rows.append([parse_laurent(cell.strip()) for cell in line.split(",")])
    if not rows:
        raise ValueError("empty matrix")
    return LaurentMat(rows)


def stevedore() -> dict:
    """The knot complement in 0-surgery on the Stevedore knot, read from the
    shipped data files."""
    rel = parse_matrix(data_path("stevedore_matrix.txt").read_text())
    closed = parse_matrix(data_path("stevedore_closed.txt").read_text())
    boundary = parse_boundary(data_path("stevedore_boundary.txt").read_text())
    P = parse_laurent
    linking = LaurentMat([[P("2*t-5+2*t^-1"), P("t-2")], [P("t^-1-2"), P("0")]])
    return {"presentation": ModulePresentation(["m_L", "m_K"], rel),
            "closed": ModulePresentation(["m_L"], closed),
            "boundary": boundary, "linking": linking, "u": Fraction(2)}


def parse_boundary(text: str) -> dict:
    """Lines ``name: c1, c2, ...``; names are m and l."""
    out = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, rest = line.partition(":")
        if not sep:
            raise ValueError(f"boundary line without ':' : {line!r}")
        out[name.strip()] = [parse_laurent(c.strip()) for c in rest.split(",")]
    if set(out) != {"m", "l"}:
        raise ValueError("boundary file must define exactly m and l")
    return out


def data_path(name: str):
    from importlib.resources import files
    return files("overcommute") / "data" / name
