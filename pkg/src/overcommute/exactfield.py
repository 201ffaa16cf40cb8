"""Exact arithmetic in k = Q(sqrt2)(X_1, ..., X_n).

Scalars live in ``QSqrt2`` (pairs of gmpy2 rationals), polynomials in ``MultiPoly``
(sparse dicts keyed by exponent tuples over an explicit variable list) and
field elements in ``FieldElem`` (unreduced num/den pairs compared by
cross-multiplication).

Fractions are only normalised cheaply: common monomials and the leading
coefficient of the denominator are divided out, and univariate fractions are
fully reduced by a Euclidean gcd.  Multivariate fractions may stay
unreduced, so ``fe_eq`` never relies on the representation.
"""

from __future__ import annotations

import hashlib
import re
from fractions import Fraction

from gmpy2 import mpq

_MPQ = type(mpq(0))

__all__ = [
    "QSqrt2", "MultiPoly", "FieldElem", "VariableMismatch",
    "fe_arith", "fe_inv", "fe_eq", "fe_substitute", "parse_field",
    "field_vars", "const", "var",
]


class VariableMismatch(ValueError):
    pass


def _frac(x):
    if type(x) is _MPQ:
        return x
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    raise TypeError(f"not a rational: {x!r}")


class QSqrt2:
    """The number ``rat + irr*sqrt(2)`` with rational parts."""

    __slots__ = ("rat", "irr")

    def __init__(self, rat=0, irr=0):
        self.rat = rat if type(rat) is _MPQ else _frac(rat)
        self.irr = irr if type(irr) is _MPQ else _frac(irr)

    @staticmethod
    def coerce(x) -> QSqrt2:
        if isinstance(x, QSqrt2):
            return x
        return QSqrt2(x, 0)

    def is_zero(self) -> bool:
        return not self.rat and not self.irr

    def __bool__(self):
        return not self.is_zero()

    @staticmethod
    def _operand(x):
        # None for types that should handle the operation themselves
        if isinstance(x, QSqrt2):
            return x
        if isinstance(x, (int, Fraction, _MPQ)):
            return QSqrt2(x, 0)
        return None

    def __add__(self, other):
        o = QSqrt2._operand(other)
        if o is None:
            return NotImplemented
        return QSqrt2(self.rat + o.rat, self.irr + o.irr)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2(-self.rat, -self.irr)

    def __sub__(self, other):
        o = QSqrt2._operand(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = QSqrt2._operand(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = QSqrt2._operand(other)
        if o is None:
            return NotImplemented
        return QSqrt2(self.rat * o.rat + 2 * self.irr * o.irr,
                      self.rat * o.irr + self.irr * o.rat)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.rat * self.rat - 2 * self.irr * self.irr

    def inverse(self) -> QSqrt2:
        n = self.norm()
        if n == 0:
            # only 0 has norm 0 since sqrt2 is irrational
            raise ZeroDivisionError("inverse of 0 in Q(sqrt2)")
        return QSqrt2(self.rat / n, -self.irr / n)

    def __truediv__(self, other):
        return self * QSqrt2.coerce(other).inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, _MPQ)):
            other = QSqrt2(other)
        if not isinstance(other, QSqrt2):
            return NotImplemented
        return self.rat == other.rat and self.irr == other.irr

    def __hash__(self):
        if not self.irr:
            return hash(self.rat)
        return hash((self.rat, self.irr))

    def is_rational(self) -> bool:
        return not self.irr

    def __repr__(self):
        return f"QSqrt2({self.rat}, {self.irr})"

    def __str__(self):
        if not self.irr:
            return str(self.rat)
        if not self.rat:
            return _scaled_r2(self.irr)
        sign = "-" if self.irr < 0 else "+"
        return f"({self.rat}{sign}{_scaled_r2(abs(self.irr))})"


def _scaled_r2(c: Fraction) -> str:
    if c == 1:
        return "r2"
    if c == -1:
        return "-r2"
    return f"{c}*r2"


ZERO = QSqrt2(0)
ONE = QSqrt2(1)

# modular fingerprint: p = 2^61-1 is 3 mod 4 and 7 mod 8, so 2 is a square
_P = (1 << 61) - 1
_SQRT2_MOD_P = pow(2, (_P + 1) // 4, _P)
assert _SQRT2_MOD_P * _SQRT2_MOD_P % _P == 2


def _point(name: str) -> int:
    h = hashlib.sha256(name.encode()).digest()
    return int.from_bytes(h[:8], "big") % _P


def _mod_frac(q: Fraction) -> int | None:
    d = int(q.denominator) % _P
    if d == 0:
        return None
    return int(q.numerator) % _P * pow(d, -1, _P) % _P


def _mod_q2(c: QSqrt2) -> int | None:
    a, b = _mod_frac(c.rat), _mod_frac(c.irr)
    if a is None or b is None:
        return None
    return (a + b * _SQRT2_MOD_P) % _P


class MultiPoly:
    """Sparse polynomial with QSqrt2 coefficients over a fixed variable tuple.

    Exponent vectors are tuples aligned with ``vars``; zero coefficients are
    never stored.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: dict | None = None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                c = QSqrt2.coerce(c)
                if c.is_zero():
                    continue
                if len(e) != n:
                    raise ValueError("exponent length does not match variables")
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def constant(cls, vars, c) -> MultiPoly:
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def variable(cls, vars, name: str) -> MultiPoly:
        vars = tuple(vars)
        e = tuple(1 if v == name else 0 for v in vars)
        if sum(e) != 1:
            raise VariableMismatch(f"unknown variable {name!r} in {vars}")
        return cls(vars, {e: ONE})

    def _check(self, other: MultiPoly):
        if self.vars != other.vars:
            raise VariableMismatch(f"{self.vars} != {other.vars}")

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> QSqrt2:
        return self.terms.get((0,) * len(self.vars), ZERO)

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return MultiPoly(self.vars, out)

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return MultiPoly(self.vars, out)

    def scale(self, c) -> MultiPoly:
        c = QSqrt2.coerce(c)
        return MultiPoly(self.vars, {e: v * c for e, v in self.terms.items()})

    def shift(self, e: tuple[int, ...]) -> MultiPoly:
        """Multiply by the monomial with exponent ``e`` (entries may be negative
        as long as the result stays a polynomial)."""
        return MultiPoly(self.vars, {tuple(a + b for a, b in zip(k, e)): c
                                     for k, c in self.terms.items()})

    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self.terms))

    def sorted_terms(self):
        # lex order on the fixed variable list, highest first
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    def leading(self):
        return self.sorted_terms()[0]

    def used_vars(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def modval(self) -> int | None:
        acc = 0
        pts = [_point(v) for v in self.vars]
        for e, c in self.terms.items():
            cv = _mod_q2(c)
            if cv is None:
                return None
            m = cv
            for p, k in zip(pts, e):
                if k:
                    m = m * pow(p, k, _P) % _P
            acc = (acc + m) % _P
        return acc

    def divexact(self, other: MultiPoly) -> MultiPoly | None:
        """Quotient if ``other`` divides ``self`` exactly (lex division), else None."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = self
        q = MultiPoly(self.vars)
        le, lc = other.leading()
        lc_inv = lc.inverse()
        steps = 0
        while not rem.is_zero():
            re_, rc = rem.leading()
            diff = tuple(a - b for a, b in zip(re_, le))
            if any(d < 0 for d in diff):
                return None
            t = MultiPoly(self.vars, {diff: rc * lc_inv})
            q = q + t
            rem = rem - t * other
            steps += 1
            if steps > 10000:
                return None
        return q

    def evaluate(self, values: list):
        """Evaluate with ``values`` aligned to ``vars`` (FieldElem or scalars)."""
        acc = None
        for e, c in self.terms.items():
            mono = None
            for v, k in zip(values, e):
                if k:
                    p = _power(v, k)
                    mono = p if mono is None else mono * p
            term = c if mono is None else mono * c
            acc = term if acc is None else acc + term
        return acc

    def fmt(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}"
                            for v, k in zip(self.vars, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == ONE:
                parts.append(mono)
            elif c == -ONE:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        s = parts[0]
        for p in parts[1:]:
            s += p if p.startswith("-") else "+" + p
        return s

    def __repr__(self):
        return f"MultiPoly({self.fmt()})"


def _power(v, k: int):
    out = v
    for _ in range(k - 1):
        out = out * v
    return out


# -- univariate helpers used for normalisation --------------------------------

def _uni_coeffs(p: MultiPoly, i: int) -> list[QSqrt2]:
    deg = max((e[i] for e in p.terms), default=0)
    out = [ZERO] * (deg + 1)
    for e, c in p.terms.items():
        out[e[i]] = c
    return out


def _uni_from(vars, i: int, coeffs: list[QSqrt2]) -> MultiPoly:
    n = len(vars)
    terms = {}
    for k, c in enumerate(coeffs):
        if not c.is_zero():
            e = [0] * n
            e[i] = k
            terms[tuple(e)] = c
    return MultiPoly(vars, terms)


def _uni_trim(a):
    while a and a[-1].is_zero():
        a = a[:-1]
    return a


def _uni_divmod(a, b):
    a = list(a)
    q = [ZERO] * max(len(a) - len(b) + 1, 1)
    inv = b[-1].inverse()
    while len(a) >= len(b) and a:
        c = a[-1] * inv
        k = len(a) - len(b)
        q[k] = c
        for j, bc in enumerate(b):
            a[j + k] = a[j + k] - c * bc
        a = _uni_trim(a[:-1] if a[-1].is_zero() else a)
    return _uni_trim(q), a


def _mod_uni(a):
    out = [_mod_q2(c) for c in a]
    if any(c is None for c in out) or not out or out[-1] == 0:
        return None
    return out


def _gcd_is_trivial_mod_p(a, b) -> bool:
    """Cheap sufficient test for gcd(a, b) = 1 via reduction mod p.

    A false negative only costs an exact gcd; a false positive would leave
    a fraction unreduced, which never affects equality decisions.
    """
    x, y = _mod_uni(a), _mod_uni(b)
    if x is None or y is None:
        return False
    while y:
        inv = pow(y[-1], -1, _P)
        while len(x) >= len(y):
            c = x[-1] * inv % _P
            k = len(x) - len(y)
            for j, yc in enumerate(y):
                x[j + k] = (x[j + k] - c * yc) % _P
            while x and x[-1] == 0:
                x.pop()
        x, y = y, x
    return len(x) == 1


def _uni_gcd(a, b):
    a, b = _uni_trim(a), _uni_trim(b)
    if len(a) > 1 and len(b) > 1 and _gcd_is_trivial_mod_p(a, b):
        return [ONE]
    while b:
        _, r = _uni_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


class FieldElem:
    """Element num/den of Q(sqrt2)(vars).  Immutable."""

    __slots__ = ("num", "den", "_mod")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None,
                 normalize: bool = True):
        if den is None:
            den = MultiPoly.constant(num.vars, 1)
        if num.vars != den.vars:
            raise VariableMismatch(f"{num.vars} != {den.vars}")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if normalize:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._mod = _UNSET

    @property
    def vars(self) -> tuple[str, ...]:
        return self.num.vars

    # -- coercion --------------------------------------------------------------
    def _lift(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            if other.vars == self.vars:
                return other
            if not other.vars or other.is_constant():
                return FieldElem(MultiPoly.constant(self.vars, other.constant_value()))
            if not self.vars or self.is_constant():
                raise _Promote(other.vars)
            raise VariableMismatch(f"{self.vars} != {other.vars}")
        if isinstance(other, (int, Fraction, _MPQ, QSqrt2)):
            return FieldElem(MultiPoly.constant(self.vars, other))
        raise TypeError(f"cannot combine FieldElem with {type(other).__name__}")

    def _binary(self, other, op):
        try:
            o = self._lift(other)
            a = self
        except _Promote as p:
            a = self.promote(p.vars)
            o = other
        return op(a, o)

    def promote(self, vars) -> FieldElem:
        """Re-express a constant element over ``vars``."""
        if not self.is_constant():
            raise VariableMismatch(f"{self.vars} != {tuple(vars)}")
        return FieldElem(MultiPoly.constant(tuple(vars), self.constant_value()))

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> QSqrt2:
        return self.num.constant_value() / self.den.constant_value()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        return self._binary(other, lambda a, b: FieldElem(a.num * b.den + b.num * a.den,
                                                          a.den * b.den))

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: FieldElem(a.num * b.den - b.num * a.den,
                                                          a.den * b.den))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FieldElem(-self.num, self.den, normalize=False)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: FieldElem(a.num * b.num, a.den * b.den))

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        return FieldElem(self.den, self.num)

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a * b.inverse())

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = FieldElem(MultiPoly.constant(self.vars, 1))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison --------------------------------------------------------------
    def modval(self):
        if self._mod is _UNSET:
            n, d = self.num.modval(), self.den.modval()
            if n is None or d is None or d == 0:
                self._mod = None
            else:
                self._mod = n * pow(d, -1, _P) % _P
        return self._mod

    def equals(self, other) -> bool:
        if self is other:
            return True
        if (isinstance(other, FieldElem) and self.vars == other.vars
                and self.num == other.num and self.den == other.den):
            return True                     # same representation; never a false positive
        try:
            o = self._lift(other)
            a = self
        except _Promote as p:
            a, o = self.promote(p.vars), other
        ma, mo = a.modval(), o.modval()
        if ma is not None and mo is not None and ma != mo:
            return False
        return (a.num * o.den - o.num * a.den).is_zero()

    def __eq__(self, other):
        if isinstance(other, (FieldElem, int, Fraction, _MPQ, QSqrt2)):
            try:
                return self.equals(other)
            except VariableMismatch:
                return False
        return NotImplemented

    def __hash__(self):
        # equal elements share the value at a fixed point mod p
        m = self.modval()
        return hash(("fe", m))

    # -- substitution / serialisation -----------------------------------------------
    def substitute(self, assignment: dict) -> FieldElem:
        return fe_substitute(self, assignment)

    def serialize(self) -> str:
        n = self.num.fmt()
        if self.den.is_constant() and self.den.constant_value() == ONE:
            return n
        return f"({n})/({self.den.fmt()})"

    def __str__(self):
        return self.serialize()

    def __repr__(self):
        return f"FieldElem({self.serialize()})"


class _Promote(Exception):
    def __init__(self, vars):
        self.vars = vars


_UNSET = object()


def _normalize(num: MultiPoly, den: MultiPoly):
    vars = num.vars
    if num.is_zero():
        return num, MultiPoly.constant(vars, 1)
    # common monomial factor
    mn, md = num.min_exponents(), den.min_exponents()
    common = tuple(min(a, b) for a, b in zip(mn, md))
    if any(common):
        neg = tuple(-c for c in common)
        num, den = num.shift(neg), den.shift(neg)
    # cheap exact cancellation
    if not den.is_constant():
        used = num.used_vars() | den.used_vars()
        if len(used) == 1:
            (i,) = used
            a, b = _uni_coeffs(num, i), _uni_coeffs(den, i)
            g = _uni_gcd(a, b)
            if len(g) > 1:
                a, _ = _uni_divmod(a, g)
                b, _ = _uni_divmod(b, g)
                num, den = _uni_from(vars, i, a), _uni_from(vars, i, b)
        else:
            q = num.divexact(den)
            if q is not None:
                num, den = q, MultiPoly.constant(vars, 1)
    # leading coefficient of the denominator becomes 1
    _, lc = den.leading()
    if lc != ONE:
        inv = lc.inverse()
        num, den = num.scale(inv), den.scale(inv)
    return num, den


# -- module level API ------------------------------------------------------------

def field_vars(*names: str) -> tuple[str, ...]:
    return tuple(names)


def const(c, vars=()) -> FieldElem:
    if isinstance(c, FieldElem):
        return c if c.vars == tuple(vars) else c.promote(vars)
    return FieldElem(MultiPoly.constant(tuple(vars), c))


def var(name: str, vars) -> FieldElem:
    return FieldElem(MultiPoly.variable(tuple(vars), name))


def fe_arith(op: str, a: FieldElem, b: FieldElem) -> FieldElem:
    if a.vars != b.vars:
        raise VariableMismatch(f"{a.vars} != {b.vars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def fe_inv(a: FieldElem) -> FieldElem:
    return a.inverse()


def fe_eq(a: FieldElem, b: FieldElem) -> bool:
    if a.vars != b.vars:
        raise VariableMismatch(f"{a.vars} != {b.vars}")
    return a.equals(b)


def fe_substitute(a: FieldElem, assignment: dict, vars=None) -> FieldElem:
    """Substitute every variable of ``a`` using ``assignment``.

    Values may be FieldElems (over a common variable set), ints, Fractions or
    QSqrt2.  Raises ZeroDivisionError if the denominator vanishes.
    """
    missing = [v for i, v in enumerate(a.vars)
               if i in (a.num.used_vars() | a.den.used_vars()) and v not in assignment]
    if missing:
        raise KeyError(f"assignment misses {missing}")
    target = vars
    if target is None:
        target = ()
        for v in assignment.values():
            if isinstance(v, FieldElem) and not v.is_constant():
                target = v.vars
                break
    values = []
    for name in a.vars:
        val = assignment.get(name, 0)
        values.append(const(val, target) if not isinstance(val, FieldElem)
                      else (val if val.vars == tuple(target) else val.promote(target)))
    zero = const(0, target)
    n = a.num.evaluate(values)
    d = a.den.evaluate(values)
    n = zero + n if n is not None else zero
    d = zero + d if d is not None else zero
    if d.is_zero():
        raise ZeroDivisionError("denominator vanishes after substitution")
    return n / d


# -- parser ------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(r2)\b|([a-z][a-z0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SyntaxError(f"unexpected input at {text[pos:]!r}")
        num, r2, ident, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif r2 is not None:
            out.append(("r2", r2))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return out


class _FieldParser:
    def __init__(self, tokens, vars):
        self.toks = tokens
        self.i = 0
        self.vars = vars

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise SyntaxError(f"expected {value!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        if self.peek()[1] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            sign = 1
            if self.peek()[1] == "-":
                self.take()
                sign = -1
            kind, val = self.take()
            if kind != "num":
                raise SyntaxError("exponent must be an integer")
            base = base ** (sign * int(val))
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return const(int(val), self.vars)
        if kind == "r2":
            self.take()
            return const(QSqrt2(0, 1), self.vars)
        if kind == "id":
            self.take()
            if val not in self.vars:
                raise VariableMismatch(f"variable {val!r} not in {self.vars}")
            return var(val, self.vars)
        if val == "(":
            self.take("(")
            v = self.expr()
            self.take(")")
            return v
        raise SyntaxError(f"unexpected token {val!r}")


def parse_field(text: str, vars=None) -> FieldElem:
    """Parse a field expression such as ``"2*t-5+2*t^-1"`` or ``"r2*u/(1-u)"``.

    When ``vars`` is omitted the variables found in the text are used, sorted.
    """
    toks = _tokenize(text)
    if vars is None:
        vars = tuple(sorted({v for k, v in toks if k == "id"}))
    p = _FieldParser(toks, tuple(vars))
    val = p.expr()
    if p.i != len(toks):
        raise SyntaxError(f"trailing input in {text!r}")
    return val

