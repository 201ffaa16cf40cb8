"""Independent oracles shared by the tests (sympy, naive loops)."""

from __future__ import annotations

import sympy as sp

from overcommute.words import Stein, Word

NAMES = ("s", "t", "u", "v")
SYM = {n: sp.Symbol(n) for n in NAMES}


def fe_to_sympy(x) -> sp.Expr:
    text = x.serialize().replace("^", "**").replace("r2", "sqrt(2)")
    return sp.sympify(text, locals=SYM)


def sl2_sympy(w: Word) -> sp.Matrix:
    """Product of the elementary matrices, multiplied out by sympy."""
    M = sp.eye(2)
    for l in w.letters:
        g = l.gen
        assert isinstance(g, Stein)
        t = fe_to_sympy(g.t)
        E = sp.Matrix([[1, t], [0, 1]]) if g.alpha == 1 else sp.Matrix([[1, 0], [t, 1]])
        if l.sign == -1:
            E = E.inv()
        M = M * E
    return M.applyfunc(sp.simplify)


def is_identity_sympy(M: sp.Matrix) -> bool:
    return all(sp.simplify(e) == 0 for e in (M - sp.eye(2)))
