"""
An Alexander module over Q[t, 1/t]
==================================

A module is given by generators and relation columns.  Smith normal form
over the Laurent ring gives its invariants; a second SNF decides whether
boundary vectors lie in (t - u) times the module.
"""

from fractions import Fraction

from overcommute.alexander import (alexander_polynomial, genus2_obstruction, ocmt_check,
                                   smith_normal_form, stevedore)

S = stevedore()
pres = S["presentation"]
print(pres.relations)

# %%
# Invariants: one free summand and one torsion summand.
inv = pres.invariants()
print("free rank", inv["free_rank"], "torsion", [f.serialize() for f in inv["torsion"]])

# %%
# The full linking matrix has invariant factors 1 and (t-2)(t-1/2).
snf = smith_normal_form(S["linking"])
print([f.serialize() for f in snf.invariant_factors], "U A V = D:", snf.check(S["linking"]))

# %%
# Boundary divisibility at u = 2, with witnesses.
rep = ocmt_check(pres, S["boundary"], S["u"])
for k in ("m_in_(t-u)H1", "l_in_(t-u)H1"):
    print(k, rep.to_json()[k])
print("dims", rep.dims)

# %%
# The polynomial of the closed manifold vanishes at 1/u.
delta = alexander_polynomial(S["closed"])
print(delta.primitive_integer().serialize(), "at 1/2:", delta.evaluate(Fraction(1, 2)))
print(genus2_obstruction(pres))
