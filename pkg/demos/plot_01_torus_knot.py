"""
Meridian and longitude of a torus knot
======================================

In the group <a, b | a^p b^-q> the longitude a^p is central, so the
commutator of meridian and longitude is a product of relators.  Two relator
occurrences of opposite sign fold into a single commutator [f, r].
"""

from overcommute.certificates import fold_pairs, verify_commutator_product
from overcommute.torus import torus_knot

# %%
# The trefoil: p = 2, q = 3.  The meridian is a^u b^v with q u + p v = 1.
tk = torus_knot(2, 3)
print("meridian  ", tk.meridian.serialize())
print("longitude ", tk.longitude.serialize())

# %%
# The relator product has two factors, one r and one r^-1.
for f in tk.relator_product.factors:
    print("  conj", f.conjugator.serialize() or "1", "relator", f.relator, "sign", f.sign)

# %%
# Folding the pair gives one commutator, hence a genus-2 surface datum.
folded = fold_pairs(tk.relator_product)
print("cost after folding:", folded.cost, verify_commutator_product(folded).ok)
print("genus bound:", tk.datum.genus)

# %%
# The same holds for every coprime pair.
for p, q in [(3, 5), (4, 7), (5, 12)]:
    print((p, q), torus_knot(p, q).to_json()["cl_R_cost"])
