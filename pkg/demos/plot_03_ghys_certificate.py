"""
A commutator of two diagonal matrices in St2
============================================

Lift h(u) and h(v) to St2 and write their commutator as a product of
commutators [f, r] with r a relator.  The translation commutators
[x(s), x(t)] are imported with cost two; everything else is realized and
checked letter by letter.
"""

from collections import Counter

from overcommute.certificates import surface_datum, verify_commutator_product
from overcommute.ghys import ghys_refined

# %%
r = ghys_refined(alpha=1)
c = r.certificate
res = verify_commutator_product(c)
print("verifies:", res.ok)
print("cost", c.cost, "=", c.realized_cost, "realized +", c.axiom_cost, "imported")

# %%
# The ledger lists each step with the number of commutators it contributes.
kinds = Counter()
for e in r.ledger:
    kinds[e.kind] += e.tokens
    print(f"  {e.tokens:2d} {e.kind:8s} {e.step}")
print(dict(kinds))

# %%
# The certificate yields a surface datum of genus cost + 1.
sd = surface_datum(c)
print("genus", sd.genus, "check", sd.check(), "imported slots", sd.axiom_slots)

# %%
# Without the imported fact the translation commutators stay open.
open_ = ghys_refined(alpha=1, translations=None)
print(len(open_.unresolved), "unresolved;", open_.notes[0])
