"""
Steinberg relators and their SL2 images
=======================================

The Steinberg group St2(k) is presented on letters x_a(t), a = +1 or -1.
Every relator maps to the identity matrix under the natural map to SL2(k).
Here k = Q(sqrt2)(u) and all arithmetic is exact.
"""

import random

from overcommute.exactfield import var
from overcommute.steinberg import (SCHEMAS, expand_relator, h_elem, pi_eval, random_param,
                                   rel, w_elem)

U = ("u",)
u = var("u", U)

# %%
# The diagonal element h(u) is a word of six letters and maps to diag(u, 1/u).
print(h_elem(1, u).serialize())
print(pi_eval(h_elem(1, u)))

# %%
# w(u) is antidiagonal.
print(pi_eval(w_elem(1, u)))

# %%
# Random relator instances: each expands to a word that evaluates to I.
rng = random.Random(0)
for schema in SCHEMAS:
    p = random_param(rng, U, unit=True)
    q = random_param(rng, U, unit=(schema == "R4"))
    w = expand_relator(rel(schema, 1, p, q))
    print(schema, len(w), "letters, identity:", pi_eval(w).is_identity())
