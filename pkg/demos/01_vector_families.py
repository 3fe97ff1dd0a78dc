"""
Vector families on the paraboloid
=================================

Every step of the outer graph is a lattice vector (x, y, x^2 + y^2).
Here we build the families, look at the stripes, and check convex position.
"""

from fractions import Fraction

from spannerlb import certify_extreme_points, gen_striped_families, gen_w
from spannerlb.convex_sets import assemble_wprime

# %% The plain family for r = 4: three choices of x, three of y.
fam = gen_w(4)
print("W1:", fam.w1)
print("W2:", fam.w2)
print("|W| =", len(fam.w))

# %% A competing path may use sums, negations and differences of steps.
wp = assemble_wprime(fam)
print(len(wp), "vectors in W'")

# Each w in W beats all of W' along the normal (2x, 2y, -1).
rep = certify_extreme_points(fam)
print("certificate ok:", rep.ok, "after", rep.checked, "comparisons")

# %% The same check scales without trouble.
for r in (8, 16, 32, 64):
    print(r, certify_extreme_points(gen_w(r)).ok)

# %% Stripes group nearby vectors.  The relaxed profile takes a width fraction.
sf = gen_striped_families(16, 2, "relaxed", alpha=Fraction(1, 8))
for i in (1, 2):
    w1, w2 = sf.stripe_members(i)
    print("stripe", i, [w.x for w in w1], [w.y for w in w2])

# %% The strict profile only works once r is large compared to c.
strict = gen_striped_families(256, 2, "strict")
print("strict intervals:", strict.stripes.intervals)
