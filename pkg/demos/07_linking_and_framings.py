# Linking numbers of polygonal curves, and when a framing extends over a
# Seifert surface.
#
# Linking numbers are computed exactly from signed crossings in a generic
# projection.  A floating-point Gauss integral serves as an independent
# check.

# %%
import numpy as np

from lowdim.linkgeom import (
    crossing_linking,
    extends_over_seifert,
    gauss_linking,
    generic_directions,
    hopf_link,
    linking_number,
    pushoff,
    self_linking,
    twisted_unknot,
)

# %%
a, b = hopf_link()
dirs = generic_directions(a, b, 3)
print("Hopf link, three projections:", [crossing_linking(a, b, d) for d in dirs])
print("Gauss integral:", round(gauss_linking(a, b), 6))
print("reversing one component:", linking_number(a, b.reversed()))

# %% [markdown]
# A round unknot with a normal field turning k times.  The self-linking is k,
# and the framing extends over the spanning disk exactly when k is odd.

# %%
rows = []
for k in range(-4, 5):
    field = twisted_unknot(k)
    sl = self_linking(field)
    g = gauss_linking(field.curve, pushoff(field))
    rows.append((k, sl, g, extends_over_seifert(field)))
table = np.array([(k, sl, g) for k, sl, g, _ in rows])
print("max |gauss - self_linking| =", float(np.max(np.abs(table[:, 2] - table[:, 1]))))
for k, sl, _, ext in rows:
    print(f"k = {k:+d}: self-linking {sl:+d}, extends over the disk: {ext}")
