# The mod-2 pairing of a plane field with a closed surface.
#
# The class splits into two terms: chi(S) mod 2 from the tangent bundle, and
# a crosscap term that only appears for non-orientable surfaces.  The terms
# always cancel.

# %%
from lowdim.surfaces import ClosedSurface, euler_characteristic, pairing_terms, pairing_w_Fv

# %%
print(f"{'surface':8s} {'chi':>4s}  terms   pairing")
for token in ["o0", "o1", "o2", "n1", "n2", "n3", "n7"]:
    s = ClosedSurface.parse(token)
    print(f"{token:8s} {euler_characteristic(s):4d}  {pairing_terms(s)}  {pairing_w_Fv(s)}")

# %%
assert all(pairing_w_Fv(ClosedSurface.orientable_of_genus(g)) == 0 for g in range(51))
assert all(pairing_w_Fv(ClosedSurface.projective_sum(h)) == 0 for h in range(1, 51))
print("pairing vanishes for every g <= 50 and h <= 50")
