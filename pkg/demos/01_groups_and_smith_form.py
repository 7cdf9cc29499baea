# Integer matrices, Smith normal form and finitely generated abelian groups.
#
# Everything here is exact: entries are Python ints, and the Smith form comes
# with the unimodular matrices that certify it.

# %%
from lowdim.exactalg import FGAbelianGroup, IntMatrix, cokernel, is_even, mod2_reduction, smith_normal_form

# %% [markdown]
# The linking matrix of the Hopf link with framings 2 and 2.  Its cokernel is
# the first homology of the 3-manifold obtained by surgery on that link.

# %%
Q = IntMatrix.from_rows([[2, 1], [1, 2]])
U, D, V = smith_normal_form(Q)
print("D =", D.tolist())
print("U Q V == D:", U @ Q @ V == D, " det U =", U.det(), " det V =", V.det())
print("coker Q =", cokernel(Q))

# %% [markdown]
# Group elements list torsion coordinates first, then free coordinates.
# Evenness asks whether e = 2b for some b; the image in G/2G answers the
# same question without producing b.

# %%
G = FGAbelianGroup(free_rank=1, torsion=(4,))
for coords in [(2, 6), (1, 6), (2, 3), (0, 0)]:
    e = G.element(coords)
    ev = is_even(G, e)
    print(f"e = {e}: even = {ev.even}, half = {ev.half}, image in G/2G = {mod2_reduction(G, e)}")
