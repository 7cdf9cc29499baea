# Combings as symbols: Euler classes, comparison classes and Pontryagin surgery.
#
# The ledger stores, for each pair of combings it has seen, the two
# comparison classes alpha(v, w) and alpha(v, -w).  Surgery along a class b
# lowers the Euler class by 2b, so a combing with vanishing Euler class
# exists exactly when the Euler class is even.

# %%
from lowdim.combing import CombingLedger, compare, is_parallelizable, new_ledger, pontryagin_surgery, validate
from lowdim.exactalg import FGAbelianGroup

# %%
G = FGAbelianGroup(free_rank=1, torsion=(4,))
L = new_ledger(G, G.element((2, 6)))
w = pontryagin_surgery(L, "v0", G.element((1, 1)))
print("euler(v0) =", L.euler["v0"], " euler(w) =", L.euler[w])
print("alpha(v0, w) =", compare(L, "v0", w), " alpha(w, v0) =", compare(L, w, "v0"))

ok, witness = is_parallelizable(L)
print("parallelizable:", ok, " witness", witness, "with euler", L.euler[witness])
print("violations:", validate(L))

# %% [markdown]
# The ledger is plain text, so it can be inspected or checked with the CLI
# (`lowdim ledger file`).

# %%
text = L.to_text()
print(text)
assert CombingLedger.from_text(text).to_text() == text

# %% [markdown]
# A class that is not divisible by two blocks the construction.

# %%
Z2 = FGAbelianGroup(torsion=(2,))
print("Z/2 with e = 1:", is_parallelizable(new_ledger(Z2, Z2.element((1,)))))
