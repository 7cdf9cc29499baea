# Making Heegaard curves evenly framed by twisting along meridians.
#
# Row j of A holds the intersection numbers of curve c_j with the meridians.
# A twist along meridian i adds A[j][i]^2 to the framing of c_j; since a^2
# and a have the same parity, the right twists come from a linear system
# over F2.

# %%
import itertools

from lowdim.exactalg import IntMatrix
from lowdim.heegaard import HeegaardTwistProblem, apply_twists, solve_twists, to_framed_link
from lowdim.surgery import handle_parity

# %%
P = HeegaardTwistProblem(IntMatrix.from_rows([[1, 1], [0, 1]]), (0, 1))
sol = solve_twists(P)
print("twists:", sol.x, " framings after:", apply_twists(P, sol.x))
F = to_framed_link(P, sol.x)
print("framed link:", F.Q.tolist(), " all even:", handle_parity(F)[1])

# %% [markdown]
# Checking the parity identity by brute force on one matrix with entries of
# both signs.

# %%
A = [[3, -2, 1], [0, -3, 2], [1, 1, -1]]
P = HeegaardTwistProblem(IntMatrix.from_rows(A), (1, 0, 1))
for x in itertools.product((0, 1), repeat=3):
    quad = [v % 2 for v in apply_twists(P, x)]
    lin = [(P.f[j] + sum((A[j][i] % 2) * x[i] for i in range(3))) % 2 for j in range(3)]
    assert quad == lin
print("parity identity holds for all 8 twist vectors")

# %%
bad = HeegaardTwistProblem(IntMatrix.from_rows([[1, 1], [1, 1]]), (1, 0))
sol = solve_twists(bad)
print("unsolvable:", not sol.solvable, " certificate y =", sol.certificate)
