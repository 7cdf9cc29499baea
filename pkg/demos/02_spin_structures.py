# Spin structures from a surgery presentation.
#
# A characteristic sublink is a set of components x with Q x = diag(Q) mod 2.
# Such a set always exists for a symmetric Q, which is the linear-algebra
# shadow of the fact that every closed oriented 3-manifold is spin.  The
# solutions form an affine space; its size counts spin structures.

# %%
import random

from lowdim.exactalg import IntMatrix, cokernel
from lowdim.surgery import FramedLinkMatrix, characteristic_solutions, spin_structure_count

# %%
examples = {
    "S^3 (framing 1)": [[1]],
    "S^1 x S^2 (framing 0)": [[0]],
    "RP^3 (framing 2)": [[2]],
    "L(3,1) (framing 3)": [[3]],
    "two 0-framed unlinked circles": [[0, 0], [0, 0]],
}
for name, rows in examples.items():
    F = FramedLinkMatrix.from_rows(rows)
    cs = characteristic_solutions(F)
    print(f"{name:32s} H1 = {str(cokernel(F.Q)):10s} x = {cs.x}  "
          f"spin structures = {spin_structure_count(F)}")

# %% [markdown]
# A quick stress run: random symmetric matrices never fail to have a
# characteristic solution.

# %%
rng = random.Random(0)
failures = 0
for _ in range(1000):
    n = rng.randint(1, 8)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(-5, 5)
    try:
        characteristic_solutions(FramedLinkMatrix(IntMatrix.from_rows(rows, n)))
    except ArithmeticError:
        failures += 1
print("matrices without a characteristic sublink:", failures)
