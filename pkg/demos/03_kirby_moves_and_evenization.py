# Kirby moves on linking matrices, and a search for all-even framings.
#
# If all framings of the surgery link are even, the 4-manifold obtained by
# attaching 2-handles to the 4-ball is parallelizable, and so is its
# boundary.  evenize() looks for blow-ups, blow-downs and handle slides that
# reach such a presentation and returns a script anyone can replay.

# %%
from lowdim.exactalg import cokernel
from lowdim.surgery import (
    EvenizeError,
    FramedLinkMatrix,
    MoveScript,
    apply_script,
    evenize,
    handle_parity,
    handle_slide,
)

# %%
F = FramedLinkMatrix.from_rows([[3, 1], [1, -1]])
print("slide 1 over 2:", handle_slide(F, 1, 2, +1).Q.tolist())

# %%
for rows in ([[1]], [[3]], [[7]], [[3, 1], [1, 3]]):
    F = FramedLinkMatrix.from_rows(rows)
    res = evenize(F)
    replayed = apply_script(F, MoveScript.from_text(res.script.to_text()))
    print(f"Q = {rows}: phase {res.phase}, {len(res.script)} moves -> {res.link.Q.tolist()}")
    print(f"   replay ok: {replayed == res.link}, even: {handle_parity(replayed)[1]}, "
          f"H1 {cokernel(F.Q)} -> {cokernel(replayed.Q)}")

# %% [markdown]
# Some inputs need more blow-ups than the default budget allows.  For Q = (5)
# the square of a characteristic vector is 5 mod 8, and matching it against
# an even end form needs four blow-ups.  The default run reports the
# exhaustion instead of guessing.

# %%
F = FramedLinkMatrix.from_rows([[5]])
try:
    evenize(F, max_nodes=5000)
except EvenizeError as exc:
    print("default budget:", exc)
res = evenize(F, max_stabilizations=4)
print("with four blow-ups:", res.link.Q.tolist(), "H1 =", cokernel(res.link.Q))
