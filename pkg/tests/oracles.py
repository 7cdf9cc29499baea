"""Seeded corpora and slow-but-obvious reference computations used by the tests.

Nothing here calls into the Smith normal form or the GF(2) solver of the
library, so agreement with these functions is a genuine cross-check.
"""

import itertools
import random
from math import gcd

from lowdim.exactalg import FGAbelianGroup, IntMatrix
from lowdim.surgery import FramedLinkMatrix


def random_symmetric(rng: random.Random, n: int, lo: int, hi: int) -> IntMatrix:
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            rows[i][j] = rows[j][i] = rng.randint(lo, hi)
    return IntMatrix.from_rows(rows, n)


def symmetric_corpus(seed: int, count: int, max_n: int, bound: int) -> list[FramedLinkMatrix]:
    rng = random.Random(seed)
    return [FramedLinkMatrix(random_symmetric(rng, rng.randint(1, max_n), -bound, bound))
            for _ in range(count)]


def random_chain_group(rng: random.Random, max_factors: int = 3, max_factor: int = 12,
                       max_free: int = 2) -> FGAbelianGroup:
    """A group Z/d1 + ... + Z^r with d1 | d2 | ... and every d_i <= max_factor."""
    torsion = []
    for _ in range(rng.randint(0, max_factors)):
        base = torsion[-1] if torsion else 1
        options = [d for d in range(max(2, base), max_factor + 1) if d % base == 0]
        if not options:
            break
        torsion.append(rng.choice(options))
    return FGAbelianGroup(rng.randint(0, max_free), tuple(torsion))


def random_element(rng: random.Random, g: FGAbelianGroup, free_bound: int = 20):
    coords = [rng.randrange(d) for d in g.torsion]
    coords += [rng.randint(-free_bound, free_bound) for _ in range(g.free_rank)]
    return g.element(coords)


# --- integer matrix oracles ------------------------------------------------

def det_cofactor(rows):
    """Laplace expansion; fine for the tiny sizes we feed it."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j]:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * rows[0][j] * det_cofactor(minor)
    return total


def determinantal_invariants(m: IntMatrix) -> tuple[int, ...]:
    """Invariant factors from gcds of k x k minors: d_k / d_{k-1}."""
    rows = m.tolist()
    divisors = [1]
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for ri in itertools.combinations(range(m.rows), k):
            for ci in itertools.combinations(range(m.cols), k):
                g = gcd(g, det_cofactor([[rows[i][j] for j in ci] for i in ri]))
        if g == 0:
            break
        divisors.append(g)
    factors = [divisors[k] // divisors[k - 1] for k in range(1, len(divisors))]
    return tuple(factors) + (0,) * (min(m.rows, m.cols) - len(factors))


def cokernel_oracle(m: IntMatrix) -> tuple[int, tuple[int, ...]]:
    """(free rank, non-unit invariant factors) of Z^rows / image(m)."""
    inv = determinantal_invariants(m)
    nonzero = [d for d in inv if d]
    return m.rows - len(nonzero), tuple(d for d in nonzero if d > 1)


# --- GF(2) oracles ----------------------------------------------------------

def f2_vectors(n: int):
    return itertools.product((0, 1), repeat=n)


def f2_apply(rows, x):
    return tuple(sum(a * b for a, b in zip(r, x)) % 2 for r in rows)


def f2_solutions(rows, b) -> list[tuple[int, ...]]:
    n = len(rows[0]) if rows else 0
    target = tuple(v % 2 for v in b)
    return [x for x in f2_vectors(n) if f2_apply(rows, x) == target]


def hom_to_z2_count(q: IntMatrix) -> int:
    """|Hom(coker q, Z/2)|: homomorphisms Z^n -> Z/2 vanishing on the columns of q."""
    rows = q.tolist()
    cols = [[rows[i][j] for i in range(q.rows)] for j in range(q.cols)]
    return sum(1 for y in f2_vectors(q.rows)
               if all(sum(a * b for a, b in zip(y, c)) % 2 == 0 for c in cols))
