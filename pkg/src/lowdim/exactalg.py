"""Exact linear algebra over Z and F2, and finitely generated abelian groups.

Everything here works on Python ints, so there is no overflow and no
rounding.  Matrices are small immutable value objects; the heavy lifting
(Smith normal form, GF(2) elimination) is written directly on lists of
ints / int bitsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Iterable, Iterator, NamedTuple, Sequence


class ParseError(ValueError):
    """Malformed text input.  ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.message = message
        self.line = line
        self.source = source
        super().__init__(str(self))

    def __str__(self) -> str:
        where = self.source or "<input>"
        if self.line is not None:
            where = f"{where}:{self.line}"
        return f"{where}: {self.message}"


class GroupMismatchError(ValueError):
    """An element was used with a group it does not belong to."""


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimension")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entry count does not match shape {self.rows}x{self.cols}")
        for r in self.entries:
            for a in r:
                if not isinstance(a, int) or isinstance(a, bool):
                    raise TypeError(f"matrix entries must be int, got {a!r}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(int(a) for a in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(n, n, tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(
            tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols_b = list(zip(*other.entries)) if other.rows else [()] * other.cols
        out = tuple(
            tuple(sum(a * b for a, b in zip(r, c)) for c in cols_b) for r in self.entries
        )
        return IntMatrix(self.rows, other.cols, out)

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.entries[i][i] for i in range(min(self.rows, self.cols)))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def is_diagonal(self) -> bool:
        return all(a == 0 for i, r in enumerate(self.entries) for j, a in enumerate(r) if i != j)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.tolist()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def to_text(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(str(a) for a in r) for r in self.entries]
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.entries) + "]"


@dataclass(frozen=True)
class F2Matrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entry count does not match shape {self.rows}x{self.cols}")
        if any(a not in (0, 1) for r in self.entries for a in r):
            raise ValueError("F2 matrix entries must be 0 or 1")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "F2Matrix":
        data = tuple(tuple(int(a) for a in r) for r in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        return cls(len(data), cols, data)

    @classmethod
    def reduce(cls, m: IntMatrix) -> "F2Matrix":
        """Reduction mod 2 of an integer matrix."""
        return cls(m.rows, m.cols, tuple(tuple(a & 1 for a in r) for r in m.entries))

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum(a & b for a, b in zip(r, x)) & 1 for r in self.entries)

    def row_bits(self) -> list[int]:
        return [_to_bits(r) for r in self.entries]

    def to_text(self) -> str:
        return IntMatrix(self.rows, self.cols, self.entries).to_text()


def parse_matrix_text(text: str, *, f2: bool = False, source: str | None = None,
                      first_line: int = 1):
    """Parse the "rows cols" + row-major integers format.

    Blank lines and lines starting with '#' are ignored.  Numbers may be
    spread over lines arbitrarily.  Returns an IntMatrix (or F2Matrix when
    ``f2`` is set).
    """
    tokens: list[tuple[str, int]] = []
    for offset, raw in enumerate(text.splitlines()):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens += [(t, first_line + offset) for t in line.split()]
    if len(tokens) < 2:
        raise ParseError("expected 'rows cols' header", first_line, source)
    try:
        rows, cols = int(tokens[0][0]), int(tokens[1][0])
    except ValueError:
        raise ParseError("matrix header must be two integers", tokens[0][1], source) from None
    if rows < 0 or cols < 0:
        raise ParseError("negative matrix dimension", tokens[0][1], source)
    body = tokens[2:]
    if len(body) != rows * cols:
        line = body[-1][1] if body else tokens[1][1]
        raise ParseError(f"expected {rows * cols} entries, found {len(body)}", line, source)
    values = []
    for tok, lineno in body:
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"not an integer: {tok!r}", lineno, source) from None
        if f2 and v not in (0, 1):
            raise ParseError(f"F2 entry must be 0 or 1, got {v}", lineno, source)
        values.append(v)
    data = tuple(tuple(values[i * cols:(i + 1) * cols]) for i in range(rows))
    return (F2Matrix if f2 else IntMatrix)(rows, cols, data)


# ---------------------------------------------------------------------------
# Smith normal form


class SmithForm(NamedTuple):
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix


def smith_normal_form(m: IntMatrix) -> SmithForm:
    """Return unimodular U, V and diagonal D with U @ m @ V == D.

    The diagonal is non-negative and satisfies d1 | d2 | ...; zeros come
    last.  Pivot: the nonzero entry of least absolute value in the active
    block, ties broken by lowest (row, col).
    """
    r, c = m.shape
    a = m.tolist()
    u = IntMatrix.identity(r).tolist()
    v = IntMatrix.identity(c).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(r, c)):
        while True:
            pivot = None
            for i in range(t, r):
                for j in range(t, c):
                    x = a[i][j]
                    if x and (pivot is None or abs(x) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return _finish(a, u, v, r, c)
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = a[t][t]
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, c):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, r) for j in range(t + 1, c)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return _finish(a, u, v, r, c)


def _finish(a, u, v, r, c) -> SmithForm:
    for t in range(min(r, c)):
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return SmithForm(IntMatrix.from_rows(u, r), IntMatrix.from_rows(a, c), IntMatrix.from_rows(v, c))


def invariant_factors(m: IntMatrix) -> tuple[int, ...]:
    """Diagonal of the Smith form (length min(rows, cols))."""
    return smith_normal_form(m).D.diagonal()


# ---------------------------------------------------------------------------
# abelian groups


@dataclass(frozen=True)
class FGAbelianGroup:
    """Z^free_rank (+) Z/d1 (+) ... (+) Z/dk with d1 | d2 | ... and each di >= 2.

    Element coordinates list the torsion residues first (in factor order)
    and then the free coordinates, matching the order in which a Smith
    diagonal reads off the cokernel.
    """

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        if any(d < 2 for d in self.torsion):
            raise ValueError(f"torsion factors must be >= 2: {self.torsion}")
        for d1, d2 in zip(self.torsion, self.torsion[1:]):
            if d2 % d1:
                raise ValueError(f"invariant factors must form a divisibility chain: {self.torsion}")

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        return prod(self.torsion) if self.is_finite() else None

    def element(self, coords: Sequence[int]) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.ngens)

    def elements(self) -> Iterator["GroupElement"]:
        """All elements of a finite group, in lexicographic coordinate order."""
        if not self.is_finite():
            raise ValueError("cannot enumerate an infinite group")

        def rec(i, acc):
            if i == len(self.torsion):
                yield GroupElement(self, tuple(acc))
                return
            for x in range(self.torsion[i]):
                yield from rec(i + 1, acc + [x])

        yield from rec(0, [])

    def mod2_quotient(self) -> "FGAbelianGroup":
        """G / 2G, which is (Z/2)^(free rank + number of even torsion factors)."""
        k = self.free_rank + sum(1 for d in self.torsion if d % 2 == 0)
        return FGAbelianGroup(0, (2,) * k)

    def two_torsion_rank(self) -> int:
        """dim over F2 of Hom(G, Z/2)."""
        return self.mod2_quotient().ngens

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.describe()


@dataclass(frozen=True)
class GroupElement:
    group: FGAbelianGroup
    coords: tuple[int, ...] = field(default=())

    def __post_init__(self):
        g = self.group
        if len(self.coords) != g.ngens:
            raise GroupMismatchError(
                f"{g.describe()} needs {g.ngens} coordinates, got {len(self.coords)}")
        reduced = tuple(int(x) % d for x, d in zip(self.coords, g.torsion))
        reduced += tuple(int(x) for x in self.coords[len(g.torsion):])
        object.__setattr__(self, "coords", reduced)

    def _check(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupMismatchError("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement(self.group, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __rmul__(self, k: int) -> "GroupElement":
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.group, tuple(k * a for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.coords)) + ")"


def _require_member(g: FGAbelianGroup, e: GroupElement) -> None:
    if not isinstance(e, GroupElement) or e.group != g:
        raise GroupMismatchError(f"element {e} does not belong to {g.describe()}")


def cokernel(m: IntMatrix) -> FGAbelianGroup:
    """Z^rows / image(m), read off the Smith diagonal."""
    diag = invariant_factors(m)
    nonzero = [d for d in diag if d]
    return FGAbelianGroup(m.rows - len(nonzero), tuple(d for d in nonzero if d > 1))


class Evenness(NamedTuple):
    even: bool
    half: GroupElement | None


def is_even(g: FGAbelianGroup, e: GroupElement) -> Evenness:
    """Decide whether e lies in 2G; when it does, return some b with 2b == e.

    Per factor: free and even-order coordinates must be even (halve them);
    on an odd factor Z/d multiplication by 2 is invertible, with inverse
    multiplication by (d + 1) / 2.
    """
    _require_member(g, e)
    half = []
    for x, d in zip(e.coords, g.torsion):
        if d % 2:
            half.append(x * (d + 1) // 2)
        elif x % 2:
            return Evenness(False, None)
        else:
            half.append(x // 2)
    for x in e.coords[len(g.torsion):]:
        if x % 2:
            return Evenness(False, None)
        half.append(x // 2)
    return Evenness(True, g.element(half))


def mod2_reduction(g: FGAbelianGroup, e: GroupElement) -> GroupElement:
    """Image of e in G/2G.

    For H^2 of a closed oriented 3-manifold (H^3 = Z has no 2-torsion)
    this quotient is exactly H^2(M; Z/2) and the map is reduction of
    coefficients; for other groups it is only the G/2G quotient.
    """
    _require_member(g, e)
    q = g.mod2_quotient()
    bits = [x % 2 for x, d in zip(e.coords, g.torsion) if d % 2 == 0]
    bits += [x % 2 for x in e.coords[len(g.torsion):]]
    return q.element(bits)


# ---------------------------------------------------------------------------
# GF(2)


def _to_bits(v: Iterable[int]) -> int:
    out = 0
    for k, a in enumerate(v):
        if a & 1:
            out |= 1 << k
    return out


def _from_bits(x: int, n: int) -> tuple[int, ...]:
    return tuple((x >> k) & 1 for k in range(n))


def f2_rank(a: F2Matrix) -> int:
    rows = a.row_bits()
    rank = 0
    for col in range(a.cols):
        piv = next((r for r in range(rank, len(rows)) if (rows[r] >> col) & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and (rows[r] >> col) & 1:
                rows[r] ^= rows[rank]
        rank += 1
    return rank


@dataclass(frozen=True)
class F2Solution:
    """Outcome of solving A x = b over F2.

    When ``solvable`` the solution set is x + span(kernel).  Otherwise
    ``certificate`` is a vector y with y A = 0 and y . b = 1.
    """

    solvable: bool
    x: tuple[int, ...] | None
    kernel: tuple[tuple[int, ...], ...]
    certificate: tuple[int, ...] | None = None

    def count(self) -> int:
        return 2 ** len(self.kernel) if self.solvable else 0


def f2_solve(a: F2Matrix, b: Sequence[int]) -> F2Solution:
    """Solve a x = b over F2 by Gauss-Jordan elimination.

    Pivots are taken column by column, lowest row index first; free
    variables are set to 0 in the particular solution, and the kernel basis
    has one vector per free column (in increasing column order).
    """
    if len(b) != a.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {a.rows}")
    if any(x not in (0, 1) for x in b):
        raise ValueError("right-hand side must be a 0/1 vector")
    m, n = a.rows, a.cols
    # each row: A bits in [0, n), b bit at n, row-operation record from n + 1
    rows = [_to_bits(r) | (b[i] << n) | (1 << (n + 1 + i)) for i, r in enumerate(a.entries)]
    pivots: list[int] = []
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, m) if (rows[r] >> col) & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(m):
            if r != rank and (rows[r] >> col) & 1:
                rows[r] ^= rows[rank]
        pivots.append(col)
        rank += 1
    amask = (1 << n) - 1
    for r in range(rank, m):
        if (rows[r] >> n) & 1:
            return F2Solution(False, None, (), _from_bits(rows[r] >> (n + 1), m))
    x = [0] * n
    for r, col in enumerate(pivots):
        x[col] = (rows[r] >> n) & 1
    pivset = set(pivots)
    kernel = []
    for free in range(n):
        if free in pivset:
            continue
        v = [0] * n
        v[free] = 1
        for r, col in enumerate(pivots):
            v[col] = (rows[r] & amask) >> free & 1
        kernel.append(tuple(v))
    return F2Solution(True, tuple(x), tuple(kernel))


def f2_span(basis: Sequence[Sequence[int]], n: int) -> Iterator[tuple[int, ...]]:
    """Every F2 combination of ``basis`` (2^len(basis) vectors of length n)."""
    bits = [_to_bits(v) for v in basis]
    for mask in range(1 << len(bits)):
        acc = 0
        for k, bv in enumerate(bits):
            if (mask >> k) & 1:
                acc ^= bv
        yield _from_bits(acc, n)
