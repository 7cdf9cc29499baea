"""Kirby calculus on linking matrices.

A framed link in S^3 is recorded by its linking matrix Q: framings on the
diagonal, pairwise linking numbers off it.  The moves act by

* blow-up:   Q -> Q (+) (+-1)            (distant +-1-framed unknot)
* blow-down: the inverse, for an isolated +-1 row/column
* slide i over j with sign s:  Q -> E Q E^T,  E = I + s e_ij

so the framing of component i becomes f_i + 2 s Q_ij + f_j.  Component
indices in moves and scripts are 1-based, as in the script file format.

Every move preserves symmetry and the cokernel of Q (the first homology of
the surgered manifold).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from .exactalg import (
    F2Matrix,
    FGAbelianGroup,
    IntMatrix,
    ParseError,
    cokernel,
    f2_rank,
    f2_solve,
    f2_span,
    parse_matrix_text,
)


class MoveError(ValueError):
    """A move whose precondition fails.  ``position`` is set by apply_script (1-based)."""

    def __init__(self, message: str, position: int | None = None):
        self.message = message
        self.position = position
        super().__init__(message if position is None else f"move {position}: {message}")


@dataclass(frozen=True)
class FramedLinkMatrix:
    Q: IntMatrix
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.Q.is_symmetric():
            raise ValueError(f"linking matrix must be symmetric: {self.Q}")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"K{i + 1}" for i in range(self.Q.rows)))
        elif len(self.labels) != self.Q.rows:
            raise ValueError("one label per component required")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "FramedLinkMatrix":
        return cls(IntMatrix.from_rows(rows))

    @classmethod
    def empty(cls) -> "FramedLinkMatrix":
        return cls(IntMatrix.zeros(0, 0))

    @property
    def n(self) -> int:
        return self.Q.rows

    @property
    def framings(self) -> tuple[int, ...]:
        return self.Q.diagonal()

    def to_text(self) -> str:
        return f"framedlink n={self.n}\n" + self.Q.to_text()

    @classmethod
    def from_text(cls, text: str, source: str | None = None) -> "FramedLinkMatrix":
        lines = text.splitlines()
        for k, raw in enumerate(lines):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if not line.startswith("framedlink"):
                raise ParseError("expected 'framedlink n=<n>' header", k + 1, source)
            try:
                key, value = line.split()[1].split("=")
                n = int(value)
                if key != "n":
                    raise ValueError
            except (IndexError, ValueError):
                raise ParseError("malformed header, expected 'framedlink n=<n>'", k + 1, source) from None
            q = parse_matrix_text("\n".join(lines[k + 1:]), source=source, first_line=k + 2)
            if q.shape != (n, n):
                raise ParseError(f"header says n={n} but matrix is {q.rows}x{q.cols}", k + 1, source)
            if not q.is_symmetric():
                raise ParseError("linking matrix is not symmetric", k + 2, source)
            return cls(q)
        raise ParseError("empty link file", None, source)


# ---------------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class BlowUp:
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("blow-up sign must be +1 or -1")

    def __str__(self):
        return f"blowup {self.sign:+d}"


@dataclass(frozen=True)
class BlowDown:
    index: int

    def __str__(self):
        return f"blowdown {self.index}"


@dataclass(frozen=True)
class Slide:
    i: int
    j: int
    sign: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("slide sign must be +1 or -1")

    def inverse(self) -> "Slide":
        return Slide(self.i, self.j, -self.sign)

    def __str__(self):
        return f"slide {self.i} {self.j} {self.sign:+d}"


KirbyMove = Union[BlowUp, BlowDown, Slide]


@dataclass(frozen=True)
class MoveScript:
    moves: tuple[KirbyMove, ...] = ()

    def __len__(self):
        return len(self.moves)

    def __iter__(self) -> Iterator[KirbyMove]:
        return iter(self.moves)

    def __add__(self, other: "MoveScript") -> "MoveScript":
        return MoveScript(self.moves + tuple(other))

    def to_text(self) -> str:
        return "".join(f"{m}\n" for m in self.moves)

    @classmethod
    def from_text(cls, text: str, source: str | None = None) -> "MoveScript":
        moves: list[KirbyMove] = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tok = line.split()
            try:
                if tok[0] == "blowup" and len(tok) == 2:
                    moves.append(BlowUp(_parse_sign(tok[1])))
                elif tok[0] == "blowdown" and len(tok) == 2:
                    moves.append(BlowDown(int(tok[1])))
                elif tok[0] == "slide" and len(tok) == 4:
                    moves.append(Slide(int(tok[1]), int(tok[2]), _parse_sign(tok[3])))
                else:
                    raise ValueError(f"unrecognized move {line!r}")
            except ValueError as exc:
                raise ParseError(str(exc), lineno, source) from None
        return cls(tuple(moves))


def _parse_sign(tok: str) -> int:
    if tok not in ("+1", "-1", "1"):
        raise ValueError(f"sign must be +1 or -1, got {tok!r}")
    return -1 if tok == "-1" else 1


def blow_up(F: FramedLinkMatrix, sign: int, label: str | None = None) -> FramedLinkMatrix:
    BlowUp(sign)
    n = F.n
    rows = [list(r) + [0] for r in F.Q.entries] + [[0] * n + [sign]]
    label = label or _fresh_label(F.labels)
    return FramedLinkMatrix(IntMatrix.from_rows(rows, n + 1), F.labels + (label,))


def _fresh_label(labels: Sequence[str]) -> str:
    k = 1
    while f"u{k}" in labels:
        k += 1
    return f"u{k}"


def blow_down(F: FramedLinkMatrix, i: int) -> FramedLinkMatrix:
    n = F.n
    if not 1 <= i <= n:
        raise MoveError(f"blowdown index {i} out of range 1..{n}")
    k = i - 1
    q = F.Q
    if q[k, k] not in (1, -1):
        raise MoveError(f"blowdown {i}: framing is {q[k, k]}, not +-1")
    linked = {j + 1: q[k, j] for j in range(n) if j != k and q[k, j]}
    if linked:
        raise MoveError(f"blowdown {i}: component is linked with {linked}")
    keep = [j for j in range(n) if j != k]
    rows = [[q[a, b] for b in keep] for a in keep]
    return FramedLinkMatrix(IntMatrix.from_rows(rows, n - 1), tuple(F.labels[j] for j in keep))


def slide_matrix(n: int, i: int, j: int, sign: int) -> IntMatrix:
    """E = I + sign * e_ij (1-based i, j)."""
    rows = IntMatrix.identity(n).tolist()
    rows[i - 1][j - 1] += sign
    return IntMatrix.from_rows(rows, n)


def handle_slide(F: FramedLinkMatrix, i: int, j: int, sign: int) -> FramedLinkMatrix:
    """Slide component i over component j; returns E Q E^T."""
    n = F.n
    if i == j:
        raise MoveError(f"cannot slide component {i} over itself")
    if not (1 <= i <= n and 1 <= j <= n):
        raise MoveError(f"slide indices ({i}, {j}) out of range 1..{n}")
    Slide(i, j, sign)
    a, b = i - 1, j - 1
    q = F.Q.tolist()
    q[a] = [x + sign * y for x, y in zip(q[a], q[b])]
    for row in q:
        row[a] += sign * row[b]
    return FramedLinkMatrix(IntMatrix.from_rows(q, n), F.labels)


def apply_move(F: FramedLinkMatrix, move: KirbyMove) -> FramedLinkMatrix:
    if isinstance(move, BlowUp):
        return blow_up(F, move.sign)
    if isinstance(move, BlowDown):
        return blow_down(F, move.index)
    if isinstance(move, Slide):
        return handle_slide(F, move.i, move.j, move.sign)
    raise TypeError(f"not a Kirby move: {move!r}")


def apply_script(F: FramedLinkMatrix, script: Iterable[KirbyMove]) -> FramedLinkMatrix:
    for pos, move in enumerate(script, 1):
        try:
            F = apply_move(F, move)
        except MoveError as exc:
            raise MoveError(exc.message, pos) from None
    return F


# ---------------------------------------------------------------------------
# mod-2 data


@dataclass(frozen=True)
class CharSublink:
    """Solutions x of Q x = diag(Q) over F2: indicator x plus the kernel basis."""

    x: tuple[int, ...]
    kernel: tuple[tuple[int, ...], ...]

    @property
    def dimension(self) -> int:
        return len(self.kernel)

    def count(self) -> int:
        return 2 ** self.dimension

    def solutions(self) -> Iterator[tuple[int, ...]]:
        n = len(self.x)
        for k in f2_span(self.kernel, n):
            yield tuple(a ^ b for a, b in zip(self.x, k))


def is_characteristic(Q: IntMatrix, x: Sequence[int]) -> bool:
    q2 = F2Matrix.reduce(Q)
    return q2.apply([a & 1 for a in x]) == tuple(d & 1 for d in Q.diagonal())


def characteristic_solutions(F: FramedLinkMatrix) -> CharSublink:
    q2 = F2Matrix.reduce(F.Q)
    sol = f2_solve(q2, [d & 1 for d in F.framings])
    if not sol.solvable:
        # the diagonal of a symmetric matrix always lies in its F2 column space
        raise ArithmeticError(f"no characteristic sublink for symmetric {F.Q}; certificate {sol.certificate}")
    return CharSublink(sol.x, sol.kernel)


def spin_structure_count(F: FramedLinkMatrix) -> int:
    return 2 ** (F.n - f2_rank(F2Matrix.reduce(F.Q)))


def first_homology(F: FramedLinkMatrix) -> FGAbelianGroup:
    return cokernel(F.Q)


def handle_parity(F: FramedLinkMatrix) -> tuple[tuple[int, ...], bool]:
    parity = tuple(f % 2 for f in F.framings)
    return parity, not any(parity)


# ---------------------------------------------------------------------------
# evenization


class EvenizeError(RuntimeError):
    """Budget exhausted before an even presentation was found."""

    def __init__(self, message: str, partial: MoveScript):
        self.partial = partial
        super().__init__(message)


@dataclass(frozen=True)
class EvenizeResult:
    link: FramedLinkMatrix
    script: MoveScript
    phase: str  # "even" (input already even), "guided" or "search"


def evenize(F: FramedLinkMatrix, *, depth: int = 12, max_stabilizations: int = 2,
            max_components: int = 6, max_nodes: int = 50_000, lift_radius: int = 3
            ) -> EvenizeResult:
    """Find Kirby moves taking F to a link with all framings even.

    Phases, in order:

    1. nothing to do if every framing is already even;
    2. guided: look for a characteristic vector c of Q (+) <+-1>^a with
       c.c = +-1 (a <= max_stabilizations blow-ups); slides turn c into a
       basis vector, further slides split it off, and blowing it down leaves
       an even matrix because c was characteristic;
    3. breadth-first search over slides, blow-ups and blow-downs up to
       ``depth`` moves, at most ``max_stabilizations`` blow-ups, matrices
       of at most ``max_components`` rows and ``max_nodes`` states.

    The returned script is replayed and checked before returning.
    """
    if handle_parity(F)[1]:
        return EvenizeResult(F, MoveScript(), "even")
    script = _guided_script(F, max_stabilizations, lift_radius)
    phase = "guided"
    if script is None:
        script = _search_script(F, depth, max_stabilizations, max_components, max_nodes)
        phase = "search"
    out = apply_script(F, script)
    if not handle_parity(out)[1]:
        raise AssertionError(f"evenize produced odd framings {out.framings}")
    return EvenizeResult(out, script, phase)


def _lifts(x: Sequence[int], radius: int) -> Iterator[tuple[int, ...]]:
    choices = [[v for v in range(-radius, radius + 1) if (v - b) % 2 == 0] for b in x]
    choices = [sorted(c, key=lambda v: (abs(v), v < 0)) for c in choices]
    return itertools.product(*choices)


def _stab_completions(target: int, a: int, bound: int = 9) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """(signs, odd m) with sum(sign * m^2) == target, smallest first."""
    odd = range(1, bound + 1, 2)
    found = []
    for signs in itertools.product((1, -1), repeat=a):
        for ms in itertools.product(odd, repeat=a):
            if sum(s * m * m for s, m in zip(signs, ms)) == target:
                found.append((sum(ms), signs, ms))
    found.sort()
    for _, signs, ms in found:
        yield signs, ms


def _find_unit_characteristic(F: FramedLinkMatrix, max_stab: int, radius: int):
    chars = list(characteristic_solutions(F).solutions())
    q = F.Q
    n = F.n
    for a in range(max_stab + 1):
        best = None
        for x in chars:
            for lift in _lifts(x, radius):
                val = sum(lift[i] * q[i, j] * lift[j] for i in range(n) for j in range(n))
                for unit in (1, -1):
                    for signs, ms in _stab_completions(unit - val, a):
                        key = (sum(map(abs, lift)) + sum(ms), lift, signs)
                        if best is None or key < best[0]:
                            best = (key, lift + tuple(s * m for s, m in zip(signs, ms)), signs)
                        break
        if best is not None:
            return best[1], best[2]
    return None


def _split_off(G: FramedLinkMatrix, c: Sequence[int], moves: list) -> FramedLinkMatrix:
    """Slide until the unit vector c is a basis vector, isolate it and blow it down."""
    c = list(c)
    # Euclid on the coordinates of c: sliding i over j sends c_j to c_j - s c_i
    while sum(1 for v in c if v) > 1:
        nz = [k for k, v in enumerate(c) if v]
        i = min(nz, key=lambda k: (abs(c[k]), k))
        for j in nz:
            if j == i:
                continue
            while c[j] and abs(c[j]) >= abs(c[i]):
                s = 1 if (c[i] > 0) == (c[j] > 0) else -1
                moves.append(Slide(i + 1, j + 1, s))
                G = handle_slide(G, i + 1, j + 1, s)
                c[j] -= s * c[i]
    k = next(idx for idx, v in enumerate(c) if v)
    unit = G.Q[k, k]
    assert unit in (1, -1) and abs(c[k]) == 1
    for i in range(G.n):
        while i != k and G.Q[i, k]:
            s = -unit if G.Q[i, k] > 0 else unit
            moves.append(Slide(i + 1, k + 1, s))
            G = handle_slide(G, i + 1, k + 1, s)
    moves.append(BlowDown(k + 1))
    return blow_down(G, k + 1)


def _unit_vectors(F: FramedLinkMatrix, radius: int, limit: int) -> list[tuple[int, ...]]:
    q = F.Q
    n = F.n
    found = []
    for v in itertools.product(range(-radius, radius + 1), repeat=n):
        if not any(v):
            continue
        first = next(a for a in v if a)
        if first < 0:  # v and -v split off the same summand
            continue
        sq = sum(v[i] * q[i, j] * v[j] for i in range(n) for j in range(n))
        if sq in (1, -1):
            found.append((sum(map(abs, v)), v))
    found.sort()
    return [v for _, v in found[:limit]]


def _guided_script(F: FramedLinkMatrix, max_stab: int, radius: int,
                   extra_units: int = 1) -> MoveScript | None:
    found = _find_unit_characteristic(F, max_stab, radius)
    if found is not None:
        c, signs = found
        moves: list[KirbyMove] = [BlowUp(s) for s in signs]
        _split_off(apply_script(F, moves), c, moves)
        return MoveScript(tuple(moves))
    if extra_units == 0:
        return None
    # blow down some unit vector first, then retry on its orthogonal complement
    for a in range(max_stab + 1):
        for signs in itertools.product((1, -1), repeat=a):
            G = apply_script(F, [BlowUp(s) for s in signs])
            if G.n <= 1:
                continue
            for w in _unit_vectors(G, 2, 12):
                moves = [BlowUp(s) for s in signs]
                H = _split_off(G, w, moves)
                rest = _guided_script(H, max_stab - a, radius, extra_units - 1)
                if rest is not None:
                    return MoveScript(tuple(moves)) + rest
    return None


def _legal_moves(q: tuple[tuple[int, ...], ...], stabs: int, max_stab: int,
                 max_components: int) -> Iterator[KirbyMove]:
    n = len(q)
    for i in range(n):
        if q[i][i] in (1, -1) and all(q[i][j] == 0 for j in range(n) if j != i):
            yield BlowDown(i + 1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                yield Slide(i, j, 1)
                yield Slide(i, j, -1)
    if stabs < max_stab and n < max_components:
        yield BlowUp(1)
        yield BlowUp(-1)


def _search_script(F: FramedLinkMatrix, depth: int, max_stab: int, max_components: int,
                   max_nodes: int, entry_bound: int = 30) -> MoveScript:
    start = (F.Q.entries, 0)
    parent: dict = {start: None}
    queue = deque([(start, 0)])

    def odd_count(q):
        return sum(q[i][i] % 2 for i in range(len(q)))

    def path(state):
        moves = []
        while parent[state] is not None:
            state, move = parent[state]
            moves.append(move)
        return MoveScript(tuple(reversed(moves)))

    best = (odd_count(F.Q.entries), start)
    while queue:
        state, d = queue.popleft()
        if d == depth:
            continue
        q, stabs = state
        cur = FramedLinkMatrix(IntMatrix(len(q), len(q), q))
        for move in _legal_moves(q, stabs, max_stab, max_components):
            nxt = apply_move(cur, move)
            entries = nxt.Q.entries
            if any(abs(v) > entry_bound for r in entries for v in r):
                continue
            key = (entries, stabs + isinstance(move, BlowUp))
            if key in parent:
                continue
            parent[key] = (state, move)
            oc = odd_count(entries)
            if oc == 0:
                return path(key)
            if oc < best[0]:
                best = (oc, key)
            if len(parent) >= max_nodes:
                raise EvenizeError(f"search exhausted {max_nodes} states", path(best[1]))
            queue.append((key, d + 1))
    raise EvenizeError(f"no even presentation within depth {depth} and "
                       f"{max_stab} stabilizations", path(best[1]))
