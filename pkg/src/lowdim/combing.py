"""Symbolic bookkeeping for combings of a closed oriented 3-manifold.

A combing is an opaque symbol.  The ledger stores what the homotopy-level
argument needs: the Euler class of each combing's orthogonal plane field
in a group G standing in for H^2(M; Z), comparison classes for pairs of
combings, and the history of Pontryagin surgeries.

For a recorded pair (v, w) we keep alpha_plus = alpha(v, w) and
alpha_minus = alpha(v, -w).  The classes then satisfy

    euler(v) = alpha_plus + alpha_minus
    euler(w) = -alpha_plus + alpha_minus

and hence euler(v) - euler(w) = 2 alpha(v, w).  Comparison classes are
pair data: when G has 2-torsion they are not determined by the Euler
classes, so they are stored, never solved for.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .exactalg import (
    FGAbelianGroup,
    GroupElement,
    GroupMismatchError,
    ParseError,
    _require_member,
    is_even,
)


class LedgerError(ValueError):
    pass


@dataclass(frozen=True)
class PairRecord:
    first: str
    second: str
    alpha_plus: GroupElement
    alpha_minus: GroupElement


@dataclass(frozen=True)
class SurgeryRecord:
    source: str
    target: str
    beta: GroupElement


class CombingLedger:
    """Registry of combing symbols over a fixed group.

    Not thread-safe while being mutated.
    """

    def __init__(self, group: FGAbelianGroup):
        self.group = group
        self.euler: dict[str, GroupElement] = {}
        self.pairs: list[PairRecord] = []
        self.surgeries: list[SurgeryRecord] = []
        self._counter = 0

    @property
    def base(self) -> str:
        if not self.euler:
            raise LedgerError("ledger has no combings")
        return next(iter(self.euler))

    @property
    def symbols(self) -> list[str]:
        return list(self.euler)

    def _fresh(self) -> str:
        while f"v{self._counter}" in self.euler:
            self._counter += 1
        name = f"v{self._counter}"
        self._counter += 1
        return name

    def register(self, euler: GroupElement, name: str | None = None) -> str:
        _require_member(self.group, euler)
        name = name or self._fresh()
        if name in self.euler:
            raise LedgerError(f"combing {name!r} already registered")
        self.euler[name] = euler
        return name

    def add_pair(self, v: str, w: str, alpha_plus: GroupElement, alpha_minus: GroupElement) -> None:
        """Record externally supplied comparison data for (v, w).  Not checked here; see validate()."""
        self._known(v)
        self._known(w)
        _require_member(self.group, alpha_plus)
        _require_member(self.group, alpha_minus)
        self.pairs.append(PairRecord(v, w, alpha_plus, alpha_minus))

    def _known(self, v: str) -> None:
        if v not in self.euler:
            raise LedgerError(f"unknown combing {v!r}")

    def _adjacency(self) -> dict[str, list[tuple[str, GroupElement]]]:
        adj: dict[str, list[tuple[str, GroupElement]]] = {s: [] for s in self.euler}
        for p in self.pairs:
            adj[p.first].append((p.second, p.alpha_plus))
            adj[p.second].append((p.first, -p.alpha_plus))
        return adj

    # serialization -------------------------------------------------------

    def to_text(self) -> str:
        g = self.group
        lines = [f"group free {g.free_rank} torsion {' '.join(map(str, g.torsion))}".rstrip()]
        lines += [f"combing {s} euler {_coords(e)}".rstrip() for s, e in self.euler.items()]
        lines += [f"pair {p.first} {p.second} alpha+ {_coords(p.alpha_plus)} "
                  f"alpha- {_coords(p.alpha_minus)}".rstrip() for p in self.pairs]
        lines += [f"surgery {s.source} {s.target} beta {_coords(s.beta)}".rstrip()
                  for s in self.surgeries]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, source: str | None = None) -> "CombingLedger":
        ledger = None
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tok = line.split()
            try:
                if tok[0] == "group":
                    if ledger is not None:
                        raise ParseError("duplicate group line", lineno, source)
                    ledger = cls(_parse_group(tok))
                    continue
                if ledger is None:
                    raise ParseError("group descriptor must come first", lineno, source)
                g = ledger.group
                if tok[0] == "combing" and len(tok) >= 3 and tok[2] == "euler":
                    ledger.register(g.element(_ints(tok[3:])), tok[1])
                elif tok[0] == "pair" and "alpha+" in tok and "alpha-" in tok:
                    i, j = tok.index("alpha+"), tok.index("alpha-")
                    ledger.add_pair(tok[1], tok[2], g.element(_ints(tok[i + 1:j])),
                                    g.element(_ints(tok[j + 1:])))
                elif tok[0] == "surgery" and len(tok) >= 4 and tok[3] == "beta":
                    ledger._known(tok[1])
                    ledger._known(tok[2])
                    ledger.surgeries.append(SurgeryRecord(tok[1], tok[2], g.element(_ints(tok[4:]))))
                else:
                    raise ParseError(f"unrecognized ledger line: {line!r}", lineno, source)
            except ParseError:
                raise
            except (ValueError, IndexError, GroupMismatchError) as exc:
                raise ParseError(str(exc), lineno, source) from None
        if ledger is None:
            raise ParseError("empty ledger", None, source)
        return ledger


def _coords(e: GroupElement) -> str:
    return " ".join(map(str, e.coords))


def _ints(tokens: Iterable[str]) -> list[int]:
    return [int(t) for t in tokens]


def _parse_group(tok: list[str]) -> FGAbelianGroup:
    # group free <r> torsion <d1> <d2> ...
    if len(tok) < 4 or tok[1] != "free" or tok[3] != "torsion":
        raise ValueError("expected 'group free <r> torsion <d1> ...'")
    return FGAbelianGroup(int(tok[2]), tuple(_ints(tok[4:])))


def new_ledger(group: FGAbelianGroup, e0: GroupElement) -> CombingLedger:
    """Ledger holding a single base combing with Euler class e0."""
    _require_member(group, e0)
    ledger = CombingLedger(group)
    ledger.register(e0)
    return ledger


def pontryagin_surgery(ledger: CombingLedger, v: str, beta: GroupElement) -> str:
    """Register the combing obtained from v by surgery along a curve dual to beta.

    The new combing w has alpha(v, w) = beta, so euler(w) = euler(v) - 2 beta.
    """
    ledger._known(v)
    _require_member(ledger.group, beta)
    ev = ledger.euler[v]
    w = ledger.register(ev - 2 * beta)
    ledger.pairs.append(PairRecord(v, w, beta, ev - beta))
    ledger.surgeries.append(SurgeryRecord(v, w, beta))
    return w


def compare(ledger: CombingLedger, v: str, w: str) -> GroupElement:
    """Comparison class alpha(v, w), summed along the recorded pair graph.

    Edges are walked with alpha(v, w) = -alpha(w, v) for the reverse
    direction.  Breadth-first with neighbours in record order, so the path
    is deterministic.
    """
    ledger._known(v)
    ledger._known(w)
    if v == w:
        return ledger.group.zero()
    adj = ledger._adjacency()
    acc = {v: ledger.group.zero()}
    queue = deque([v])
    while queue:
        s = queue.popleft()
        for t, a in adj[s]:
            if t in acc:
                continue
            acc[t] = acc[s] + a
            if t == w:
                return acc[t]
            queue.append(t)
    raise LedgerError(f"no recorded comparison path between {v!r} and {w!r}")


def is_parallelizable(ledger: CombingLedger) -> tuple[bool, str | None]:
    """Parallelizable iff the base Euler class is even.

    When it is, 2b = euler(base) for some b, and surgery along b produces a
    combing with vanishing Euler class; that symbol is returned as witness.
    """
    base = ledger.base
    ev = ledger.euler[base]
    even, half = is_even(ledger.group, ev)
    if not even:
        return False, None
    if ev.is_zero():
        return True, base
    w = pontryagin_surgery(ledger, base, half)
    assert ledger.euler[w].is_zero()
    return True, w


def validate(ledger: CombingLedger) -> list[str]:
    """Replay every record against the ledger invariants; return the violations."""
    problems = []
    ev = ledger.euler
    for p in ledger.pairs:
        if p.first not in ev or p.second not in ev:
            problems.append(f"pair ({p.first}, {p.second}) refers to an unknown combing")
            continue
        if ev[p.first] != p.alpha_plus + p.alpha_minus:
            problems.append(f"pair ({p.first}, {p.second}): euler({p.first}) "
                            f"!= alpha+ + alpha-")
        if ev[p.second] != p.alpha_minus - p.alpha_plus:
            problems.append(f"pair ({p.first}, {p.second}): euler({p.second}) "
                            f"!= alpha- - alpha+")
    for s in ledger.surgeries:
        if s.source not in ev or s.target not in ev:
            problems.append(f"surgery {s.source}->{s.target} refers to an unknown combing")
            continue
        if ev[s.target] != ev[s.source] - 2 * s.beta:
            problems.append(f"surgery {s.source}->{s.target}: euler({s.target}) "
                            f"!= euler({s.source}) - 2 beta")
    parities = {s: is_even(ledger.group, e).even for s, e in ev.items()}
    if len(set(parities.values())) > 1:
        odd = sorted(s for s, p in parities.items() if not p)
        problems.append(f"evenness of Euler classes is not constant (odd: {', '.join(odd)})")
    return problems
