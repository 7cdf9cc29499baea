"""Making the framings of Heegaard curves even by twisting along meridians.

Setting: curves c_1..c_g on the boundary of a standardly embedded genus-g
handlebody, each framed by a parallel copy on the surface, and a complete
system of meridians m_1..m_g.  A Dehn twist along m_i extends over the
handlebody, so it changes the embedding but not the manifold, and it
shifts the surface framing of c_j by the square of the intersection number
of c_j with m_i.  We model this with an integer matrix A whose row j
holds the intersection numbers of c_j with m_1..m_g:

    f'_j = f_j + sum_i x_i * A[j][i]^2.

Since a^2 = a mod 2, the twists making every f'_j even are exactly the
solutions of (A mod 2) x = f (mod 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactalg import F2Matrix, F2Solution, IntMatrix, ParseError, f2_solve, parse_matrix_text
from .surgery import FramedLinkMatrix


@dataclass(frozen=True)
class HeegaardTwistProblem:
    A: IntMatrix
    f: tuple[int, ...]
    linking: IntMatrix | None = None  # optional pairwise linking of the c_j in S^3

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(int(v) for v in self.f))
        g = self.A.rows
        if g < 1 or self.A.cols != g:
            raise ValueError(f"A must be a non-empty square matrix, got {self.A.shape}")
        if len(self.f) != g:
            raise ValueError(f"need {g} framings, got {len(self.f)}")
        if self.linking is not None and (self.linking.shape != (g, g) or not self.linking.is_symmetric()):
            raise ValueError("linking data must be a symmetric g x g matrix")

    @property
    def g(self) -> int:
        return self.A.rows

    def to_text(self) -> str:
        out = f"heegaard g={self.g}\n" + self.A.to_text() + " ".join(map(str, self.f)) + "\n"
        if self.linking is not None:
            out += "linking\n" + self.linking.to_text()
        return out

    @classmethod
    def from_text(cls, text: str, source: str | None = None) -> "HeegaardTwistProblem":
        """Parse 'heegaard g=<g>', the matrix A, one line of framings, then an optional 'linking' matrix."""
        lines = [(k + 1, raw.strip()) for k, raw in enumerate(text.splitlines())]
        lines = [(k, l) for k, l in lines if l and not l.startswith("#")]
        if not lines:
            raise ParseError("empty problem file", None, source)
        k0, header = lines[0]
        try:
            tag, assign = header.split()
            key, g = assign.split("=")
            g = int(g)
            if tag != "heegaard" or key != "g":
                raise ValueError
        except ValueError:
            raise ParseError("expected 'heegaard g=<g>' header", k0, source) from None
        if len(lines) < 3 + g:
            raise ParseError("truncated problem file", lines[-1][0], source)
        body = lines[1:2 + g]
        A = parse_matrix_text("\n".join(l for _, l in body), source=source, first_line=body[0][0])
        if A.shape != (g, g):
            raise ParseError(f"A must be {g}x{g}", body[0][0], source)
        kf, fline = lines[2 + g]
        try:
            f = tuple(int(t) for t in fline.split())
        except ValueError:
            raise ParseError("framings must be integers", kf, source) from None
        if len(f) != g:
            raise ParseError(f"expected {g} framings", kf, source)
        linking = None
        rest = lines[3 + g:]
        if rest:
            kl, tag = rest[0]
            if tag != "linking":
                raise ParseError(f"unexpected line {tag!r}", kl, source)
            linking = parse_matrix_text("\n".join(l for _, l in rest[1:]), source=source,
                                        first_line=rest[1][0] if len(rest) > 1 else kl)
        try:
            return cls(A, f, linking)
        except ValueError as exc:
            raise ParseError(str(exc), k0, source) from None


def solve_twists(P: HeegaardTwistProblem) -> F2Solution:
    """Twist indicators making all framings even.

    Unsolvable systems come back with ``solvable=False`` and a certificate
    y such that y (A mod 2) = 0 but y . f = 1.
    """
    return f2_solve(F2Matrix.reduce(P.A), [v % 2 for v in P.f])


def apply_twists(P: HeegaardTwistProblem, x: Sequence[int]) -> tuple[int, ...]:
    if len(x) != P.g:
        raise ValueError(f"need {P.g} twist counts, got {len(x)}")
    return tuple(P.f[j] + sum(x[i] * P.A[j, i] ** 2 for i in range(P.g)) for j in range(P.g))


def to_framed_link(P: HeegaardTwistProblem, x: Sequence[int]) -> FramedLinkMatrix:
    framings = apply_twists(P, x)
    odd = [j + 1 for j, v in enumerate(framings) if v % 2]
    if odd:
        raise ValueError(f"twists {tuple(x)} leave odd framings on curves {odd}")
    g = P.g
    lk = P.linking or IntMatrix.zeros(g, g)
    rows = [[framings[i] if i == j else lk[i, j] for j in range(g)] for i in range(g)]
    return FramedLinkMatrix(IntMatrix.from_rows(rows, g))
