"""Mod-2 pairings of plane fields with closed surfaces.

A closed connected surface S embedded in an oriented 3-manifold and a
combing v give TM|S = F_v|S + trivial = TS + normal.  The Euler class of
F_v restricted to S splits as w(TS) + w(det TS) w(normal), and both terms
are determined by the classification of S:

* <w(TS), [S]> = chi(S) mod 2;
* orientable S has w(det TS) = 0; non-orientable S = #h RP^2 has normal
  bundle isomorphic to det TS, and <w(normal)^2, [S]> = h mod 2.

The sum is always 0, which is the vanishing of w2 of the ambient manifold.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ClosedSurface:
    orientable: bool
    genus: int | None = None
    crosscaps: int | None = None

    def __post_init__(self):
        if self.orientable:
            if self.genus is None or self.genus < 0 or self.crosscaps is not None:
                raise ValueError("orientable surface needs genus >= 0 and no crosscaps")
        elif self.crosscaps is None or self.crosscaps < 1 or self.genus is not None:
            raise ValueError("non-orientable surface needs crosscaps >= 1 and no genus")

    @classmethod
    def orientable_of_genus(cls, g: int) -> "ClosedSurface":
        return cls(True, genus=g)

    @classmethod
    def projective_sum(cls, h: int) -> "ClosedSurface":
        return cls(False, crosscaps=h)

    @classmethod
    def parse(cls, token: str) -> "ClosedSurface":
        """'o<g>' for the genus g orientable surface, 'n<h>' for #h RP^2."""
        kind, num = token[:1], token[1:]
        if kind not in ("o", "n") or not num.isdigit():
            raise ValueError(f"surface token must look like 'o2' or 'n3', got {token!r}")
        return cls.orientable_of_genus(int(num)) if kind == "o" else cls.projective_sum(int(num))

    def token(self) -> str:
        return f"o{self.genus}" if self.orientable else f"n{self.crosscaps}"


def euler_characteristic(s: ClosedSurface) -> int:
    return 2 - 2 * s.genus if s.orientable else 2 - s.crosscaps


def pairing_terms(s: ClosedSurface) -> tuple[int, int]:
    """(<w(TS), [S]>, <w(det TS) w(normal), [S]>) in F2 x F2."""
    t1 = euler_characteristic(s) % 2
    t2 = 0 if s.orientable else s.crosscaps % 2
    return t1, t2


def pairing_w_Fv(s: ClosedSurface) -> int:
    t1, t2 = pairing_terms(s)
    return (t1 + t2) % 2
