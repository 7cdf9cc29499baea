"""Exact computations behind the parallelizability of closed orientable 3-manifolds.

Submodules:

* ``exactalg``  integer matrices, Smith normal form, abelian groups, GF(2) solving
* ``surgery``   framed link matrices, Kirby moves, spin structures, evenization
* ``combing``   a ledger of combings, Euler classes and comparison classes
* ``surfaces``  the mod-2 pairing of a plane field with a closed surface
* ``heegaard``  the meridian-twist parity system
* ``linkgeom``  polygonal curves, linking numbers and framing parity
"""

from .exactalg import (
    F2Matrix,
    FGAbelianGroup,
    GroupElement,
    GroupMismatchError,
    IntMatrix,
    ParseError,
    cokernel,
    f2_solve,
    is_even,
    mod2_reduction,
    smith_normal_form,
)
from .surgery import (
    BlowDown,
    BlowUp,
    EvenizeError,
    FramedLinkMatrix,
    MoveError,
    MoveScript,
    Slide,
    apply_script,
    characteristic_solutions,
    evenize,
    first_homology,
    handle_parity,
    spin_structure_count,
)

__version__ = "0.1.0"
