import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowdim.exactalg import (
    F2Matrix,
    FGAbelianGroup,
    GroupMismatchError,
    IntMatrix,
    ParseError,
    cokernel,
    f2_rank,
    f2_solve,
    f2_span,
    invariant_factors,
    is_even,
    mod2_reduction,
    parse_matrix_text,
    smith_normal_form,
)

from oracles import cokernel_oracle, det_cofactor, determinantal_invariants, f2_apply, f2_solutions


def M(rows):
    return IntMatrix.from_rows(rows)


def check_smith(m: IntMatrix):
    U, D, V = smith_normal_form(m)
    assert U @ m @ V == D
    assert abs(U.det()) == 1 and abs(V.det()) == 1
    assert D.is_diagonal()
    diag = D.diagonal()
    assert all(d >= 0 for d in diag)
    nonzero = [d for d in diag if d]
    assert diag[:len(nonzero)] == tuple(nonzero), "zeros must come last"
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    return diag


# --- matrices and parsing ---------------------------------------------------

def test_matrix_text_round_trip():
    m = M([[1, -2, 3], [0, 4, -5]])
    assert parse_matrix_text(m.to_text()) == m


def test_matrix_text_tolerates_comments_and_whitespace():
    text = "# a comment\n2   2\n\n 1 2\n   # indented comment\n3\t4\n"
    assert parse_matrix_text(text) == M([[1, 2], [3, 4]])


@pytest.mark.parametrize("text, line", [
    ("2 x\n1 2\n3 4\n", 1),
    ("2 2\n1 2\n3\n", 3),
    ("2 2\n1 2\n3 q\n", 3),
    ("1 1\n1 2\n", 2),
])
def test_matrix_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as info:
        parse_matrix_text(text, source="m.txt")
    assert info.value.line == line
    assert str(info.value).startswith(f"m.txt:{line}:")


def test_f2_matrix_rejects_non_binary_entries():
    with pytest.raises(ParseError):
        parse_matrix_text("1 2\n0 2\n", f2=True)
    assert parse_matrix_text("1 2\n0 1\n", f2=True) == F2Matrix.from_rows([[0, 1]])


def test_bareiss_determinant_matches_cofactor_expansion():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        assert M(rows).det() == det_cofactor(rows)


# --- Smith normal form --------------------------------------------------------

def test_smith_examples():
    assert smith_normal_form(M([[0]])).D == M([[0]])
    assert smith_normal_form(IntMatrix.identity(2)).D == IntMatrix.identity(2)
    assert check_smith(M([[2, 1], [1, 2]])) == (1, 3)


def test_smith_handles_empty_and_rectangular():
    assert invariant_factors(IntMatrix.zeros(0, 0)) == ()
    assert check_smith(M([[2, 4, 4], [-6, 6, 12]])) == (2, 6)
    assert check_smith(M([[0, 0], [0, 0], [3, 0]])) == (3, 0)


def test_smith_agrees_with_determinantal_divisors():
    rng = random.Random(11)
    for _ in range(300):
        r, c = rng.randint(1, 4), rng.randint(1, 4)
        m = M([[rng.randint(-5, 5) for _ in range(c)] for _ in range(r)])
        assert check_smith(m) == determinantal_invariants(m)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(-30, 30), min_size=n * n, max_size=n * n))))
def test_smith_property(data):
    n, flat = data
    m = IntMatrix.from_rows([flat[i * n:(i + 1) * n] for i in range(n)], n)
    diag = check_smith(m)
    prod = 1
    for d in diag:
        prod *= d
    assert prod == abs(m.det())


# --- cokernels and groups -----------------------------------------------------

def test_cokernel_examples():
    assert cokernel(M([[0]])) == FGAbelianGroup(1, ())
    assert cokernel(M([[3]])) == FGAbelianGroup(0, (3,))
    assert cokernel(M([[2, 1], [1, 2]])) == FGAbelianGroup(0, (3,))


def test_cokernel_matches_oracle():
    rng = random.Random(5)
    for _ in range(200):
        n = rng.randint(1, 4)
        m = M([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        g = cokernel(m)
        assert (g.free_rank, g.torsion) == cokernel_oracle(m)


def test_group_validation_and_mismatch():
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (4, 6))
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (1,))
    z = FGAbelianGroup(1)
    z5 = FGAbelianGroup(0, (5,))
    with pytest.raises(GroupMismatchError):
        z.element((1,)) + z5.element((1,))
    with pytest.raises(GroupMismatchError):
        z.element((1, 2))
    with pytest.raises(GroupMismatchError):
        is_even(z, z5.element((2,)))


def test_group_element_arithmetic_reduces_torsion():
    g = FGAbelianGroup(1, (4,))
    a = g.element((3, 5))
    assert (a + a).coords == (2, 10)
    assert (-a).coords == (1, -5)
    assert (4 * a - a - a - a - a).is_zero()


# --- evenness -----------------------------------------------------------------

def test_is_even_examples():
    z = FGAbelianGroup(1)
    ev = is_even(z, z.element((4,)))
    assert ev.even and ev.half.coords == (2,)
    z2 = FGAbelianGroup(0, (2,))
    assert not is_even(z2, z2.element((1,))).even
    g = FGAbelianGroup(1, (4,))
    ev = is_even(g, g.element((2, 6)))
    assert ev.even and ev.half.coords in {(1, 3), (3, 3)}
    assert 2 * ev.half == g.element((2, 6))


def test_mod2_reduction_examples():
    z = FGAbelianGroup(1)
    assert mod2_reduction(z, z.element((4,))).is_zero()
    assert mod2_reduction(z, z.element((3,))).coords == (1,)
    z4 = FGAbelianGroup(0, (4,))
    r = mod2_reduction(z4, z4.element((2,)))
    assert r.is_zero() and r.group == FGAbelianGroup(0, (2,))


@pytest.mark.parametrize("torsion", [(2,), (4,), (3,), (2, 4), (3, 6), (2, 2, 4), (5, 10), (12,)])
def test_evenness_against_enumerated_doubles(torsion):
    g = FGAbelianGroup(0, torsion)
    doubles = {(2 * x).coords for x in g.elements()}
    # cosets of 2G: two elements share a coset iff their difference is a double
    for e in g.elements():
        ev = is_even(g, e)
        assert ev.even == (e.coords in doubles)
        assert ev.even == mod2_reduction(g, e).is_zero()
        if ev.even:
            assert 2 * ev.half == e
    n_cosets = g.order() // len(doubles)
    assert n_cosets == g.mod2_quotient().order()


# --- GF(2) --------------------------------------------------------------------

def test_f2_solve_examples():
    sol = f2_solve(F2Matrix.identity(3), (1, 0, 1))
    assert sol.solvable and sol.x == (1, 0, 1) and sol.kernel == ()
    sol = f2_solve(F2Matrix.from_rows([[0, 0], [0, 0]]), (0, 0))
    assert sol.x == (0, 0) and len(sol.kernel) == 2
    sol = f2_solve(F2Matrix.from_rows([[1, 1], [1, 1]]), (1, 1))
    assert sol.x == (1, 0) and sol.kernel == ((1, 1),)


def test_f2_solve_against_enumeration():
    rng = random.Random(17)
    for _ in range(300):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = [[rng.randint(0, 1) for _ in range(n)] for _ in range(m)]
        b = [rng.randint(0, 1) for _ in range(m)]
        a = F2Matrix.from_rows(rows, n)
        sol = f2_solve(a, b)
        expected = sorted(f2_solutions(rows, b))
        if not expected:
            assert not sol.solvable
            y = sol.certificate
            assert all(sum(y[i] * rows[i][j] for i in range(m)) % 2 == 0 for j in range(n))
            assert sum(a * c for a, c in zip(y, b)) % 2 == 1
            continue
        assert sol.solvable
        got = sorted({tuple((p + k) % 2 for p, k in zip(sol.x, v)) for v in f2_span(sol.kernel, n)})
        assert got == expected
        assert sol.count() == len(expected)
        assert len(sol.kernel) == n - f2_rank(a)
        for v in sol.kernel:
            assert f2_apply(rows, v) == (0,) * m


def test_f2_solve_rejects_bad_rhs():
    with pytest.raises(ValueError):
        f2_solve(F2Matrix.identity(2), (1,))
    with pytest.raises(ValueError):
        f2_solve(F2Matrix.identity(2), (1, 2))
