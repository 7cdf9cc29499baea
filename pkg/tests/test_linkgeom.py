import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lowdim.exactalg import ParseError
from lowdim.linkgeom import (
    GeometryError,
    NormalField,
    PolyCurve3,
    crossing_linking,
    curves_disjoint,
    extends_over_seifert,
    gauss_linking,
    generic_directions,
    hopf_link,
    linking_number,
    parse_curve_file,
    projection_directions,
    pushoff,
    regular_polygon,
    segments_intersect,
    self_linking,
    so3_loop_class,
    twisted_unknot,
    vec,
)

SQUARE = PolyCurve3((vec(0, 0, 0), vec(1, 0, 0), vec(1, 1, 0), vec(0, 1, 0)), "S")


def torus_knot_pair(p_turns: int):
    """Core circle plus a curve winding p_turns times around it.

    The winding turns from the outward radial direction towards +z, which is
    a left-handed rotation about the core, so the linking number is -p_turns.
    """
    core = regular_polygon(24, radius=4, name="core")
    pts = []
    n = 24 * max(1, abs(p_turns)) + 24
    for i in range(n):
        phi = 2 * math.pi * i / n
        theta = p_turns * phi
        r = 4 + math.cos(theta)
        pts.append((Fraction(round(r * math.cos(phi) * 1000), 1000),
                    Fraction(round(r * math.sin(phi) * 1000), 1000),
                    Fraction(round(math.sin(theta) * 1000), 1000)))
    return core, PolyCurve3(tuple(pts), "wind")


# --- curves -------------------------------------------------------------------

def test_curve_validation():
    with pytest.raises(GeometryError):
        PolyCurve3((vec(0, 0, 0), vec(1, 0, 0)))
    with pytest.raises(GeometryError):
        PolyCurve3((vec(0, 0, 0), vec(0, 0, 0), vec(1, 1, 0)))
    # a figure-eight polygon crosses itself
    with pytest.raises(GeometryError):
        PolyCurve3((vec(0, 0, 0), vec(1, 1, 0), vec(1, 0, 0), vec(0, 1, 0)))
    # doubling back along an edge
    with pytest.raises(GeometryError):
        PolyCurve3((vec(0, 0, 0), vec(2, 0, 0), vec(1, 0, 0), vec(1, 1, 0)))


def test_segments_intersect_exact():
    o, x, y = vec(0, 0, 0), vec(2, 0, 0), vec(0, 2, 0)
    assert segments_intersect(o, x, vec(1, -1, 0), vec(1, 1, 0))
    assert not segments_intersect(o, x, vec(1, -1, 1), vec(1, 1, 1))
    assert segments_intersect(o, x, vec(2, 0, 0), y)  # touching at an endpoint
    assert segments_intersect(o, x, vec(1, 0, 0), vec(3, 0, 0))  # collinear overlap
    assert not segments_intersect(o, x, vec(3, 0, 0), vec(4, 0, 0))
    third = Fraction(1, 3)
    assert segments_intersect(o, vec(1, 1, 1), vec(third, third, third), vec(1, 0, 0))


def test_normal_field_validation():
    with pytest.raises(GeometryError):
        NormalField(SQUARE, [(0, 0, 1)] * 3)
    with pytest.raises(GeometryError):
        NormalField(SQUARE, [(0, 0, 1), (0, 0, 0), (0, 0, 1), (0, 0, 1)])
    # at vertex 1 the chord from vertex 0 to vertex 2 is (1, 1, 0)
    with pytest.raises(GeometryError):
        NormalField(SQUARE, [(0, 0, 1), (1, 1, 0), (0, 0, 1), (0, 0, 1)])


# --- linking numbers ----------------------------------------------------------

def test_split_pair_has_linking_zero():
    far = SQUARE.translated((0, 0, 10))
    assert curves_disjoint(SQUARE, far)
    assert linking_number(SQUARE, far) == 0
    assert abs(gauss_linking(SQUARE, far)) < 1e-9


def test_hopf_link():
    a, b = hopf_link()
    dirs = generic_directions(a, b, 3)
    counts = {crossing_linking(a, b, d) for d in dirs}
    assert len(counts) == 1
    lk = counts.pop()
    assert abs(lk) == 1
    assert linking_number(a, b) == lk
    assert abs(gauss_linking(a, b) - lk) < 0.1


def test_reversal_and_symmetry():
    a, b = hopf_link()
    lk = linking_number(a, b)
    assert linking_number(a, b.reversed()) == -lk
    assert linking_number(a.reversed(), b) == -lk
    assert linking_number(b, a) == lk


@pytest.mark.parametrize("turns", [-3, -1, 0, 2])
def test_winding_curves_against_gauss_integral(turns):
    core, wind = torus_knot_pair(turns)
    lk = linking_number(core, wind)
    assert lk == -turns
    assert abs(gauss_linking(core, wind) - lk) < 0.1
    assert linking_number(wind, core) == lk


def test_intersecting_curves_rejected():
    a = SQUARE
    # passes through the midpoint of the square's first edge
    b = PolyCurve3((vec(Fraction(1, 2), 0, -1), vec(Fraction(1, 2), 0, 1), vec(3, 3, 1)), "B")
    assert not curves_disjoint(a, b)
    with pytest.raises(GeometryError):
        linking_number(a, b)


def test_projection_directions_are_deterministic_and_distinct():
    d1 = projection_directions(64)
    assert d1 == projection_directions(64)
    assert len(set(d1)) == 64


@settings(max_examples=30, deadline=None)
@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(-20, 20))
def test_linking_invariant_under_translation(x, y, z):
    a, b = hopf_link()
    shift = (Fraction(x, 7), Fraction(y, 7), Fraction(z, 7))
    assert linking_number(a.translated(shift), b.translated(shift)) == linking_number(a, b)


# --- framings -----------------------------------------------------------------

def test_pushoff_of_planar_square_is_a_translate():
    field = NormalField(SQUARE, [(0, 0, 1)] * 4)
    p = pushoff(field, Fraction(1, 2))
    assert p.vertices == SQUARE.translated((0, 0, Fraction(1, 2))).vertices
    assert curves_disjoint(SQUARE, p)
    assert self_linking(field) == 0
    assert not extends_over_seifert(field)


def test_pushoff_rejects_nonpositive_eps():
    field = NormalField(SQUARE, [(0, 0, 1)] * 4)
    with pytest.raises(ValueError):
        pushoff(field, 0)


def test_pushoff_halves_oversized_eps():
    field = NormalField(SQUARE, [(0, 0, 1), (0, 0, 1), (1, 1, 1), (0, 0, 1)])
    p = pushoff(field, 1000)
    assert curves_disjoint(SQUARE, p)


def test_self_linking_is_scale_independent():
    field = twisted_unknot(2)
    eps = Fraction(1, 20)
    assert self_linking(field, eps) == self_linking(field, eps / 2) == 2


def test_one_twist_on_eight_vertices():
    field = twisted_unknot(1, vertices=8)
    assert abs(self_linking(field)) == 1
    assert extends_over_seifert(field)


@pytest.mark.parametrize("k", range(-4, 5))
def test_twisted_unknot(k):
    field = twisted_unknot(k)
    sl = self_linking(field)
    assert sl == k
    assert extends_over_seifert(field) == (k % 2 == 1)
    assert abs(gauss_linking(field.curve, pushoff(field)) - sl) < 0.1


def test_inserting_a_twist_flips_parity():
    for k in range(-3, 3):
        a, b = self_linking(twisted_unknot(k)), self_linking(twisted_unknot(k + 1))
        assert abs(b - a) == 1
        assert extends_over_seifert(twisted_unknot(k)) != extends_over_seifert(twisted_unknot(k + 1))


def test_so3_loop_class_examples():
    assert so3_loop_class(1, 1) == 0
    assert so3_loop_class(1, 0) == 1
    assert so3_loop_class(-1, 3) == 0
    for bad in (0, 2, 3, -2):
        with pytest.raises(ValueError):
            so3_loop_class(bad, 1)


def test_so3_class_agrees_with_parity_rule():
    for genus in range(6):
        chi = 1 - 2 * genus
        for deg in range(-6, 7):
            assert (so3_loop_class(chi, deg) == 0) == (deg % 2 == 1)


# --- file format --------------------------------------------------------------

def test_curve_file_round_trip():
    field = twisted_unknot(1, vertices=8)
    text = field.curve.to_text() + field.to_text()
    curves, fields = parse_curve_file(text)
    assert curves == [field.curve]
    assert fields[field.curve.name] == field


def test_curve_file_with_two_curves():
    a, b = hopf_link()
    curves, fields = parse_curve_file(a.to_text() + "# second\n" + b.to_text())
    assert curves == [a, b] and fields == {}


@pytest.mark.parametrize("text, line", [
    ("curve K 3\n0 0 0\n1 0 0\n", 1),
    ("curve K 3\n0 0 0\n1 0\n0 1 0\n", 3),
    ("curve K 3\n0 0 0\n1 0 0\n0 1/0 0\n", 4),
    ("curve K x\n", 1),
    ("bogus\n", 1),
    ("curve K 3\n0 0 0\n1 0 0\n0 1 0\nnormal J\n0 0 1\n0 0 1\n0 0 1\n", 5),
])
def test_curve_file_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_curve_file(text, source="c.txt")
    assert info.value.line == line


def test_curve_file_rejects_nonembedded_curve():
    text = "curve K 4\n0 0 0\n1 1 0\n1 0 0\n0 1 0\n"
    with pytest.raises((GeometryError, ParseError)):
        parse_curve_file(text)


def test_random_unlinked_squares():
    rng = random.Random(4)
    for _ in range(30):
        shift = (rng.randint(3, 9), rng.randint(-9, 9), rng.randint(-9, 9))
        assert linking_number(SQUARE, SQUARE.translated(shift)) == 0
