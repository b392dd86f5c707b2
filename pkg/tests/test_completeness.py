import math

import numpy as np
import pytest

from sball.body import contains, diameter, sample_boundary
from sball.completeness import (CompletionConfig, VerificationReport, accepted_grid,
                                check_piece_containment, complete, delta_hull,
                                extreme_points, fibonacci_cap, is_complete,
                                is_constant_diameter, piece_of_circle, piece_report)
from sball.core import Ball, circle_intersections, distance, frame_point, normalize
from sball.errors import (DeltaOutOfRange, DiameterExceeded, EndpointsOutsideBody,
                          EqualEndpoints, NotOnCircle, SeedDiameterExceeded, SeedOutsideCap)
from sball.generators import (NORTH, cap_body, geodesic_triangle, lens, random_cap_points,
                              reuleaux_odd_gon, reuleaux_vertices)
from sball.width import is_constant_width

from oracles import margins


def naive_accept(seed, grid, delta):
    cosd = math.cos(delta)
    acc = []
    for i, x in enumerate(grid):
        if np.all(seed @ x >= cosd) and all(grid[j] @ x >= cosd for j in acc):
            acc.append(i)
    return np.array(acc, dtype=int)


def equilateral(side, pole=NORTH):
    return reuleaux_vertices(3, side, pole)


# delta-hull

def test_delta_hull_of_one_point_is_a_cap():
    body = delta_hull(NORTH, 0.7)
    assert len(body.balls) == 1
    assert body.balls[0].radius == 0.7


def test_delta_hull_of_equilateral_triangle_is_reuleaux():
    P = equilateral(1.0)
    body = delta_hull(P, 1.0)
    assert len(body.arcs) == 3
    ref = reuleaux_odd_gon(3, 1.0)
    np.testing.assert_allclose(np.sort(body.vertices, axis=0),
                               np.sort(ref.vertices, axis=0), atol=1e-9)


def test_delta_hull_contains_its_points_for_small_sets():
    rng = np.random.default_rng(4)
    for _ in range(10):
        P = normalize(frame_point(NORTH, rng.uniform(0, 0.3, 6), rng.uniform(0, 6.3, 6)))
        body = delta_hull(P, 1.0)
        assert np.all(contains(body, P) >= -1e-12)


def test_delta_hull_is_antitone():
    rng = np.random.default_rng(8)
    P = normalize(frame_point(NORTH, rng.uniform(0, 0.3, 8), rng.uniform(0, 6.3, 8)))
    small, big = delta_hull(P[:3], 1.0), delta_hull(P, 1.0)
    X = sample_boundary(big, 0.01)
    assert np.all(contains(small, X) >= -1e-9)


def test_delta_hull_agrees_with_direct_intersection():
    rng = np.random.default_rng(9)
    P = normalize(frame_point(NORTH, rng.uniform(0, 0.25, 40), rng.uniform(0, 6.3, 40)))
    body = delta_hull(P, 0.8)
    X = sample_boundary(body, 0.01)
    balls = [Ball(p, 0.8) for p in P]
    assert np.max(np.abs(margins(balls, X))) <= 1e-9
    assert len(extreme_points(P)) < len(P)


def test_delta_hull_errors():
    with pytest.raises(DiameterExceeded):
        delta_hull(equilateral(1.0), 0.9)
    with pytest.raises(DeltaOutOfRange):
        delta_hull(NORTH, 1.6)
    with pytest.raises(DeltaOutOfRange):
        delta_hull(NORTH, 0.0)
    # slack admits a slightly too wide set
    assert delta_hull(equilateral(1.0), 0.999, slack=0.01).delta == 0.999


# lattice and greedy acceptance

def test_fibonacci_cap_spacing_and_order():
    pts = fibonacci_cap(NORTH, 0.5, 0.02)
    assert np.all(distance(pts, NORTH) <= 0.5 + 1e-12)
    d = distance(pts, NORTH)
    assert np.all(np.diff(d) >= -1e-12)
    area = 2 * math.pi * (1 - math.cos(0.5))
    assert len(pts) == pytest.approx(area / 0.02 ** 2, rel=0.01)


@pytest.mark.parametrize("delta", [0.5, 1.2])
def test_accepted_grid_matches_naive_loop(delta):
    seed = random_cap_points(3, NORTH, 0.15, delta, 2)
    cfg = CompletionConfig(delta, resolution=0.05)
    grid, idx = accepted_grid(seed, cfg, block=16)
    np.testing.assert_array_equal(idx, naive_accept(seed, grid, delta))
    _, idx2 = accepted_grid(seed, cfg)
    np.testing.assert_array_equal(idx, idx2)


def test_accepted_set_has_diameter_delta():
    seed = equilateral(0.5)
    grid, idx = accepted_grid(seed, CompletionConfig(1.0, resolution=0.03))
    A = np.vstack([seed, grid[idx]])
    assert np.min(A @ A.T) >= math.cos(1.0) - 1e-12
    # every rejected grid point conflicts with something accepted
    rejected = np.setdiff1d(np.arange(len(grid)), idx)
    assert np.all(np.min(grid[rejected] @ A.T, axis=1) < math.cos(1.0))


def test_completion_config_validation():
    with pytest.raises(DeltaOutOfRange):
        CompletionConfig(2.0)
    with pytest.raises(ValueError):
        CompletionConfig(1.0, resolution=0.0)


def test_seed_errors():
    with pytest.raises(SeedDiameterExceeded):
        complete(equilateral(1.1), CompletionConfig(1.0))
    with pytest.raises(SeedOutsideCap):
        complete(NORTH, CompletionConfig(1.0, cap_pole=-NORTH, cap_radius=0.5))


# completion

@pytest.fixture(scope="module")
def equilateral_completion():
    seed = equilateral(1.0)
    return seed, complete(seed, CompletionConfig(1.0, resolution=0.01))


def test_completion_is_deterministic(equilateral_completion):
    seed, body = equilateral_completion
    again = complete(seed, CompletionConfig(1.0, resolution=0.01))
    np.testing.assert_array_equal(body.centers, again.centers)


def test_completion_contains_seed(equilateral_completion):
    seed, body = equilateral_completion
    assert np.all(contains(body, seed) >= -1e-9)


def test_completion_of_equilateral_seed_is_close_to_its_hull(equilateral_completion):
    # a complete body lies in the delta-hull of any of its subsets; the
    # equilateral triple is already complete, so they nearly coincide
    seed, body = equilateral_completion
    hull = delta_hull(seed, 1.0)
    X = sample_boundary(body, 0.01)
    assert np.min(contains(hull, X)) >= -1e-9
    Y = sample_boundary(hull, 0.01)
    assert np.min(contains(body, Y)) >= -0.03


def test_completion_predicates(equilateral_completion):
    _, body = equilateral_completion
    assert diameter(body)[0] == pytest.approx(1.0, abs=0.03)
    assert is_complete(body, 1.0, tol=0.03).passed
    assert is_constant_diameter(body, 1.0, tol=0.03).passed


def test_completion_of_random_seed():
    seed = random_cap_points(2, NORTH, 0.15, 0.5, 5)
    body = complete(seed, CompletionConfig(0.5, resolution=0.01))
    assert np.all(contains(body, seed) >= -1e-9)
    assert is_complete(body, 0.5, tol=0.03).passed


# reports

def test_report_convention():
    rep = VerificationReport.build("x", 0.03, np.eye(3), [0.1, -0.02, 0.0])
    assert rep.passed and rep.worst_margin == -0.02
    np.testing.assert_array_equal(rep.worst_witness, [0.0, 1.0, 0.0])
    bad = VerificationReport.build("x", 0.03, np.eye(3), [0.1, -0.05, 0.0])
    assert not bad.passed
    rec = bad.to_record()
    assert rec["check"] == "x" and rec["passed"] is False and rec["n_samples"] == 3
    assert bad.summary().startswith("FAIL x")


@pytest.mark.parametrize("make,delta", [
    pytest.param(lambda: reuleaux_odd_gon(3, 1.0), 1.0, id="reuleaux3"),
    pytest.param(lambda: reuleaux_odd_gon(7, 1.4), 1.4, id="reuleaux7"),
    pytest.param(lambda: cap_body(0.5), 1.0, id="cap"),
])
def test_complete_bodies_pass(make, delta):
    body = make()
    assert is_complete(body, delta, tol=0.03).passed
    assert is_constant_diameter(body, delta, tol=0.03).passed


@pytest.mark.parametrize("make", [
    pytest.param(lambda: lens(1.0), id="lens"),
    pytest.param(lambda: geodesic_triangle(1.0), id="triangle"),
])
def test_incomplete_bodies_fail(make):
    body = make()
    rep = is_complete(body, 1.0, tol=0.03)
    assert not rep.passed
    assert not is_constant_diameter(body, 1.0, tol=0.03).passed


def test_wide_exterior_band_hides_small_defects():
    # the side-1.4 triangle misses completeness by about 0.053: a band as
    # wide as tol absorbs most of that, the default band does not
    body = geodesic_triangle(1.4)
    assert is_complete(body, 1.4, tol=0.03, band=0.03).passed
    rep = is_complete(body, 1.4, tol=0.03)
    assert not rep.passed
    assert rep.worst_margin == pytest.approx(is_constant_width(body, 1.4, 0.03).worst_margin,
                                             abs=0.002)


def test_small_cap_is_not_complete_for_larger_delta():
    rep = is_complete(cap_body(0.3), 1.0, tol=0.03)
    assert not rep.passed
    assert rep.info["n_exterior"] > 0


# pieces of circles

def test_piece_of_circle_forty_degrees():
    a = frame_point(NORTH, 0.8, 0.0)
    b = frame_point(NORTH, 0.8, math.radians(40))
    arc = piece_of_circle(a, b, NORTH, 0.8)
    assert arc.span == pytest.approx(math.radians(40), abs=1e-12)
    assert arc.radius == 0.8


def test_piece_of_circle_is_the_short_way_round():
    c = NORTH
    a = frame_point(c, 1.0, 0.2)
    b = frame_point(c, 1.0, -0.3)
    arc = piece_of_circle(a, b, c, 1.0)
    assert arc.span == pytest.approx(0.5, abs=1e-12)
    np.testing.assert_allclose(arc.start, a, atol=1e-12)
    np.testing.assert_allclose(arc.end, b, atol=1e-12)
    # across the frame's angle seam
    a = frame_point(c, 1.0, math.pi - 0.1)
    b = frame_point(c, 1.0, -math.pi + 0.1)
    assert piece_of_circle(a, b, c, 1.0).span == pytest.approx(0.2, abs=1e-12)


def test_piece_of_circle_errors():
    c = NORTH
    a = frame_point(c, 1.0, 0.2)
    with pytest.raises(EqualEndpoints):
        piece_of_circle(a, a, c, 1.0)
    with pytest.raises(NotOnCircle):
        piece_of_circle(a, frame_point(c, 0.9, 0.4), c, 1.0)
    with pytest.raises(NotOnCircle):
        piece_of_circle(frame_point(c, 0.9, 0.4), a, c, 1.0)


def test_piece_containment_reuleaux():
    body = reuleaux_odd_gon(3, 1.0)
    a, b = body.vertices[0], body.vertices[1]
    c = body.vertices[2]
    rep = check_piece_containment(body, a, b, c, 1.0, tol=0.03)
    assert rep.passed
    assert piece_report(body, 1.0, n=20, tol=0.03).passed


def test_piece_containment_fails_for_triangle():
    # the arc about the third vertex bulges outside the opposite edge
    body = geodesic_triangle(1.0)
    u, v, w = body.vertices
    a, b, c = (u, v, w) if distance(u, v) > 0.5 else (u, w, v)
    rep = check_piece_containment(body, a, b, c, 1.0, tol=0.03)
    assert not rep.passed
    assert rep.worst_margin < -0.05


def test_piece_endpoints_must_be_inside():
    body = reuleaux_odd_gon(3, 1.0)
    a = frame_point(NORTH, 1.2, 0.0)
    b = frame_point(NORTH, 0.1, 2.0)
    cs = circle_intersections(Ball(a, 1.0), Ball(b, 1.0))
    with pytest.raises(EndpointsOutsideBody):
        check_piece_containment(body, a, b, cs[0], 1.0)


def test_completion_of_a_diametral_pair():
    a = frame_point(NORTH, 0.5, 0.0)
    b = frame_point(NORTH, 0.5, math.pi)
    body = complete(np.array([a, b]), CompletionConfig(1.0, resolution=0.01))
    assert np.all(contains(body, np.array([a, b])) >= -1e-9)
    assert is_complete(body, 1.0, tol=0.03).passed


def test_completion_of_a_single_point():
    p = normalize(np.array([0.1, -0.2, 1.0]))
    body = complete(p, CompletionConfig(1.0, resolution=0.01))
    assert contains(body, p) >= -1e-9
    assert diameter(body)[0] == pytest.approx(1.0, abs=0.03)
