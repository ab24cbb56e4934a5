from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cubelab import lazy, raag
from cubelab.isometry import (
    Inconclusive, NotProduct, NotStabilized, ValidationFailed,
    axis, axis_in_ball, classify, decompose_smin, fixed_set_growth, interval_window,
    min_set_window, smin_window, translation_length, validate_axis,
)
from cubelab.lazy import LineComplex, RaagCover, TreeComplex, ball, ball_vertices, product
from cubelab.median import median, verify_median_graph

F2 = RaagCover(raag.DefiningGraph.free(2))
P4 = RaagCover(raag.DefiningGraph.path(4))
Z2 = product(LineComplex(), LineComplex())
T3 = TreeComplex(3)
LT3 = product(LineComplex(), T3)
T = lazy.line_translation(1)
RHO = lazy.tree_rotation([1, 2, 0])
ID = lazy.identity()


def word(cover, w):
    return lazy.raag_element(cover, w)


def brute_min(g, lc, center, radius, n=1):
    """Minimal displacement of g^n over the ball and its minimizers."""
    gn = g ** n
    disp = {v: lc.distance(v, gn(v)) for v in ball_vertices(lc, center, radius)}
    m = min(disp.values())
    return m, {v for v, d in disp.items() if d == m}


# -- classification ------------------------------------------------------------


def test_classify_examples():
    c = classify(lazy.product_isometry(T, ID), Z2, 3)
    assert c.verdict == "loxodromic" and c.witness.translation_length == 1
    assert classify(lazy.tree_rotation([1, 2, 0]), T3, 3).verdict == "elliptic"
    # reflection of the line through the midpoint of the edge 0-1
    inv = classify(lazy.line_reflection(1), LineComplex(), 3)
    assert inv.verdict == "inversion" and inv.power == 1


def test_point_reflection_of_z2_is_an_inversion():
    # reflection through the centre of a square fixes no vertex and swaps
    # the sides of both walls through that square
    g = lazy.product_isometry(lazy.line_reflection(1), lazy.line_reflection(1))
    assert classify(g, Z2, 3).verdict == "inversion"


def test_quarter_turn_of_square_is_an_inversion_at_any_depth():
    # no fixed vertex; the half turn swaps the sides of both walls
    sq = lazy.FiniteComplex(verify_median_graph(
        ([(0, 0), (0, 1), (1, 1), (1, 0)],
         [((0, 0), (0, 1)), ((0, 1), (1, 1)), ((1, 1), (1, 0)), ((1, 0), (0, 0))])))
    rot = lazy.permutation({(0, 0): (0, 1), (0, 1): (1, 1), (1, 1): (1, 0), (1, 0): (0, 0)})
    for depth in (1, 2):
        c = classify(rot, sq, depth)
        assert c.verdict == "inversion" and c.power == 2


def test_finite_orbit_is_elliptic():
    # a 3-cycle of the leaves of a star: the centre is fixed
    star = lazy.FiniteComplex(verify_median_graph(([0, 1, 2, 3], [(0, 1), (0, 2), (0, 3)])))
    c = classify(lazy.permutation({1: 2, 2: 3, 3: 1}), star, 1)
    assert c.verdict == "elliptic" and c.witness == (0,)
    # the swap of two leaves of a path of length 2 around its middle
    path = lazy.FiniteComplex(verify_median_graph(([0, 1, 2], [(0, 1), (1, 2)])), root=0)
    c = classify(lazy.permutation({0: 2, 2: 0}), path, 2)
    assert c.verdict == "elliptic"


def test_translation_length_examples():
    assert translation_length(word(F2, "ab"), F2, 4)[0] == 2
    assert translation_length(lazy.product_isometry(T, T), Z2, 3)[0] == 2
    # frozen from brute_min over the radius-4 ball
    assert brute_min(word(F2, "aba"), F2, (), 4)[0] == 3
    assert translation_length(word(F2, "aba"), F2, 4)[0] == 3


def test_translation_length_not_stabilized():
    # a far-away axis: the window has not reached it yet
    g = lazy.tree_word([0, 1])
    far = lazy.tree_word([2, 0, 2, 1]).compose(g).compose(lazy.tree_word([1, 2, 0, 2]))
    with pytest.raises(NotStabilized):
        translation_length(far, T3, 3)


def test_axis_examples():
    ax = axis(word(F2, "a"), F2, 3)
    assert ax.translation_length == 1 and len(ax.period_path) == 2
    ax = axis(lazy.product_isometry(T, ID), Z2, 3)
    assert {v[1] for v in ax.period_path} == {0}
    ax = axis(word(P4, "ad"), P4, 3)
    assert ax.translation_length == 2 and len(ax.period_path) == 3
    # frozen oracle: the normal form of ad has length 2
    assert len(raag.normal_form("ad", P4.graph)) == 2


def test_validate_axis_rejects_off_axis_base():
    g = word(F2, "a")
    with pytest.raises(ValidationFailed):
        validate_axis(g, F2, raag.normal_form("b", F2.graph), 3)  # b a b^-1 path folds back


def test_inconclusive_is_an_error_not_a_guess():
    # conjugate of a translation whose axis lies 4 steps from the root
    g = lazy.tree_word([1, 2, 1, 2, 0, 1, 2, 1, 2, 1])
    with pytest.raises(Inconclusive):
        classify(g, T3, 2)
    assert classify(g, T3, 6).verdict == "loxodromic"


# -- minimal sets -----------------------------------------------------------


def test_min_examples():
    m = min_set_window(lazy.product_isometry(T, ID), 1, LT3, 3)
    assert m.vertices == frozenset(m.window.complex.vertices)
    m = min_set_window(word(F2, "a"), 1, F2, 3)
    assert all(all(x in (0, 1) for x in v) for v in m.vertices)  # powers of a only
    assert len(m.vertices) == 7
    g = word(F2, "ab")
    m1, m2 = min_set_window(g, 1, F2, 4), min_set_window(g, 2, F2, 4)
    assert m1.vertices <= m2.vertices
    assert m1.vertices == m2.vertices == brute_min(g, F2, (), 4, 2)[1]


def test_smin_examples():
    sm = smin_window(lazy.product_isometry(T, ID), Z2, 3, 3)
    assert sm.vertices == frozenset(sm.window.complex.vertices)
    sm = smin_window(word(F2, "a"), F2, 3, 3)
    assert all(len(m.vertices) == 7 for m in sm.per_n.values())
    g = lazy.product_isometry(RHO, T)
    tl = product(T3, LineComplex())
    sm = smin_window(g, tl, 4, 3)
    sizes = {n: len(m.vertices) for n, m in sm.per_n.items()}
    # frozen from brute_min per power: the axis column for n = 1, 2 and
    # the whole Fix(rho^3) x line slab for n = 3
    assert sizes == {n: len(brute_min(g, tl, ((), 0), 4, n)[1]) for n in (1, 2, 3)}
    assert sizes == {1: 9, 2: 9, 3: 120}


def test_smin_threads_deterministic():
    g = lazy.product_isometry(RHO, T)
    tl = product(T3, LineComplex())
    a = smin_window(g, tl, 3, 3, threads=1).to_json()
    b = smin_window(g, tl, 3, 3, threads=4).to_json()
    assert a == b


@pytest.mark.parametrize("g,lc", [
    (word(F2, "ab"), F2),
    (lazy.product_isometry(RHO, T), product(T3, LineComplex())),
    (lazy.product_isometry(T, T), Z2),
])
def test_min_sets_nest_under_divisibility(g, lc):
    ms = {n: min_set_window(g, n, lc, 3).vertices for n in (1, 2, 3, 4, 6)}
    for p, q in [(1, 2), (1, 3), (2, 4), (2, 6), (3, 6), (1, 6)]:
        assert ms[p] <= ms[q]


def test_smin_is_median_closed_in_interior():
    g = lazy.product_isometry(RHO, T)
    tl = product(T3, LineComplex())
    sm = smin_window(g, tl, 3, 3)
    c = sm.window.complex
    members = sorted(sm.vertices, key=repr)
    for x, y, z in combinations(members, 3):
        assert median(c, x, y, z) in sm.vertices


# -- decomposition ------------------------------------------------------------


@pytest.mark.parametrize("depth", [3, 4, 5])
@pytest.mark.parametrize("g2", [ID, RHO], ids=["id", "rho"])
def test_decompose_bijection_on_line_times_tree(depth, g2):
    g = lazy.product_isometry(T, g2)
    dec = decompose_smin(g, LT3, depth, 3)
    assert all(lab[0] == 0 for lab in dec.axis_labels)  # line walls
    assert all(lab[0] == 1 for lab in dec.transverse_labels)  # tree walls
    assert len(set(dec.coords.values())) == len(dec.coords)
    assert dec.checked_pairs > 0


def test_decompose_z2_and_free_group():
    dec = decompose_smin(lazy.product_isometry(T, ID), Z2, 3, 2)
    assert {lab[0] for lab in dec.axis_labels} == {0}
    assert {lab[0] for lab in dec.transverse_labels} == {1}
    dec = decompose_smin(word(F2, "a"), F2, 3, 2)
    assert dec.transverse_labels == ()


# -- intervals and fixed sets ----------------------------------------------------


def test_interval_window_examples():
    ax = axis(word(F2, "a"), F2, 3)
    iv = interval_window(word(F2, "a"), F2, 3)
    assert iv == frozenset(axis_in_ball(word(F2, "a"), ax, F2, (), 3))
    g = lazy.product_isometry(T, T)
    iv = interval_window(g, Z2, 4)
    # frozen: the staircase band from (-2,-2) to (2,2) is the full 5x5 box
    # minus nothing outside the window interior; counted by enumeration
    box = {(x, y) for x in range(-2, 3) for y in range(-2, 3)}
    assert iv == box & set(ball(Z2, (0, 0), 4).complex.vertices)
    iv = interval_window(lazy.product_isometry(T, ID), LT3, 3)
    assert {v[1] for v in iv} == {()}


def test_interval_points_are_minimizers_in_free_group_and_z2():
    for g, lc, depth in [(word(F2, "ab"), F2, 4), (lazy.product_isometry(T, T), Z2, 4)]:
        iv = interval_window(g, lc, depth)
        m = min(lc.distance(v, g(v)) for v in iv)
        interior = [v for v in iv if lc.distance(lc.root, v) < depth]
        assert all(lc.distance(v, g(v)) == m for v in interior)


def test_fixed_set_growth_examples():
    full = len(ball_vertices(T3, (), 3))
    assert fixed_set_growth(lazy.product_isometry(T, ID), LT3, 3, 4) == [(n, full) for n in range(1, 5)]
    seq = fixed_set_growth(lazy.product_isometry(T, RHO), LT3, 3, 6)
    # frozen from direct fixed-point counts of rho^n on the radius-3 ball
    brute = [(n, sum(1 for v in ball_vertices(T3, (), 3) if (RHO ** n)(v) == v)) for n in range(1, 7)]
    assert seq == brute == [(1, 1), (2, 1), (3, 22), (4, 1), (5, 1), (6, 22)]
    s = lazy.tree_word([0, 1])
    assert all(k == 0 for _, k in fixed_set_growth(lazy.product_isometry(T, s), LT3, 3, 3))
    with pytest.raises(NotProduct):
        fixed_set_growth(word(F2, "a"), F2, 3, 3)


@settings(max_examples=20)
@given(st.lists(st.sampled_from("aAbB"), min_size=1, max_size=4))
def test_translation_length_matches_cyclic_core(letters):
    text = "".join(ch if ch.islower() else ch.lower() + "^-1" for ch in letters)
    dg = F2.graph
    w = raag.normal_form(text, dg)
    if not w:
        return
    core, _ = raag.cyclic_reduction(w, dg)
    conj = len(w) - len(core)
    g = word(F2, w)
    # axis lies at distance conj/2 from the root; give the window room
    assert translation_length(g, F2, conj // 2 + 3)[0] == len(core)
