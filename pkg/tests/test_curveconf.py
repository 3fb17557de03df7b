import random

import pytest

from rspin.curveconf import (
    Crossing,
    CurveSystem,
    chain,
    dynkin,
    e6_a7_core,
    has_induced_e6,
    intersection_graph,
    is_arboreal,
    is_e_arboreal,
    is_spanning,
    neighborhood_invariants,
    parse_curve_system,
)
from rspin.errors import (
    DisconnectedError,
    InconsistentInputError,
    NotSimpleError,
    RibbonError,
    UnsupportedTypeError,
)


def triangle():
    return CurveSystem(
        ["a", "b", "c"],
        [Crossing("x", ("a", "b")), Crossing("y", ("b", "c")),
         Crossing("z", ("c", "a"))],
        ribbon={"a": ("x", "z"), "b": ("x", "y"), "c": ("y", "z")})


def test_intersection_graph_basics():
    two = CurveSystem(["a", "b"])
    g = intersection_graph(two)
    assert len(g.vertices) == 2 and len(g.edges) == 0
    a2 = chain(2)
    g = intersection_graph(a2)
    assert len(g.edges) == 1


def test_core_graph_is_a_tree_with_twelve_edges():
    g = intersection_graph(e6_a7_core())
    assert len(g.vertices) == 13 and len(g.edges) == 12 and g.is_tree()


def test_not_simple_rejected():
    sys_ = CurveSystem(
        ["a", "b"],
        [Crossing("x", ("a", "b")), Crossing("y", ("a", "b"))])
    with pytest.raises(NotSimpleError):
        intersection_graph(sys_)


def test_self_intersection_rejected():
    with pytest.raises(InconsistentInputError):
        Crossing("x", ("a", "a"))


def test_arboreal_predicates():
    assert is_arboreal(chain(7)) and not is_e_arboreal(chain(7))
    e6 = dynkin("E6")
    assert is_arboreal(e6) and is_e_arboreal(e6)
    assert not is_arboreal(triangle())


def test_e6_search_rejects_wrong_trees():
    # D6: 5-chain with the branch at the second vertex, not the middle.
    curves = [f"v{i}" for i in range(1, 7)]
    xs = [Crossing("x1", ("v1", "v2")), Crossing("x2", ("v2", "v3")),
          Crossing("x3", ("v3", "v4")), Crossing("x4", ("v4", "v5")),
          Crossing("x5", ("v2", "v6"))]
    d6 = CurveSystem(curves, xs)
    assert is_arboreal(d6) and not is_e_arboreal(d6)
    assert not has_induced_e6(intersection_graph(chain(12)))


def test_dynkin_graph_shapes():
    g = intersection_graph(dynkin("A5"))
    assert sorted(g.degree(v) for v in g.vertices) == [1, 1, 2, 2, 2]
    g = intersection_graph(dynkin("E6"))
    assert sorted(g.degree(v) for v in g.vertices) == [1, 1, 1, 2, 2, 3]
    with pytest.raises(UnsupportedTypeError):
        dynkin("F4")


def test_single_curve_is_annulus():
    inv = neighborhood_invariants(CurveSystem(["a"]))
    assert (inv.euler, inv.boundary, inv.genus) == (0, 2, 0)


def test_a2_invariants():
    inv = neighborhood_invariants(chain(2))
    assert (inv.euler, inv.boundary, inv.genus) == (-1, 1, 1)


def test_chain_pattern():
    # Frozen from hand-enumerated boundary walks: chi = -(n-1),
    # b alternates 2, 1 with parity, g = floor(n/2).
    for n in range(1, 13):
        inv = neighborhood_invariants(chain(n))
        assert inv.euler == -(n - 1)
        assert inv.boundary == (2 if n % 2 == 1 else 1)
        assert inv.genus == n // 2


def test_e6_invariants():
    inv = neighborhood_invariants(dynkin("E6"))
    assert (inv.euler, inv.boundary, inv.genus) == (-5, 1, 3)


def test_core_invariants_and_spanning():
    core = e6_a7_core()
    inv = neighborhood_invariants(core)
    assert (inv.euler, inv.boundary, inv.genus) == (-12, 2, 6)
    assert is_spanning(core, (6, 2))
    assert is_e_arboreal(core)
    assert not is_spanning(core, (6, 1))


def test_spanning_examples():
    assert is_spanning(dynkin("E6"), (3, 1))
    assert not is_spanning(chain(2), (1, 2))


def test_euler_always_counts_crossings():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randint(1, 10)
        sys_ = chain(n)
        assert neighborhood_invariants(sys_).euler == -len(sys_.crossings)


def test_relabel_and_rotate_invariance():
    core = e6_a7_core()
    ren = {c: f"curve_{i}" for i, c in enumerate(core.curves)}
    inv0 = neighborhood_invariants(core)
    inv1 = neighborhood_invariants(core.relabeled(ren))
    assert inv0 == inv1
    # Rotating a cyclic ribbon sequence changes nothing.
    rib = {c: core.ribbon[c][1:] + core.ribbon[c][:1] for c in core.curves}
    rotated = CurveSystem(core.curves, core.crossings, ribbon=rib)
    assert neighborhood_invariants(rotated) == inv0


def test_triangle_needs_ribbon():
    no_ribbon = CurveSystem(
        ["a", "b", "c"],
        [Crossing("x", ("a", "b")), Crossing("y", ("b", "c")),
         Crossing("z", ("c", "a"))])
    with pytest.raises(RibbonError):
        neighborhood_invariants(no_ribbon)
    inv = neighborhood_invariants(triangle())
    assert inv.euler == -3


def test_two_point_pair_storable_with_ribbon():
    # Pairs meeting twice are legal containers; only graph predicates refuse.
    bigon = CurveSystem(
        ["a", "b"],
        [Crossing("x", ("a", "b"), 1), Crossing("y", ("a", "b"), -1)],
        ribbon={"a": ("x", "y"), "b": ("x", "y")})
    with pytest.raises(NotSimpleError):
        intersection_graph(bigon)
    inv = neighborhood_invariants(bigon)
    assert inv.euler == -2
    assert 2 - 2 * inv.genus - inv.boundary == -2


def test_disconnected_handling():
    sys_ = CurveSystem(["a", "b", "c"], [Crossing("x", ("a", "b"))])
    with pytest.raises(DisconnectedError):
        neighborhood_invariants(sys_)
    per = neighborhood_invariants(sys_, per_component=True)
    assert sorted((inv.euler, inv.boundary) for inv in per) == [(-1, 1), (0, 2)]


def test_parse_round_trip():
    text = """
    curves a b c
    ambient 1 2
    intersections
    x a b 1
    y b c -1
    """
    sys_ = parse_curve_system(text)
    assert sys_.curves == ("a", "b", "c")
    assert sys_.ambient == (1, 2)
    assert sys_.crossing("y").sign == -1
    inv = neighborhood_invariants(sys_)
    assert (inv.euler, inv.boundary, inv.genus) == (-2, 2, 1)


def test_parse_with_ribbon():
    text = """
    curves a b c
    intersections
    x a b
    y b c
    z c a
    ribbon a x z
    ribbon b x y
    ribbon c y z
    """
    sys_ = parse_curve_system(text)
    assert sys_.ribbon_given
    assert neighborhood_invariants(sys_).euler == -3
