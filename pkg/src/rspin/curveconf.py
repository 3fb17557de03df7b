"""Combinatorial models of simple-closed-curve configurations.

A CurveSystem records named curves, signed intersection points, and ribbon
data: for each curve, the cyclic order of its intersections.  The regular
neighborhood of the union is the thickening of the 4-valent graph whose
vertices are the intersection points; its boundary circles are traced
combinatorially, which pins down (chi, b, g).

Ribbon data may be omitted for arboreal (tree-patterned) configurations,
where the canonical plumbing is well-defined; anything else must supply the
embedding explicitly.  Intersection signs are stored for the algebraic
pairing used elsewhere and do not enter chi/b/g (orientable plumbing).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    DisconnectedError,
    InconsistentInputError,
    NotSimpleError,
    RibbonError,
    UnsupportedTypeError,
)


@dataclass(frozen=True)
class Crossing:
    ident: str
    curves: tuple[str, str]
    sign: int = 1

    def __post_init__(self):
        if self.curves[0] == self.curves[1]:
            raise InconsistentInputError(
                f"crossing {self.ident}: simple closed curves cannot self-intersect")
        if self.sign not in (-1, 1):
            raise InconsistentInputError(f"crossing {self.ident}: sign must be +-1")


class CurveSystem:
    """Named curves + signed crossings + (possibly derived) ribbon data."""

    def __init__(
        self,
        curves: Iterable[str],
        crossings: Iterable[Crossing] = (),
        ribbon: Optional[Mapping[str, Sequence[str]]] = None,
        ambient: Optional[tuple[int, int]] = None,
        roles: Optional[Mapping[str, str]] = None,
        note: str = "",
    ):
        self.curves = tuple(curves)
        self.crossings = tuple(crossings)
        self.ambient = ambient
        self.roles = dict(roles or {})
        self.note = note
        if len(set(self.curves)) != len(self.curves):
            raise InconsistentInputError("duplicate curve names")
        seen = set()
        for x in self.crossings:
            if x.ident in seen:
                raise InconsistentInputError(f"duplicate crossing id {x.ident}")
            seen.add(x.ident)
            for c in x.curves:
                if c not in self.curves:
                    raise InconsistentInputError(
                        f"crossing {x.ident} references unknown curve {c}")
        self.ribbon_given = ribbon is not None
        if ribbon is None:
            self.ribbon = {c: tuple(x.ident for x in self.crossings if c in x.curves)
                           for c in self.curves}
        else:
            self.ribbon = {c: tuple(ribbon.get(c, ())) for c in self.curves}
        self._check_ribbon()

    def _check_ribbon(self):
        for c in self.curves:
            incident = [x.ident for x in self.crossings if c in x.curves]
            cyc = self.ribbon[c]
            if sorted(cyc) != sorted(incident):
                raise InconsistentInputError(
                    f"ribbon data for {c} must list each incident crossing once")

    # -- basic queries ------------------------------------------------------

    def crossing(self, ident: str) -> Crossing:
        for x in self.crossings:
            if x.ident == ident:
                return x
        raise InconsistentInputError(f"no crossing {ident}")

    def pair_counts(self) -> dict[frozenset, int]:
        counts: dict[frozenset, int] = {}
        for x in self.crossings:
            key = frozenset(x.curves)
            counts[key] = counts.get(key, 0) + 1
        return counts

    def components(self) -> list["CurveSystem"]:
        parent = {c: c for c in self.curves}

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        for x in self.crossings:
            a, b = find(x.curves[0]), find(x.curves[1])
            if a != b:
                parent[a] = b
        groups: dict[str, list[str]] = {}
        for c in self.curves:
            groups.setdefault(find(c), []).append(c)
        out = []
        for members in groups.values():
            mem = set(members)
            xs = [x for x in self.crossings if x.curves[0] in mem]
            rib = {c: self.ribbon[c] for c in members} if self.ribbon_given else None
            out.append(CurveSystem(members, xs, ribbon=rib))
        return out

    def relabeled(self, mapping: Mapping[str, str]) -> "CurveSystem":
        ren = lambda c: mapping.get(c, c)
        curves = [ren(c) for c in self.curves]
        xs = [Crossing(x.ident, (ren(x.curves[0]), ren(x.curves[1])), x.sign)
              for x in self.crossings]
        rib = {ren(c): seq for c, seq in self.ribbon.items()} if self.ribbon_given else None
        return CurveSystem(curves, xs, ribbon=rib, ambient=self.ambient,
                           roles={ren(c): r for c, r in self.roles.items()},
                           note=self.note)

    def __repr__(self):
        return f"CurveSystem({len(self.curves)} curves, {len(self.crossings)} crossings)"


@dataclass(frozen=True)
class IntersectionGraph:
    vertices: tuple[str, ...]
    edges: frozenset

    def degree(self, v: str) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighbors(self, v: str) -> list[str]:
        return sorted(w for e in self.edges if v in e for w in e if w != v)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in self.neighbors(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    def is_tree(self) -> bool:
        return self.is_connected() and len(self.edges) == len(self.vertices) - 1


@dataclass(frozen=True)
class NeighborhoodInvariants:
    euler: int
    boundary: int
    genus: int

    def __post_init__(self):
        if self.euler != 2 - 2 * self.genus - self.boundary:
            raise InconsistentInputError("chi = 2 - 2g - b violated")


def intersection_graph(sys: CurveSystem) -> IntersectionGraph:
    """Vertices are curves; an edge means exactly one geometric intersection."""
    for pair, n in sys.pair_counts().items():
        if n > 1:
            a, b = sorted(pair)
            raise NotSimpleError(f"curves {a}, {b} meet in {n} points")
    edges = frozenset(frozenset(x.curves) for x in sys.crossings)
    return IntersectionGraph(sys.curves, edges)


def is_arboreal(sys: CurveSystem) -> bool:
    return intersection_graph(sys).is_tree()


def _branch_lengths(graph: IntersectionGraph, root: str) -> list[int]:
    lengths = []
    for first in graph.neighbors(root):
        n, prev, cur = 1, root, first
        while True:
            nxt = [w for w in graph.neighbors(cur) if w != prev]
            if len(nxt) != 1:
                break
            prev, cur = cur, nxt[0]
            n += 1
        lengths.append(n)
    return sorted(lengths)


def _induced_is_e6(graph: IntersectionGraph, verts: tuple[str, ...]) -> bool:
    sub = frozenset(e for e in graph.edges if e <= set(verts))
    induced = IntersectionGraph(verts, sub)
    if len(sub) != 5 or not induced.is_tree():
        return False
    centers = [v for v in verts if induced.degree(v) == 3]
    if len(centers) != 1:
        return False
    return _branch_lengths(induced, centers[0]) == [1, 2, 2]


def has_induced_e6(graph: IntersectionGraph) -> bool:
    """Exhaustive induced-subgraph search for the 5-chain-plus-middle-branch tree."""
    if len(graph.vertices) < 6:
        return False
    return any(_induced_is_e6(graph, sub)
               for sub in itertools.combinations(graph.vertices, 6))


def is_e_arboreal(sys: CurveSystem) -> bool:
    graph = intersection_graph(sys)
    return graph.is_tree() and has_induced_e6(graph)


# -- regular neighborhood via face tracing ----------------------------------
#
# Darts: for curve c with cyclic crossing sequence (i_1 .. i_k), edge j runs
# from i_j to i_{j+1 (mod k)} and carries darts (c, j, 0) at its tail and
# (c, j, 1) at its head.  At each crossing the four darts interleave the two
# strands counterclockwise: (a_out, b_out, a_in, b_in), the transverse-
# crossing pattern.  Boundary circles of the thickened graph are the orbits
# of dart -> rotate(opposite(dart)).


def _trace_faces(sys: CurveSystem) -> int:
    out_dart: dict[tuple[str, str], tuple] = {}
    in_dart: dict[tuple[str, str], tuple] = {}
    for c in sys.curves:
        cyc = sys.ribbon[c]
        for j, ident in enumerate(cyc):
            out_dart[(c, ident)] = (c, j, 0)
            in_dart[(c, cyc[(j + 1) % len(cyc)])] = (c, j, 1)

    rotate: dict[tuple, tuple] = {}
    for x in sys.crossings:
        a, b = x.curves
        ring = [out_dart[(a, x.ident)], out_dart[(b, x.ident)],
                in_dart[(a, x.ident)], in_dart[(b, x.ident)]]
        for i, d in enumerate(ring):
            rotate[d] = ring[(i + 1) % 4]

    def opposite(d):
        c, j, end = d
        return (c, j, 1 - end)

    seen = set()
    faces = 0
    for start in rotate:
        if start in seen:
            continue
        faces += 1
        d = start
        while True:
            seen.add(d)
            d = rotate[opposite(d)]
            if d == start:
                break
    return faces


def neighborhood_invariants(
    sys: CurveSystem,
    per_component: bool = False,
):
    """(chi, b, g) of a regular neighborhood of the union.

    chi is minus the number of intersection points; b comes from the
    boundary walk on the 4-valent ribbon graph; g from chi = 2 - 2g - b.
    An isolated curve is an annulus.  Disconnected systems either error or,
    with per_component=True, return one result per component.
    """
    comps = sys.components()
    if len(comps) == 0:
        raise InconsistentInputError("empty curve system")
    if len(comps) > 1:
        if per_component:
            return tuple(neighborhood_invariants(c) for c in comps)
        raise DisconnectedError(
            f"system has {len(comps)} components; pass per_component=True")
    if not sys.crossings:
        return NeighborhoodInvariants(0, 2, 0)
    if not sys.ribbon_given and not is_arboreal(sys):
        raise RibbonError(
            "neighborhood of a non-tree configuration needs explicit ribbon data")
    chi = -len(sys.crossings)
    b = _trace_faces(sys)
    if (2 - chi - b) % 2 != 0:
        raise InconsistentInputError("boundary walk produced non-integral genus")
    g = (2 - chi - b) // 2
    if g < 0:
        raise InconsistentInputError("boundary walk produced negative genus")
    return NeighborhoodInvariants(chi, b, g)


def is_spanning(sys: CurveSystem, ambient: Optional[tuple[int, int]] = None) -> bool:
    """True iff the neighborhood invariants match the ambient (g, b)."""
    target = ambient if ambient is not None else sys.ambient
    if target is None:
        raise InconsistentInputError("no ambient (genus, boundary) supplied")
    inv = neighborhood_invariants(sys)
    return (inv.genus, inv.boundary) == tuple(target)


# -- standard configurations -------------------------------------------------


def chain(n: int, prefix: str = "c") -> CurveSystem:
    """The n-curve chain: consecutive curves meet once (A_n plumbing)."""
    if n < 1:
        raise UnsupportedTypeError("chain length must be >= 1")
    curves = [f"{prefix}{i}" for i in range(1, n + 1)]
    xs = [Crossing(f"x{i}", (curves[i - 1], curves[i])) for i in range(1, n)]
    return CurveSystem(curves, xs)


def dynkin(kind: str) -> CurveSystem:
    """Standard plumbing configuration for a Dynkin type (A_n or E6)."""
    kind = kind.strip().upper().replace("_", "")
    if kind.startswith("A"):
        try:
            n = int(kind[1:])
        except ValueError:
            raise UnsupportedTypeError(f"unsupported Dynkin type {kind!r}") from None
        return chain(n)
    if kind == "E6":
        curves = [f"v{i}" for i in range(1, 7)]
        xs = [Crossing("x1", ("v1", "v2")), Crossing("x2", ("v2", "v3")),
              Crossing("x3", ("v3", "v4")), Crossing("x4", ("v4", "v5")),
              Crossing("x5", ("v3", "v6"))]
        return CurveSystem(curves, xs)
    raise UnsupportedTypeError(f"unsupported Dynkin type {kind!r}")


def e6_a7_core() -> CurveSystem:
    """The 13-curve core: an A7 chain joined to an E6 tree by one edge.

    Curves a1..a7 form the chain, b1..b6 the E6 tree (branch vertex b3,
    short-arm leaf b6), and b6 meets a4 once.  The tree thickens to a
    genus-6 surface with two boundary circles, which is what the spanning
    check certifies.
    """
    curves = [f"a{i}" for i in range(1, 8)] + [f"b{i}" for i in range(1, 7)]
    xs = [Crossing(f"xa{i}", (f"a{i}", f"a{i+1}")) for i in range(1, 7)]
    xs += [Crossing(f"xb{i}", (f"b{i}", f"b{i+1}")) for i in range(1, 5)]
    xs.append(Crossing("xb5", ("b3", "b6")))
    xs.append(Crossing("xj", ("b6", "a4")))
    return CurveSystem(curves, xs, ambient=(6, 2),
                       note="joined A7+E6 tree; canonical tree plumbing")


# -- textual configuration format --------------------------------------------
#
#   curves a1 a2 a3
#   ambient 1 2
#   intersections
#   x1 a1 a2 +1
#   x2 a2 a3 -1
#   ribbon a2 x1 x2
#
# One intersection per line: id, the two curves, an optional sign.
# Ribbon lines are optional; omitted curves get canonical (tree) order.


def parse_curve_system(text: str) -> CurveSystem:
    curves: list[str] = []
    ambient = None
    xs: list[Crossing] = []
    ribbon: dict[str, list[str]] = {}
    mode = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head == "curves":
            curves.extend(parts[1:])
            mode = None
        elif head == "ambient":
            if len(parts) != 3:
                raise InconsistentInputError("ambient needs genus and boundary count")
            ambient = (int(parts[1]), int(parts[2]))
            mode = None
        elif head == "intersections":
            mode = "intersections"
        elif head == "ribbon":
            if len(parts) < 2:
                raise InconsistentInputError("ribbon line needs a curve name")
            ribbon[parts[1]] = list(parts[2:])
            mode = None
        elif mode == "intersections":
            if len(parts) not in (3, 4):
                raise InconsistentInputError(
                    f"intersection line {line!r} needs: id curve curve [sign]")
            sign = int(parts[3]) if len(parts) == 4 else 1
            xs.append(Crossing(parts[0], (parts[1], parts[2]), sign))
        else:
            raise InconsistentInputError(f"unrecognized configuration line {line!r}")
    if ribbon:
        # Fill the remaining curves with canonical order so partial ribbon
        # files stay usable for tree configurations.
        full = {c: tuple(x.ident for x in xs if c in x.curves) for c in curves}
        full.update({c: tuple(seq) for c, seq in ribbon.items()})
        return CurveSystem(curves, xs, ribbon=full, ambient=ambient)
    return CurveSystem(curves, xs, ambient=ambient)
