"""Snake graphs of diagonals in triangulated polygons and their matchings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .laurent import LaurentPoly
from .polygon import Chord, PolygonError, Triangulation, ccw_sides, chord, crosses, is_boundary

Point = tuple[int, int]
Edge = tuple[Point, Point]

CORNERS = [(0, 0), (1, 0), (1, 1), (0, 1)]  # SW, SE, NE, NW: counterclockwise
SIDES = {"S": ((0, 0), (1, 0)), "E": ((1, 0), (1, 1)), "N": ((0, 1), (1, 1)), "W": ((0, 0), (0, 1))}


def _edge(a: Point, b: Point) -> Edge:
    return (a, b) if a < b else (b, a)


class SnakeError(PolygonError):
    pass


@dataclass(frozen=True)
class Tile:
    label: int
    origin: Point
    corners: dict[Point, int]  # absolute corner -> polygon vertex

    def side_vertices(self, side: str) -> tuple[int, int]:
        ox, oy = self.origin
        a, b = SIDES[side]
        return (self.corners[(ox + a[0], oy + a[1])], self.corners[(ox + b[0], oy + b[1])])

    def side_edge(self, side: str) -> Edge:
        ox, oy = self.origin
        a, b = SIDES[side]
        return _edge((ox + a[0], oy + a[1]), (ox + b[0], oy + b[1]))


def crossing_walk(T: Triangulation, gamma: Chord):
    """Triangles met by gamma and the diagonals crossed, in order from gamma[0]."""
    s, e = gamma
    start = [t for t in T.triangles if s in t and crosses(chord(*[v for v in t if v != s]), gamma)]
    if len(start) != 1:
        raise SnakeError(f"cannot locate the first triangle of {gamma}")
    tris = [start[0]]
    crossed: list[Chord] = []
    entering = None
    while True:
        cur = tris[-1]
        nxt = [c for c in ccw_sides(cur) if c != entering and crosses(c, gamma)]
        if not nxt:
            if e not in cur:
                raise SnakeError(f"walk along {gamma} got stuck at {cur}")
            return tris, crossed
        (side,) = nxt
        crossed.append(side)
        other = [t for t in T.triangles_of(side) if t != cur]
        tris.append(other[0])
        entering = side


class SnakeGraph:
    """Labeled snake graph of gamma with respect to T.

    Tile j is the quadrilateral around the j-th crossed diagonal.  Tile 1 has
    the polygon's orientation and orientations alternate; tile j+1 is glued
    along the third side of the triangle between the j-th and (j+1)-st
    crossings.
    """

    def __init__(self, T: Triangulation, gamma: Chord):
        gamma = chord(*gamma)
        if is_boundary(gamma, T.m):
            raise SnakeError(f"{gamma} is a boundary segment")
        if gamma in T:
            raise SnakeError(f"{gamma} belongs to the triangulation")
        self.T = T
        self.gamma = gamma
        self.triangles, crossed = crossing_walk(T, gamma)
        self.crossed_labels = [T.label(c) for c in crossed]
        self.crossed = crossed
        d = len(crossed)
        self.interior_chords = []
        for j in range(1, d):
            (third,) = [c for c in ccw_sides(self.triangles[j]) if c not in (crossed[j - 1], crossed[j])]
            self.interior_chords.append(third)
        self.tiles: list[Tile] = []
        self.shape: list[str] = []
        self._embed()

    def _quad(self, j: int) -> list[int]:
        return sorted(set(self.triangles[j]) | set(self.triangles[j + 1]))

    def _place(self, origin: Point, order: list[int], anchor: int, anchor_corner: Point) -> dict:
        ox, oy = origin
        rel = (anchor_corner[0] - ox, anchor_corner[1] - oy)
        start = CORNERS.index(rel)
        i0 = order.index(anchor)
        out = {}
        for k in range(4):
            cx, cy = CORNERS[(start + k) % 4]
            out[(ox + cx, oy + cy)] = order[(i0 + k) % 4]
        return out

    def _embed(self) -> None:
        d = len(self.crossed)
        q = self._quad(0)
        # tile 1 keeps the polygon's orientation, with its diagonal running
        # NW-SE and the first shared side on the north or east
        p0, q0 = self.crossed[0]
        corners = None
        for anchor in (p0, q0):
            cand = self._place((0, 0), q, anchor, (0, 1))
            if cand[(1, 0)] not in (p0, q0):
                continue
            tile = Tile(self.crossed_labels[0], (0, 0), cand)
            if d == 1 or set(self.interior_chords[0]) in (set(tile.side_vertices("N")), set(tile.side_vertices("E"))):
                corners = cand
                break
        if corners is None:
            raise SnakeError("cannot place the first tile")
        self.tiles.append(Tile(self.crossed_labels[0], (0, 0), corners))
        for j in range(1, d):
            prev = self.tiles[-1]
            e = set(self.interior_chords[j - 1])
            if set(prev.side_vertices("E")) == e:
                side, origin = "E", (prev.origin[0] + 1, prev.origin[1])
            elif set(prev.side_vertices("N")) == e:
                side, origin = "N", (prev.origin[0], prev.origin[1] + 1)
            else:
                raise SnakeError(f"shared edge {sorted(e)} is not on the north or east side")
            self.shape.append(side)
            q = self._quad(j)
            order = q if j % 2 == 0 else q[::-1]
            a_corner, b_corner = (prev.origin[0] + SIDES[side][0][0], prev.origin[1] + SIDES[side][0][1]), \
                (prev.origin[0] + SIDES[side][1][0], prev.origin[1] + SIDES[side][1][1])
            a = prev.corners[a_corner]
            corners = self._place(origin, order, a, a_corner)
            if corners.get(b_corner) != prev.corners[b_corner]:
                raise SnakeError("tile orientation is inconsistent with the shared edge")
            self.tiles.append(Tile(self.crossed_labels[j], origin, corners))

    @property
    def d(self) -> int:
        return len(self.tiles)

    @cached_property
    def edges(self) -> dict[Edge, int | None]:
        """Graph edges with the T-label of the polygon edge they represent."""
        out: dict[Edge, int | None] = {}
        for tile in self.tiles:
            for side in "NSEW":
                a, b = tile.side_vertices(side)
                lab = self.T.label(chord(a, b))
                e = tile.side_edge(side)
                if e in out and out[e] != lab:
                    raise SnakeError("a shared edge carries two labels")
                out[e] = lab
        return out

    @cached_property
    def interior_edges(self) -> frozenset[Edge]:
        out = set()
        for j, side in enumerate(self.shape):
            out.add(self.tiles[j].side_edge(side))
        return frozenset(out)

    @cached_property
    def vertices(self) -> list[Point]:
        return sorted({p for e in self.edges for p in e})

    def signs(self) -> list[str]:
        """Sign of each interior edge: '+' if it lies right of gamma (oriented from gamma[0])."""
        s, e = self.gamma
        out = []
        for c in self.interior_chords:
            right = all(s < v < e for v in c if v not in self.gamma)
            out.append("+" if right else "-")
        return out

    # matchings

    @cached_property
    def _raw_matchings(self) -> list[frozenset[Edge]]:
        adj: dict[Point, list[Edge]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges):
            adj[e[0]].append(e)
            adj[e[1]].append(e)
        out: list[frozenset[Edge]] = []

        def rec(unmatched: list[Point], chosen: list[Edge]):
            if not unmatched:
                out.append(frozenset(chosen))
                return
            v = unmatched[0]
            for e in adj[v]:
                w = e[1] if e[0] == v else e[0]
                if w in unmatched:
                    rec([u for u in unmatched if u not in (v, w)], chosen + [e])

        rec(list(self.vertices), [])
        return out

    @cached_property
    def matchings(self) -> list[frozenset[Edge]]:
        """All perfect matchings, ordered by height then edges."""
        return sorted(self._raw_matchings, key=lambda P: (sum(self.enclosed(P)), sorted(P)))

    @cached_property
    def boundary_matchings(self) -> list[frozenset[Edge]]:
        inner = self.interior_edges
        return [P for P in self._raw_matchings if not (P & inner)]

    @cached_property
    def minimal_matching(self) -> frozenset[Edge]:
        """P_-: the boundary matching holding the side of the first triangle
        that precedes the first crossed diagonal counterclockwise."""
        sides = ccw_sides(self.triangles[0])
        k = sides.index(self.crossed[0])
        target = sides[k - 1]
        first = self.tiles[0]
        edge = next(first.side_edge(s) for s in "NSEW" if chord(*first.side_vertices(s)) == target)
        found = [P for P in self.boundary_matchings if edge in P]
        if len(self.boundary_matchings) != 2 or len(found) != 1:
            raise SnakeError("expected exactly two boundary matchings")
        return found[0]

    @cached_property
    def maximal_matching(self) -> frozenset[Edge]:
        (P,) = [Q for Q in self.boundary_matchings if Q != self.minimal_matching]
        return P

    def enclosed(self, P: frozenset[Edge]) -> list[int]:
        """0/1 per tile: inside the cycles of P symmetric-difference P_-."""
        diff = P ^ self.minimal_matching
        vertical = [e for e in diff if e[0][0] == e[1][0]]
        out = []
        for tile in self.tiles:
            cx, cy = tile.origin[0] + 0.5, tile.origin[1] + 0.5
            hits = sum(1 for (a, b) in vertical if a[0] > cx and a[1] < cy < b[1])
            out.append(hits % 2)
        return out

    def height(self, P: frozenset[Edge]) -> tuple[int, ...]:
        """y-exponent vector of the height monomial of P."""
        y = [0] * len(self.T)
        for lab, inside in zip(self.crossed_labels, self.enclosed(P)):
            y[lab - 1] += inside
        return tuple(y)

    def weight(self, P: frozenset[Edge]) -> tuple[int, ...]:
        """u-exponent vector of the weight monomial of P."""
        u = [0] * len(self.T)
        for e in P:
            lab = self.edges[e]
            if lab is not None:
                u[lab - 1] += 1
        return tuple(u)

    def to_json(self) -> dict:
        def name(lab):
            return lab if lab is not None else "boundary"

        tiles = []
        for t in self.tiles:
            tiles.append({
                "label": t.label,
                "edges": {s: name(self.T.label(chord(*t.side_vertices(s)))) for s in "NSEW"},
            })
        return {"gamma": list(self.gamma), "tiles": tiles, "shape": list(self.shape),
                "signs": self.signs(), "matchings": len(self.matchings)}


@dataclass(frozen=True)
class Expansion:
    x: LaurentPoly
    F: LaurentPoly
    g: tuple[int, ...]

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "F": self.F.to_json(), "g": list(self.g),
                "x_text": str(self.x), "F_text": str(self.F)}


def build_snake_graph(T: Triangulation, gamma: Chord) -> SnakeGraph:
    return SnakeGraph(T, gamma)


def enumerate_matchings(G: SnakeGraph) -> list[frozenset[Edge]]:
    return G.matchings


def minimal_matching(G: SnakeGraph) -> frozenset[Edge]:
    return G.minimal_matching


def expansion(T: Triangulation, gamma: Chord) -> Expansion:
    """x, F and g of gamma; chords in T give (u_i, 1, e_i), boundary gives (1, 1, 0)."""
    k = len(T)
    gamma = chord(*gamma)
    if is_boundary(gamma, T.m):
        return Expansion(LaurentPoly.one(k), LaurentPoly.one(k), (0,) * k)
    lab = T.label(gamma)
    if lab is not None:
        e = tuple(int(i == lab - 1) for i in range(k))
        return Expansion(LaurentPoly.u(k, lab), LaurentPoly.one(k), e)
    G = SnakeGraph(T, gamma)
    cross = [0] * k
    for lab in G.crossed_labels:
        cross[lab - 1] += 1
    terms: dict[tuple[int, ...], int] = {}
    fterms: dict[tuple[int, ...], int] = {}
    for P in G.matchings:
        u = tuple(a - b for a, b in zip(G.weight(P), cross))
        y = G.height(P)
        terms[u + y] = terms.get(u + y, 0) + 1
        fterms[(0,) * k + y] = fterms.get((0,) * k + y, 0) + 1
    g = tuple(a - b for a, b in zip(G.weight(G.minimal_matching), cross))
    return Expansion(LaurentPoly(k, terms), LaurentPoly(k, fterms), g)
