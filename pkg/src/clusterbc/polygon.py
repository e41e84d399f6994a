"""Index combinatorics of the polygons P_{2n+2} and P_{n+3}.

Vertices are numbered counterclockwise.  A chord is a sorted pair of
vertex indices; it is a diagonal when its endpoints are not adjacent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Sequence

Chord = tuple[int, int]


class PolygonError(ValueError):
    pass


def chord(a: int, b: int) -> Chord:
    if a == b:
        raise PolygonError(f"degenerate chord ({a},{b})")
    return (a, b) if a < b else (b, a)


def is_boundary(c: Chord, m: int) -> bool:
    return (c[1] - c[0]) % m in (1, m - 1)


def is_diagonal(c: Chord, m: int) -> bool:
    return c[0] != c[1] and not is_boundary(c, m)


def crosses(x: Chord, y: Chord) -> bool:
    """True iff the open chords meet in the interior of the polygon."""
    a, b = x
    c, d = y
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


def all_diagonals(m: int) -> list[Chord]:
    return [(a, b) for a, b in combinations(range(m), 2) if not is_boundary((a, b), m)]


# symmetries of P_{2n+2}


def theta(v: int, n: int) -> int:
    return (v + n + 1) % (2 * n + 2)


def theta_chord(c: Chord, n: int) -> Chord:
    return chord(theta(c[0], n), theta(c[1], n))


def theta_orbit(c: Chord, n: int) -> frozenset[Chord]:
    return frozenset({chord(*c), theta_chord(c, n)})


def is_diameter(c: Chord, n: int) -> bool:
    return (c[1] - c[0]) == n + 1


def all_theta_orbits(n: int) -> list[frozenset[Chord]]:
    seen = {theta_orbit(c, n) for c in all_diagonals(2 * n + 2)}
    return sorted(seen, key=lambda o: sorted(o))


def rho(v: int, d: tuple[int, int], n: int) -> int:
    """Reflection of P_{2n+2} fixing the endpoints of the diameter d."""
    t, h = d
    return (2 * h - v) % (2 * n + 2)


def rho_chord(c: Chord, d: tuple[int, int], n: int) -> Chord:
    return chord(rho(c[0], d, n), rho(c[1], d, n))


def orbit_text(orb: Iterable[Chord]) -> str:
    """Render an orbit as ``[a,b]`` using its smallest member."""
    a, b = min(orb)
    return f"[{a},{b}]"


# triangulations


@dataclass(frozen=True)
class Triangulation:
    """A triangulation of P_m whose i-th diagonal carries the label i+1."""

    m: int
    diagonals: tuple[Chord, ...]

    def __post_init__(self):
        object.__setattr__(self, "diagonals", tuple(chord(*c) for c in self.diagonals))
        for c in self.diagonals:
            if not is_diagonal(c, self.m):
                raise PolygonError(f"{c} is not a diagonal of P_{self.m}")
        if len(set(self.diagonals)) != len(self.diagonals):
            raise PolygonError("repeated diagonal")
        for x, y in combinations(self.diagonals, 2):
            if crosses(x, y):
                raise PolygonError(f"diagonals {x} and {y} cross")
        if len(self.diagonals) != self.m - 3:
            raise PolygonError(f"a triangulation of P_{self.m} has {self.m - 3} diagonals")

    def __len__(self) -> int:
        return len(self.diagonals)

    @cached_property
    def _labels(self) -> dict[Chord, int]:
        return {c: i + 1 for i, c in enumerate(self.diagonals)}

    def label(self, c: Chord) -> int | None:
        """1-based label of a chord, or None for chords not in T."""
        return self._labels.get(chord(*c))

    def __contains__(self, c) -> bool:
        return chord(*c) in self._labels

    def edge(self, c: Chord) -> bool:
        c = chord(*c)
        return is_boundary(c, self.m) or c in self._labels

    @cached_property
    def triangles(self) -> tuple[tuple[int, int, int], ...]:
        """Triangles as vertex triples in counterclockwise (increasing) order."""
        out = []
        for a, b, c in combinations(range(self.m), 3):
            if self.edge((a, b)) and self.edge((b, c)) and self.edge((a, c)):
                out.append((a, b, c))
        return tuple(out)

    def triangles_of(self, c: Chord) -> list[tuple[int, int, int]]:
        c = chord(*c)
        return [t for t in self.triangles if c[0] in t and c[1] in t]

    def crossed(self, gamma: Chord) -> list[int]:
        """Labels of the diagonals of T crossed by gamma, in increasing label order."""
        return [i + 1 for i, c in enumerate(self.diagonals) if crosses(c, gamma)]

    def crossing_vector(self, gamma: Chord) -> tuple[int, ...]:
        return tuple(int(crosses(c, gamma)) for c in self.diagonals)

    def relabeled(self, order: Sequence[Chord]) -> Triangulation:
        return Triangulation(self.m, tuple(order))

    def text(self) -> str:
        return f"{self.m}; " + " ".join(f"({a},{b})" for a, b in self.diagonals)


def ccw_sides(tri: tuple[int, int, int]) -> list[Chord]:
    """Sides of a triangle in counterclockwise traversal order."""
    a, b, c = tri
    return [chord(a, b), chord(b, c), chord(c, a)]


def b_matrix(T: Triangulation) -> list[list[int]]:
    """Signed adjacency: b_ij = 1 iff tau_i, tau_j share a triangle and tau_i
    follows tau_j when the triangle is traversed counterclockwise."""
    k = len(T)
    B = [[0] * k for _ in range(k)]
    for tri in T.triangles:
        sides = ccw_sides(tri)
        for s in range(3):
            j = T.label(sides[s])
            i = T.label(sides[(s + 1) % 3])
            if i is not None and j is not None:
                B[i - 1][j - 1] += 1
                B[j - 1][i - 1] -= 1
    return B


def _triangulations(vs: tuple[int, ...]) -> list[frozenset[Chord]]:
    if len(vs) < 4:
        return [frozenset()]
    a, b = vs[0], vs[-1]
    out = []
    for k in range(1, len(vs) - 1):
        apex = vs[k]
        extra = set()
        if k > 1:
            extra.add(chord(a, apex))
        if k < len(vs) - 2:
            extra.add(chord(apex, b))
        for left in _triangulations(vs[: k + 1]):
            for right in _triangulations(vs[k:]):
                out.append(frozenset(extra) | left | right)
    return out


@lru_cache(maxsize=None)
def enumerate_triangulations(m: int) -> tuple[frozenset[Chord], ...]:
    """All triangulations of P_m as diagonal sets, in a fixed order."""
    return tuple(sorted(_triangulations(tuple(range(m))), key=sorted))


def flip(diagonals: Iterable[Chord], c: Chord, m: int) -> Chord:
    """The diagonal replacing c when c is flipped."""
    T = set(diagonals)
    c = chord(*c)
    apexes = [
        v for v in range(m)
        if v not in c and all(is_boundary(e, m) or e in T for e in (chord(v, c[0]), chord(v, c[1])))
    ]
    if len(apexes) != 2:
        raise PolygonError(f"cannot flip {c}: apexes {apexes}")
    return chord(*apexes)


# theta-invariant triangulations


@lru_cache(maxsize=None)
def enumerate_theta_triangulations(n: int) -> tuple[frozenset[Chord], ...]:
    if n < 2:
        raise PolygonError("rank n >= 2 required")
    out = []
    for T in enumerate_triangulations(2 * n + 2):
        if {theta_chord(c, n) for c in T} == set(T):
            diam = [c for c in T if is_diameter(c, n)]
            assert len(diam) == 1
            out.append(T)
    return tuple(out)


def default_diameter(T: Iterable[Chord], n: int) -> tuple[int, int]:
    """Orientation (tail, head) with head the smaller endpoint."""
    diam = [c for c in T if is_diameter(chord(*c), n)]
    if len(diam) != 1:
        raise PolygonError("a theta-invariant triangulation has exactly one diameter")
    a, b = chord(*diam[0])
    return (b, a)


STAR = "*"


@dataclass(frozen=True)
class ThetaTriangulation:
    """A theta-invariant triangulation of P_{2n+2} with an oriented diameter.

    ``labeled`` lists tau_1..tau_{2n-1}; ``tbar`` is the triangulation of
    P_{n+3} obtained by collapsing the vertices right of d, whose vertex k is
    h+k for k <= n+1 and whose vertex n+2 is the collapsed point.
    """

    n: int
    diagonals: frozenset[Chord]
    d: tuple[int, int]
    labeled: tuple[Chord, ...] = field(init=False)
    tbar: Triangulation = field(init=False)

    def __post_init__(self):
        n = self.n
        N = 2 * n + 2
        T = frozenset(chord(*c) for c in self.diagonals)
        object.__setattr__(self, "diagonals", T)
        Triangulation(N, tuple(sorted(T)))
        if {theta_chord(c, n) for c in T} != set(T):
            raise PolygonError("triangulation is not theta-invariant")
        t, h = self.d
        if chord(t, h) not in T or not is_diameter(chord(t, h), n):
            raise PolygonError(f"oriented diameter {self.d} is not the diameter of T")
        left = []
        for c in T:
            if c == chord(t, h):
                continue
            p, q = sorted(((c[0] - h) % N, (c[1] - h) % N))
            if q <= n + 1:
                left.append((q - p - 1, p, c))
        left.sort()
        if len(left) != n - 1:
            raise PolygonError("unexpected number of diagonals left of d")
        lab = [c for _, _, c in left] + [chord(t, h)]
        lab += [theta_chord(c, n) for c in reversed(lab[:-1])]
        object.__setattr__(self, "labeled", tuple(lab))
        object.__setattr__(
            self, "tbar", Triangulation(n + 3, tuple(self.project_chord(c) for c in lab[:n]))
        )

    @classmethod
    def canonical(cls, T: Iterable[Chord], n: int, d: tuple[int, int] | None = None):
        T = frozenset(chord(*c) for c in T)
        return cls(n, T, d if d is not None else default_diameter(T, n))

    @property
    def N(self) -> int:
        return 2 * self.n + 2

    @property
    def head(self) -> int:
        return self.d[1]

    @property
    def tail(self) -> int:
        return self.d[0]

    @property
    def star(self) -> int:
        return self.n + 2

    @cached_property
    def full(self) -> Triangulation:
        return Triangulation(self.N, self.labeled)

    def label(self, c: Chord) -> int | None:
        return self.full.label(c)

    def position(self, v: int) -> int:
        """Counterclockwise distance from the head of d."""
        return (v - self.head) % self.N

    def is_left(self, v: int) -> bool:
        return 0 < self.position(v) < self.n + 1

    def is_right(self, v: int) -> bool:
        return self.position(v) > self.n + 1

    def project(self, v: int) -> int:
        p = self.position(v)
        return p if p <= self.n + 1 else self.star

    def project_chord(self, c: Chord) -> Chord | None:
        """Image in P_{n+3}; None if the chord collapses to a point."""
        a, b = self.project(c[0]), self.project(c[1])
        return None if a == b else chord(a, b)

    def vertex_name(self, k: int) -> str:
        """Original name of a vertex of P_{n+3}."""
        return STAR if k == self.star else str((self.head + k) % self.N)

    def chord_name(self, c: Chord) -> str:
        return f"({self.vertex_name(c[0])},{self.vertex_name(c[1])})"

    def crosses_d(self, c: Chord) -> bool:
        return crosses(chord(*c), chord(*self.d))

    def orbit_of(self, c: Chord) -> frozenset[Chord]:
        return theta_orbit(c, self.n)

    # restriction

    def restrict(self, orb: Iterable[Chord]) -> list[Chord]:
        """Res: the genuine diagonals among the images, ordered by left endpoint."""
        out = set()
        for c in orb:
            img = self.project_chord(chord(*c))
            if img is not None and is_diagonal(img, self.n + 3):
                out.add(img)
        return sorted(out)

    def chord_crossing_same_except_d(self, gamma: Chord) -> Chord | None:
        """The diagonal of P_{n+3} crossing the same T-bar diagonals as gamma except d."""
        target = set(self.tbar.crossed(gamma)) - {self.n}
        if not target:
            return None
        found = [c for c in all_diagonals(self.n + 3)
                 if c not in self.tbar and set(self.tbar.crossed(c)) == target]
        if len(found) != 1:
            raise PolygonError(f"no unique diagonal crossing {sorted(target)}: {found}")
        return found[0]

    @cached_property
    def left_apex(self) -> int:
        """Third vertex of the T-bar triangle on the left of d."""
        h, t = 0, self.n + 1
        (tri,) = [x for x in self.tbar.triangles if h in x and t in x and self.star not in x]
        return next(v for v in tri if v not in (h, t))

    def rotated_restrict(self, orb: Iterable[Chord]) -> list[Chord]:
        """Rotated restriction, as an ordered list (gamma~1 first)."""
        orb = [chord(*c) for c in orb]
        res = self.restrict(orb)
        if len(orb) == 1:
            (g,) = res
            g2 = self.chord_crossing_same_except_d(g)
            return [g] if g2 is None else [g, g2]
        if len(res) == 1:
            return res
        # sorted by left endpoint, so g2 is g1 with its left end moved ccw;
        # when both left ends lie at or past the apex the roles swap
        g1, g2 = res
        if self.left_apex <= g1[0]:
            g1, g2 = g2, g1
        g2t = self.chord_crossing_same_except_d(g2)
        return [g1] if g2t is None else [g1, g2t]

    # laminations

    def lamination_vector(self, x: Chord, y: Chord) -> tuple[int, ...]:
        return lamination_vector(self.tbar, x, y)

    # F_d

    def f_d(self, c: Chord) -> Chord:
        return f_d(self.d, c, self.n)

    @cached_property
    def rho_triangulation(self) -> Triangulation:
        """T' = F_d(T), labeled so that tau'_i = F_d(tau_i)."""
        return Triangulation(self.N, tuple(self.f_d(c) for c in self.labeled))


def lamination_crosses(tau: Chord, c: Chord) -> bool:
    """Whether the elementary lamination of tau crosses the chord c.

    The lamination's ends sit just clockwise of tau's endpoints, so on a
    circle of doubled positions tau's ends are 2a-1, 2b-1 and c's are 2c, 2d.
    """
    a, b = 2 * tau[0] - 1, 2 * tau[1] - 1
    p, q = 2 * c[0], 2 * c[1]
    lo, hi = min(a, b), max(a, b)
    return (lo < p < hi) != (lo < q < hi)


def lamination_vector(T: Triangulation, x: Chord, y: Chord) -> tuple[int, ...]:
    """Bit i is 1 iff the lamination of tau_i crosses both x and y.

    x and y may be boundary segments; a lamination ending on a boundary
    segment counts as crossing it.
    """
    x, y = chord(*x), chord(*y)
    return tuple(int(lamination_crosses(t, x) and lamination_crosses(t, y)) for t in T.diagonals)


def f_d(d: tuple[int, int], c: Chord, n: int) -> Chord:
    """Cut along d = (tail, head), flip the right half, glue back.

    Chords in the closed left half are fixed.  The right half, including the
    endpoints of d, is reflected by v -> h + t - v.  A chord crossing d keeps
    its left endpoint and reflects its right one.
    """
    N = 2 * n + 2
    t, h = d
    c = chord(*c)

    def pos(v):
        return (v - h) % N

    def phi(v):
        return (h + t - v) % N

    left = [pos(v) <= n + 1 for v in c]
    right = [pos(v) >= n + 1 or pos(v) == 0 for v in c]
    if all(left):
        return c
    if all(right):
        return chord(phi(c[0]), phi(c[1]))
    a, r = (c[0], c[1]) if left[0] else (c[1], c[0])
    return chord(a, phi(r))


def parse_triangulation(text: str) -> tuple[int, list[Chord], tuple[int, int] | None]:
    """Parse ``m; (a,b) (c,d) ...`` with an optional ``; d=(t,h)`` suffix."""
    import re

    body = " ".join(line.split("#", 1)[0] for line in text.splitlines())
    parts = [p.strip() for p in body.strip().split(";")]
    if len(parts) < 2:
        raise PolygonError("expected 'size; (a,b) ...'")
    try:
        m = int(parts[0])
    except ValueError as exc:
        raise PolygonError(f"bad polygon size {parts[0]!r}") from exc
    pairs = [chord(int(a), int(b)) for a, b in re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", parts[1])]
    d = None
    for extra in parts[2:]:
        mm = re.fullmatch(r"d\s*=\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)", extra)
        if not mm:
            raise PolygonError(f"unrecognized field {extra!r}")
        d = (int(mm.group(1)), int(mm.group(2)))
    for a, b in pairs:
        if not (0 <= a < m and 0 <= b < m):
            raise PolygonError(f"vertex out of range in ({a},{b})")
    return m, pairs, d
