"""Closed expansion formulas for type B and type C cluster variables."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .laurent import LaurentPoly
from .polygon import (
    b_matrix,
    Chord,
    ThetaTriangulation,
    all_theta_orbits,
    chord,
    crosses,
    lamination_vector,
    theta,
    theta_orbit,
)
from .seeds import exchange_matrix
from .snake import expansion


class ExpansionError(RuntimeError):
    pass


@dataclass(frozen=True)
class ExpansionData:
    F: LaurentPoly
    g: tuple[int, ...]
    x: LaurentPoly

    def to_json(self) -> dict:
        return {"F": self.F.to_json(), "g": list(self.g), "x": self.x.to_json(),
                "F_text": str(self.F), "x_text": str(self.x)}


def assemble_x(F: LaurentPoly, g: Sequence[int], top: Sequence[Sequence[int]]) -> LaurentPoly:
    """x = F(y-hat) u^g with y-hat_j = y_j prod_i u_i^{b_ij}."""
    n = F.rank
    if not F.is_y_only():
        raise ExpansionError("F must not involve u")
    y_hat = [
        LaurentPoly.monomial(n, [top[i][j] for i in range(n)], [int(k == j) for k in range(n)])
        for j in range(n)
    ]
    return F.substitute(None, y_hat) * LaurentPoly.monomial(n, list(g))


def _e(n: int, i: int) -> tuple[int, ...]:
    return tuple(int(k == i - 1) for k in range(n))


def _vadd(*vs: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x) for x in zip(*vs))


def _ymono(n: int, exps: Sequence[int]) -> LaurentPoly:
    return LaurentPoly.monomial(n, None, list(exps))


class _Context:
    """Per-triangulation cache of restricted-polygon expansions."""

    def __init__(self, T: ThetaTriangulation):
        self.T = T
        self.n = T.n
        self.tbar = T.tbar
        self._cache: dict[Chord, tuple[LaurentPoly, tuple[int, ...]]] = {}

    def Fg(self, c: Chord) -> tuple[LaurentPoly, tuple[int, ...]]:
        c = chord(*c)
        if c not in self._cache:
            E = expansion(self.tbar, c)
            self._cache[c] = (E.F, E.g)
        return self._cache[c]

    def F(self, c: Chord) -> LaurentPoly:
        return self.Fg(c)[0]

    def g(self, c: Chord) -> tuple[int, ...]:
        return self.Fg(c)[1]

    def pchord(self, a: int, b: int) -> Chord | None:
        """Chord of P_{n+3} through the images of two vertices; None for a point."""
        pa, pb = self.T.project(a), self.T.project(b)
        return None if pa == pb else chord(pa, pb)

    def Fc(self, c: Chord | None) -> LaurentPoly:
        return LaurentPoly.one(self.n) if c is None else self.F(c)

    def lam(self, x: Chord | None, y: Chord | None) -> tuple[int, ...]:
        if x is None or y is None:
            return (0,) * self.n
        return lamination_vector(self.tbar, x, y)

    def crosses_d(self, c: Chord) -> bool:
        return crosses(chord(*c), self.tbar.diagonals[self.n - 1])


def _D(v: Sequence[int]) -> tuple[int, ...]:
    return tuple(v[:-1]) + (2 * v[-1],)


def _left_member(T: ThetaTriangulation, orb: Iterable[Chord], a_left: int) -> tuple[int, int]:
    """(a, b) with (a, b) in the orbit and a the given left vertex."""
    for c in orb:
        if a_left in c:
            return a_left, c[0] if c[1] == a_left else c[1]
    raise ExpansionError("vertex not on the orbit")


def _normalize_orbit(orb: Iterable[Chord], n: int) -> frozenset[Chord]:
    orb = [chord(*c) for c in orb]
    full = theta_orbit(orb[0], n)
    if not set(orb) <= full:
        raise ExpansionError(f"{orb} is not a theta-orbit")
    return full


def expand_type_b(T: ThetaTriangulation, orb: Iterable[Chord], ctx: _Context | None = None) -> ExpansionData:
    n = T.n
    orb = _normalize_orbit(orb, n)
    ctx = ctx or _Context(T)
    top = exchange_matrix(T, "B")
    res = T.restrict(orb)
    if len(res) == 1:
        (gamma,) = res
        F, g = ctx.Fg(gamma)
        lab = T.tbar.label(gamma)
        if lab is not None:
            g = _e(n, lab)
        elif ctx.crosses_d(gamma):
            g = _vadd(_D(g), _e(n, n))
        else:
            g = _D(g)
        return ExpansionData(F, g, assemble_x(F, g, top))
    if len(res) != 2:
        raise ExpansionError(f"unexpected restriction {res}")
    g1, g2 = res
    a, bbar = g1[0], g2[0]  # left endpoints in P_{n+3}
    lam = lamination_vector(T.tbar, g1, g2)
    corr = ctx.F(chord(a, bbar)) if a != bbar else LaurentPoly.one(n)
    F = ctx.F(g1) * ctx.F(g2) - _ymono(n, lam) * corr
    g = _D(_vadd(ctx.g(g1), ctx.g(g2), _e(n, n)))
    return ExpansionData(F, g, assemble_x(F, g, top))


def _mates(T: ThetaTriangulation) -> tuple[int | None, int | None]:
    """Labels of the sides clockwise and counterclockwise from d in its T-bar triangle."""
    B = b_matrix(T.tbar)
    n = T.n
    out = []
    for sign in (-1, 1):
        found = [i + 1 for i in range(n - 1) if B[i][n - 1] == sign]
        if len(found) > 1:
            raise ExpansionError("d has two neighbours on one side")
        out.append(found[0] if found else None)
    return out[0], out[1]


def _clockwise_mate(T: ThetaTriangulation) -> int | None:
    """Label i < n with b_in(B(T-bar)) = -1, if any."""
    return _mates(T)[0]


def rotated_restriction_vector(v: Sequence[int]) -> tuple[int, ...]:
    """The vector with its last coordinate halved (must be even)."""
    v = list(v)
    if v[-1] % 2:
        raise ExpansionError(f"coordinate n of {v} is odd")
    return tuple(v[:-1]) + (v[-1] // 2,)


def _companion(T: ThetaTriangulation, target: Chord, exclude: frozenset[Chord]) -> frozenset[Chord]:
    found = [o for o in all_theta_orbits(T.n) if o != exclude and T.rotated_restrict(o) == [target]]
    if len(found) != 1:
        raise ExpansionError(f"companion orbit for {T.chord_name(target)} not unique: {found}")
    return found[0]


def expand_type_c(
    T: ThetaTriangulation,
    orb: Iterable[Chord],
    ctx: _Context | None = None,
    literal: bool = False,
) -> ExpansionData:
    """Type C closed formula.

    With ``literal=True`` the g-vector of a two-term rotated restriction always
    gets the single +e_i shift for the clockwise neighbour of d.  The default
    applies the shift the mutation oracle demands: none when gamma~2 ends at
    the tail of d, and e_cw - e_ccw when it ends at the head.  The two agree
    unless both other sides of d's triangle in T-bar are diagonals.
    """
    n = T.n
    orb = _normalize_orbit(orb, n)
    ctx = ctx or _Context(T)
    top = exchange_matrix(T, "C")
    rres = T.rotated_restrict(orb)
    mate, ccw_mate = _mates(T)
    if len(rres) == 1:
        (gamma,) = rres
        F, g = ctx.Fg(gamma)
        if mate is not None and ctx.crosses_d(gamma):
            g = _vadd(g, _e(n, mate))
        return ExpansionData(F, g, assemble_x(F, g, top))
    gt1, gt2 = rres
    g = _vadd(ctx.g(gt1), ctx.g(gt2))
    if literal:
        if mate is not None:
            g = _vadd(g, _e(n, mate))
    elif 0 in gt2:
        if mate is not None:
            g = _vadd(g, _e(n, mate))
        if ccw_mate is not None:
            g = tuple(x - y for x, y in zip(g, _e(n, ccw_mate)))
    elif n + 1 not in gt2:
        raise ExpansionError(f"{T.chord_name(gt2)} does not end on d")
    star = T.star
    star_v = (T.head + n + 2) % T.N  # a vertex right of d
    if len(orb) == 1:
        # diameter [a, a-bar]
        (dia,) = orb
        a = dia[0] if T.is_left(dia[0]) else dia[1]
        o_c = _companion(T, gt1, orb)
        o_b = _companion(T, gt2, orb)
        _, cbar = _left_member(T, o_c, a)
        _, bbar = _left_member(T, o_b, a)
        b, c = theta(bbar, n), theta(cbar, n)
        pa = T.project(a)
        v = _vadd(
            ctx.lam((pa, star), ctx.pchord(c, bbar)),
            ctx.lam(ctx.pchord(a, bbar), ctx.pchord(b, star_v)),
        )
        corr = ctx.Fc(ctx.pchord(a, b)) * ctx.Fc(ctx.pchord(a, c))
    else:
        # pair crossing d; (a, b) is the member whose image is gamma~1
        a = gt1[0]
        member = next(m for m in orb if ctx.T.project(m[0]) == a or ctx.T.project(m[1]) == a)
        a_v = member[0] if T.project(member[0]) == a else member[1]
        b_v = member[1] if a_v == member[0] else member[0]
        bbar = theta(b_v, n)
        o_d = _companion(T, gt1, orb)
        o_c = _companion(T, gt2, orb)
        _, d_v = _left_member(T, o_d, a_v)
        _, c_v = _left_member(T, o_c, b_v)
        dbar, cbar = theta(d_v, n), theta(c_v, n)
        v = _vadd(
            ctx.lam(ctx.pchord(bbar, star_v), ctx.pchord(dbar, cbar)),
            ctx.lam(ctx.pchord(a_v, cbar), ctx.pchord(c_v, star_v)),
        )
        corr = ctx.Fc(ctx.pchord(a_v, c_v)) * ctx.Fc(ctx.pchord(bbar, dbar))
    F = ctx.F(gt1) * ctx.F(gt2) - _ymono(n, rotated_restriction_vector(v)) * corr
    return ExpansionData(F, g, assemble_x(F, g, top))


def expand(T: ThetaTriangulation, orb: Iterable[Chord], mode: str) -> ExpansionData:
    mode = mode.upper()
    if mode == "B":
        return expand_type_b(T, orb)
    if mode == "C":
        return expand_type_c(T, orb)
    raise ValueError(f"unknown type {mode!r}")


def expand_all(T: ThetaTriangulation, mode: str) -> dict[frozenset[Chord], ExpansionData]:
    ctx = _Context(T)
    fn = expand_type_b if mode.upper() == "B" else expand_type_c
    return {o: fn(T, o, ctx) for o in all_theta_orbits(T.n)}
