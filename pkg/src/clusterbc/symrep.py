"""Quiver representations attached to triangulations.

String modules L_gamma over Q(T), the twisted dual on symmetric quivers, the
orthogonal/symplectic indecomposables attached to theta-orbits, restriction
to the quiver of T-bar, module F-polynomials, the CC map and the data of the
categorical reading of the type B formula.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from graphlib import CycleError, TopologicalSorter
from itertools import product
from typing import Iterable, Sequence

from .laurent import LaurentPoly
from .polygon import (
    Chord,
    ThetaTriangulation,
    Triangulation,
    b_matrix,
    chord,
    crosses,
    is_boundary,
    lamination_vector,
    rho_chord,
)

Arrow = tuple[int, int]  # (source, target), 1-based vertices


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class BoundQuiver:
    """Quiver on vertices 1..size with length-two zero relations.

    ``sigma`` (if set) is the vertex involution of a symmetric quiver; an
    arrow i -> j is sent to sigma(j) -> sigma(i).
    """

    size: int
    arrows: tuple[Arrow, ...]
    relations: frozenset[tuple[int, int, int]] = frozenset()
    sigma: tuple[int, ...] | None = None
    triangulation: Triangulation | None = field(default=None, compare=False)

    def __post_init__(self):
        arrows = tuple(sorted(set(self.arrows)))
        object.__setattr__(self, "arrows", arrows)
        for s, t in arrows:
            if not (1 <= s <= self.size and 1 <= t <= self.size) or s == t:
                raise RepresentationError(f"bad arrow {s}->{t}")
        if self.sigma is not None:
            sig = self.sigma
            if sorted(sig) != list(range(1, self.size + 1)):
                raise RepresentationError("sigma is not a permutation")
            if any(sig[sig[i] - 1] != i + 1 for i in range(self.size)):
                raise RepresentationError("sigma is not an involution")
            if {(sig[t - 1], sig[s - 1]) for s, t in arrows} != set(arrows):
                raise RepresentationError("sigma does not reverse the arrows")
            rel = {(sig[k - 1], sig[j - 1], sig[i - 1]) for i, j, k in self.relations}
            if rel != set(self.relations):
                raise RepresentationError("sigma does not preserve the relations")

    @property
    def symmetric(self) -> bool:
        return self.sigma is not None

    @cached_property
    def acyclic(self) -> bool:
        ts = TopologicalSorter({v: set() for v in range(1, self.size + 1)})
        for s, t in self.arrows:
            ts.add(t, s)
        try:
            ts.prepare()
        except CycleError:
            return False
        return True

    def exchange_matrix(self) -> list[list[int]]:
        """b_ij = #(j -> i) - #(i -> j)."""
        B = [[0] * self.size for _ in range(self.size)]
        for s, t in self.arrows:
            B[t - 1][s - 1] += 1
            B[s - 1][t - 1] -= 1
        return B

    def full_subquiver(self, k: int) -> BoundQuiver:
        """The full subquiver on vertices 1..k."""
        return BoundQuiver(
            k,
            tuple((s, t) for s, t in self.arrows if s <= k and t <= k),
            frozenset(r for r in self.relations if max(r) <= k),
        )

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "arrows": [{"from": s, "to": t} for s, t in self.arrows],
            "relations": [list(r) for r in sorted(self.relations)],
            "sigma": list(self.sigma) if self.sigma else None,
            "acyclic": self.acyclic,
        }


def quiver_from_triangulation(T: Triangulation, sigma: Sequence[int] | None = None) -> BoundQuiver:
    """Q(T): an arrow j -> i when tau_i follows tau_j counterclockwise in a triangle."""
    B = b_matrix(T)
    k = len(T)
    arrows = tuple((j + 1, i + 1) for i in range(k) for j in range(k) if B[i][j] > 0)
    out = {}
    for s, t in arrows:
        out.setdefault(s, []).append(t)
    arrow_set = set(arrows)
    relations = frozenset(
        (i, j, l) for i, j in arrows for l in out.get(j, ()) if (l, i) in arrow_set
    )
    return BoundQuiver(k, arrows, relations, tuple(sigma) if sigma else None, T)


def rho_sigma(T: Triangulation, d: tuple[int, int], n: int) -> tuple[int, ...] | None:
    """Label permutation induced by the reflection along d, if T is invariant."""
    out = []
    for c in T.diagonals:
        lab = T.label(rho_chord(c, d, n))
        if lab is None:
            return None
        out.append(lab)
    return tuple(out)


def symmetric_quiver(T: ThetaTriangulation) -> BoundQuiver:
    """Q(T') for T' = F_d(T), with the involution i <-> 2n - i."""
    Tp = T.rho_triangulation
    sig = rho_sigma(Tp, T.d, T.n)
    if sig is None:
        raise RepresentationError("F_d(T) is not rho-invariant")
    return quiver_from_triangulation(Tp, sig)


# representations


@dataclass(frozen=True)
class QuiverRep:
    """A representation with one scalar per arrow.

    Only thin representations (every dimension 0 or 1) are stored this way;
    direct sums are kept as lists of summands by the callers.
    """

    quiver: BoundQuiver = field(compare=False)
    dims: tuple[int, ...]
    maps: tuple[tuple[Arrow, int], ...] = ()

    def __post_init__(self):
        Q = self.quiver
        if len(self.dims) != Q.size:
            raise RepresentationError("dimension vector has the wrong length")
        if any(x not in (0, 1) for x in self.dims):
            raise RepresentationError("only thin representations are supported")
        maps = dict(self.maps)
        for a in maps:
            if a not in Q.arrows:
                raise RepresentationError(f"{a} is not an arrow")
        full = tuple((a, maps.get(a, 0) if self.dims[a[0] - 1] and self.dims[a[1] - 1] else 0)
                     for a in Q.arrows)
        object.__setattr__(self, "maps", full)
        for i, j, k in Q.relations:
            if self.map((i, j)) * self.map((j, k)):
                raise RepresentationError(f"relation {i}->{j}->{k} does not vanish")

    def map(self, a: Arrow) -> int:
        return dict(self.maps).get(a, 0)

    @property
    def support(self) -> list[int]:
        return [i + 1 for i, x in enumerate(self.dims) if x]

    def is_zero(self) -> bool:
        return not any(self.dims)

    def successors(self, i: int) -> list[int]:
        return [t for (s, t), f in self.maps if s == i and f]

    def truncate(self, k: int, quiver: BoundQuiver | None = None) -> QuiverRep:
        """Keep vertices 1..k (the restriction Res)."""
        Q = quiver or self.quiver.full_subquiver(k)
        maps = tuple((a, f) for a, f in self.maps if a in Q.arrows)
        return QuiverRep(Q, self.dims[:k], maps)

    def shorthand(self) -> str:
        return shorthand(self)

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims),
            "arrows": [{"from": s, "to": t, "map": f} for (s, t), f in self.maps],
        }


def rep_from_diagonal(Q: BoundQuiver, gamma: Chord) -> QuiverRep:
    """The string module L_gamma of a diagonal not in T."""
    T = Q.triangulation
    if T is None:
        raise RepresentationError("quiver carries no triangulation")
    gamma = chord(*gamma)
    if is_boundary(gamma, T.m) or gamma in T:
        raise RepresentationError(f"{gamma} is a side or a diagonal of T")
    dims = T.crossing_vector(gamma)
    return QuiverRep(Q, dims, tuple((a, 1) for a in Q.arrows))


def string_or_zero(Q: BoundQuiver, gamma: Chord) -> QuiverRep:
    """L_gamma, or the zero module when gamma is a side or lies in T."""
    T = Q.triangulation
    gamma = chord(*gamma)
    if gamma[0] == gamma[1] or is_boundary(gamma, T.m) or gamma in T:
        return QuiverRep(Q, (0,) * Q.size)
    return rep_from_diagonal(Q, gamma)


def nabla(Q: BoundQuiver, M: QuiverRep) -> QuiverRep:
    """Twisted dual: dims permuted by sigma, maps transported and sign-normalized."""
    if Q.sigma is None:
        raise RepresentationError("nabla needs a symmetric quiver")
    sig = Q.sigma
    dims = tuple(M.dims[sig[i] - 1] for i in range(Q.size))
    maps = tuple(((s, t), abs(M.map((sig[t - 1], sig[s - 1])))) for s, t in Q.arrows)
    return QuiverRep(Q, dims, maps)


def isomorphic(M: QuiverRep, N: QuiverRep) -> bool:
    """Thin modules with every support arrow nonzero: iso iff same dims and maps pattern."""
    return M.dims == N.dims and [bool(f) for _, f in M.maps] == [bool(f) for _, f in N.maps]


def shorthand(M: QuiverRep) -> str:
    """Rows of the support, top to bottom, each arrow going one row down."""
    if M.is_zero():
        return "0"
    level: dict[int, int] = {}
    edges = [a for a, f in M.maps if f]
    for start in M.support:
        if start in level:
            continue
        level[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for s, t in edges:
                if s == v and t not in level:
                    level[t] = level[v] + 1
                    stack.append(t)
                elif t == v and s not in level:
                    level[s] = level[v] - 1
                    stack.append(s)
    lo = min(level.values())
    rows: dict[int, list[int]] = {}
    for v, l in level.items():
        rows.setdefault(l - lo, []).append(v)
    sep = "," if M.quiver.size >= 10 else ""
    return "/".join(sep.join(str(v) for v in sorted(rows[r])) for r in sorted(rows))


def sum_shorthand(summands: Iterable[QuiverRep]) -> str:
    parts = sorted((M for M in summands if not M.is_zero()), key=lambda M: (-sum(M.dims), M.dims))
    return " ⊕ ".join(shorthand(M) for M in parts) or "0"


# symmetric indecomposables


@dataclass(frozen=True)
class SymmetricIndec:
    """kind I: one nabla-invariant L; kind S: L + nabla L; kind R: L + L."""

    kind: str
    flavor: str
    diagonals: tuple[Chord, ...]
    summands: tuple[QuiverRep, ...]

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(map(sum, zip(*(M.dims for M in self.summands))))

    def shorthand(self) -> str:
        return " ⊕ ".join(shorthand(M) for M in self.summands)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "flavor": self.flavor,
            "diagonals": [list(c) for c in self.diagonals],
            "dims": list(self.dims),
            "shorthand": self.shorthand(),
            "summands": [M.to_json() for M in self.summands],
        }


def orbit_to_symmetric(Q: BoundQuiver, orb: Iterable[Chord], flavor: str) -> SymmetricIndec:
    """Symmetric indecomposable of an F_d-image of a theta-orbit (one or two diagonals)."""
    if flavor not in ("orthogonal", "symplectic"):
        raise RepresentationError(f"unknown flavor {flavor!r}")
    diags = tuple(sorted({chord(*c) for c in orb}))
    reps = tuple(rep_from_diagonal(Q, c) for c in diags)
    if len(reps) == 1:
        (L,) = reps
        if not isomorphic(nabla(Q, L), L):
            raise RepresentationError("single diagonal is not rho-invariant")
        if flavor == "orthogonal":
            return SymmetricIndec("I", flavor, diags, (L,))
        return SymmetricIndec("R", flavor, diags, (L, L))
    if len(reps) != 2:
        raise RepresentationError("expected one or two diagonals")
    L1, L2 = reps
    if not isomorphic(nabla(Q, L1), L2) or isomorphic(L1, L2):
        raise RepresentationError("the two diagonals are not swapped by rho")
    return SymmetricIndec("S", flavor, diags, (L1, L2))


def symmetric_of_orbit(T: ThetaTriangulation, orb: Iterable[Chord], flavor: str,
                       Q: BoundQuiver | None = None) -> SymmetricIndec:
    """Correspondence theta-orbit -> symmetric Q(T')-indecomposable."""
    Q = Q or symmetric_quiver(T)
    return orbit_to_symmetric(Q, {T.f_d(c) for c in orb}, flavor)


# subrepresentations and F-polynomials


def subrep_dims(M: QuiverRep) -> list[tuple[int, ...]]:
    """Dimension vectors e <= dim M of subrepresentations, by direct test."""
    supp = M.support
    out = []
    for bits in product((0, 1), repeat=len(supp)):
        e = [0] * len(M.dims)
        for v, b in zip(supp, bits):
            e[v - 1] = b
        if all(not f or not e[s - 1] or e[t - 1] for (s, t), f in M.maps):
            out.append(tuple(e))
    return sorted(out)


def closed_subsets(M: QuiverRep) -> list[tuple[int, ...]]:
    """Successor-closed subsets of the support, generated as closures."""
    supp = M.support
    seen = set()
    for bits in product((0, 1), repeat=len(supp)):
        stack = [v for v, b in zip(supp, bits) if b]
        closure = set(stack)
        while stack:
            for w in M.successors(stack.pop()):
                if w not in closure:
                    closure.add(w)
                    stack.append(w)
        seen.add(tuple(int(i + 1 in closure) for i in range(len(M.dims))))
    return sorted(seen)


def f_polynomial_of_rep(M: QuiverRep | Iterable[QuiverRep], rank: int | None = None) -> LaurentPoly:
    """F_M = sum of y^e over subrepresentation dimension vectors; products over summands."""
    summands = [M] if isinstance(M, QuiverRep) else list(M)
    if not summands:
        if rank is None:
            raise RepresentationError("rank needed for an empty sum")
        return LaurentPoly.one(rank)
    n = len(summands[0].dims)
    F = LaurentPoly.one(n)
    for S in summands:
        F = F * LaurentPoly(n, {(0,) * n + e: 1 for e in subrep_dims(S)})
    return F


def g_vector_of_rep(M: QuiverRep | Iterable[QuiverRep]) -> tuple[int, ...]:
    """(g_M)_i = -<S_i, M> for the Euler form <a,b> = sum a_i b_i - sum_arrows a_s b_t."""
    summands = [M] if isinstance(M, QuiverRep) else list(M)
    Q = summands[0].quiver
    dims = [sum(S.dims[i] for S in summands) for i in range(Q.size)]
    g = [-x for x in dims]
    for s, t in Q.arrows:
        g[s - 1] += dims[t - 1]
    return tuple(g)


def cc_map(M: QuiverRep | Iterable[QuiverRep], top: Sequence[Sequence[int]] | None = None) -> LaurentPoly:
    """CC(M) = sum_e y^e x^(B e + g_M) over an acyclic quiver."""
    summands = [M] if isinstance(M, QuiverRep) else list(M)
    Q = summands[0].quiver
    if not Q.acyclic:
        raise RepresentationError("the CC map needs an acyclic quiver")
    B = top if top is not None else Q.exchange_matrix()
    F = f_polynomial_of_rep(summands)
    g = g_vector_of_rep(summands)
    n = Q.size
    y_hat = [LaurentPoly.monomial(n, [B[i][j] for i in range(n)], [int(k == j) for k in range(n)])
             for j in range(n)]
    return F.substitute(None, y_hat) * LaurentPoly.monomial(n, list(g))


# restriction


def restriction_rep(T: ThetaTriangulation, M: SymmetricIndec, mode: str = "B",
                    Qbar: BoundQuiver | None = None) -> list[QuiverRep]:
    """Res(M) (mode B) or rotated Res(M) (mode C) as nonzero string summands over Q(T-bar)."""
    n = T.n
    Qbar = Qbar or quiver_from_triangulation(T.tbar)
    mode = mode.upper()
    if mode == "B":
        parts = [S.truncate(n, Qbar) for S in M.summands]
        return [S for S in parts if not S.is_zero()]
    if mode == "C":
        orb = {T.f_d(c) for c in M.diagonals}
        return [rep_from_diagonal(Qbar, g) for g in T.rotated_restrict(orb)]
    raise RepresentationError(f"unknown mode {mode!r}")


# categorical reading of the type B formula


@dataclass(frozen=True)
class CatInterprData:
    L: QuiverRep
    nabla_L: QuiverRep
    G1: QuiverRep
    G2: QuiverRep
    dim_nabla_L_L: tuple[int, ...]
    correction: tuple[QuiverRep, QuiverRep]
    res: tuple[QuiverRep, ...]
    F: LaurentPoly
    g: tuple[int, ...]

    @property
    def almost_split(self) -> bool:
        return all(S.is_zero() for S in self.correction)

    def ses_text(self) -> str:
        return f"0 -> {shorthand(self.L)} -> {sum_shorthand((self.G1, self.G2))} -> {shorthand(self.nabla_L)} -> 0"

    def to_json(self) -> dict:
        return {
            "L": shorthand(self.L),
            "nabla_L": shorthand(self.nabla_L),
            "middle": sum_shorthand((self.G1, self.G2)),
            "dim_nabla_L_L": list(self.dim_nabla_L_L),
            "correction": sum_shorthand(self.correction),
            "almost_split": self.almost_split,
            "ses": self.ses_text(),
            "F": str(self.F),
            "g": list(self.g),
        }


def _D(v: Sequence[int]) -> tuple[int, ...]:
    return tuple(v[:-1]) + (2 * v[-1],)


def cat_interpr_data(T: ThetaTriangulation, M: SymmetricIndec, Q: BoundQuiver | None = None) -> CatInterprData:
    """SES data and right-hand sides for a kind-S orthogonal M from a d-crossing orbit."""
    n = T.n
    Q = Q or symmetric_quiver(T)
    if not Q.acyclic:
        raise RepresentationError("Q(T') has oriented cycles")
    if M.kind != "S" or M.flavor != "orthogonal":
        raise RepresentationError("need an orthogonal module of kind S")
    d = chord(*T.d)
    if not all(crosses(c, d) for c in M.diagonals):
        raise RepresentationError("the orbit does not cross d")
    Tp = Q.triangulation
    # left endpoints, the one nearer the head first
    lefts = sorted((v for c in M.diagonals for v in c if T.is_left(v)), key=T.position)
    a, bbar = lefts
    rho = lambda v: (2 * T.head - v) % T.N
    L = rep_from_diagonal(Q, (a, rho(bbar)))
    nL = rep_from_diagonal(Q, (bbar, rho(a)))
    G1 = rep_from_diagonal(Q, (a, rho(a)))
    G2 = rep_from_diagonal(Q, (bbar, rho(bbar)))
    lam = lamination_vector(Tp, chord(a, rho(a)), chord(bbar, rho(bbar)))
    corr = (string_or_zero(Q, (a, bbar)), string_or_zero(Q, (rho(a), rho(bbar))))
    Qbar = quiver_from_triangulation(T.tbar)
    res = tuple(restriction_rep(T, M, "B", Qbar))
    res_corr = [S.truncate(n, Qbar) for S in corr]
    F = f_polynomial_of_rep(res) - LaurentPoly.monomial(n, None, lam[:n]) * f_polynomial_of_rep(res_corr)
    e_n = tuple(int(i == n - 1) for i in range(n))
    g = _D(tuple(x + y for x, y in zip(g_vector_of_rep(res), e_n)))
    return CatInterprData(L, nL, G1, G2, lam, corr, res, F, g)


def theorem_rhs(T: ThetaTriangulation, M: SymmetricIndec, Q: BoundQuiver | None = None) -> tuple[LaurentPoly, tuple[int, ...]]:
    """Right-hand sides (F, g) of the categorical type B statement for M."""
    n = T.n
    Q = Q or symmetric_quiver(T)
    Qbar = quiver_from_triangulation(T.tbar)
    res = restriction_rep(T, M, "B", Qbar)
    if len(res) == 1:
        (R,) = res
        g = _D(g_vector_of_rep(R))
        if R.dims[n - 1]:
            g = g[:-1] + (g[-1] + 1,)
        return f_polynomial_of_rep(R), g
    data = cat_interpr_data(T, M, Q)
    return data.F, data.g
