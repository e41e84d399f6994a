"""Seed mutation with principal coefficients and the exchange-graph oracle."""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Hashable, Sequence

from .laurent import Exp, LaurentPoly
from .polygon import (
    Chord,
    PolygonError,
    ThetaTriangulation,
    Triangulation,
    b_matrix,
    chord,
    flip,
    is_diameter,
    theta_chord,
)

Matrix = tuple[tuple[int, ...], ...]


class MutationError(RuntimeError):
    """Raised when an internal consistency check fails (a model bug)."""


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> Matrix:
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0])))
        for i in range(len(A))
    )


def symmetrizer(n: int) -> Matrix:
    """D = diag(1, ..., 1, 2)."""
    return tuple(tuple((2 if i == n - 1 else 1) * int(i == j) for j in range(n)) for i in range(n))


def diag_with_two_at(n: int, k: int) -> Matrix:
    return tuple(tuple((2 if i == k else 1) * int(i == j) for j in range(n)) for i in range(n))


def is_skew_symmetric(M: Sequence[Sequence[int]]) -> bool:
    return all(M[i][j] == -M[j][i] for i in range(len(M)) for j in range(len(M)))


@dataclass(frozen=True)
class Seed:
    """Cluster variables with an extended exchange matrix (top B, bottom C)."""

    variables: tuple[LaurentPoly, ...]
    top: Matrix
    bottom: Matrix
    labels: tuple[Hashable, ...] | None = None

    @property
    def n(self) -> int:
        return len(self.variables)

    def column_sign(self, k: int) -> int:
        col = [self.bottom[i][k] for i in range(self.n)]
        if all(c >= 0 for c in col):
            return 1
        if all(c <= 0 for c in col):
            return -1
        raise MutationError(f"c-vector {col} is not sign-coherent")


def b_matrix_from_triangulation(T: Triangulation) -> Matrix:
    return as_matrix(b_matrix(T))


def exchange_matrix(T: ThetaTriangulation, mode: str) -> Matrix:
    """B(T-bar), D.B(T-bar) or B(T-bar).D for modes A, B, C."""
    B = b_matrix_from_triangulation(T.tbar)
    D = symmetrizer(T.n)
    mode = mode.upper()
    if mode == "A":
        return B
    if mode == "B":
        return mat_mul(D, B)
    if mode == "C":
        return mat_mul(B, D)
    raise ValueError(f"unknown mode {mode!r}")


def initial_seed(T: ThetaTriangulation, mode: str) -> Seed:
    n = T.n
    variables = tuple(LaurentPoly.u(n, i + 1) for i in range(n))
    labels = tuple(T.orbit_of(c) for c in T.labeled[:n])
    return Seed(variables, exchange_matrix(T, mode), identity(n), labels)


def initial_seed_type_a(T: Triangulation) -> Seed:
    k = len(T)
    variables = tuple(LaurentPoly.u(k, i + 1) for i in range(k))
    return Seed(variables, b_matrix_from_triangulation(T), identity(k), T.diagonals)


def _monomial(n: int, u: Sequence[int], y: Sequence[int]) -> LaurentPoly:
    return LaurentPoly._raw(n, {tuple(u) + tuple(y): 1})


def exact_divide(num: LaurentPoly, den: LaurentPoly) -> LaurentPoly:
    """Exact quotient num/den in the Laurent ring, or MutationError.

    Uses a group order on exponent vectors, under which the leading term of a
    product is the product of leading terms, so leading terms can be peeled.
    """
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    n = num.rank
    rem = dict(num._terms)
    dterms = list(den._terms.items())
    lead_d, lc_d = max(dterms)
    quotient: dict[Exp, int] = {}
    span = lambda p: max(sum(abs(e) for e in k) for k in p) if p else 0  # noqa: E731
    budget = len(num) * (len(den) + 1) + 16 + 4 * span(num._terms)
    while rem:
        budget -= 1
        if budget < 0:
            raise MutationError("exact division did not terminate")
        lead_r = max(rem)
        c, r = divmod(rem[lead_r], lc_d)
        if r:
            raise MutationError("exact division failed: coefficient not divisible")
        q = tuple(a - b for a, b in zip(lead_r, lead_d))
        if any(e < 0 for e in q[n:]):
            raise MutationError("exact division failed: negative y-exponent")
        quotient[q] = quotient.get(q, 0) + c
        for k, v in dterms:
            key = tuple(a + b for a, b in zip(q, k))
            s = rem.get(key, 0) - c * v
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return LaurentPoly(n, quotient)


def mutate_matrix(top: Sequence[Sequence[int]], bottom: Sequence[Sequence[int]], k: int) -> tuple[Matrix, Matrix]:
    """Matrix mutation of the extended matrix [top; bottom] in direction k (0-based)."""
    n = len(top)
    full = [list(r) for r in top] + [list(r) for r in bottom]
    new = [row[:] for row in full]
    for i in range(len(full)):
        for j in range(n):
            if i == k or j == k:
                new[i][j] = -full[i][j]
            else:
                bik, bkj = full[i][k], full[k][j]
                sgn = (bik > 0) - (bik < 0)
                new[i][j] = full[i][j] + sgn * max(0, bik * bkj)
    return as_matrix(new[:n]), as_matrix(new[n:])


def mutate(s: Seed, k: int, relabel: Callable[[Seed, int], Hashable] | None = None) -> Seed:
    """Fomin-Zelevinsky mutation in direction k (0-based)."""
    n = s.n
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k} out of range")
    B, C = s.top, s.bottom
    sign = s.column_sign(k)
    pos_u = [max(B[i][k], 0) for i in range(n)]
    neg_u = [max(-B[i][k], 0) for i in range(n)]
    pos_y = [max(C[j][k], 0) for j in range(n)]
    neg_y = [max(-C[j][k], 0) for j in range(n)]
    assert sign in (1, -1)
    zero = [0] * n
    x = s.variables
    term_p = LaurentPoly.one(n)
    term_m = LaurentPoly.one(n)
    for i in range(n):
        if pos_u[i]:
            term_p = term_p * x[i] ** pos_u[i]
        if neg_u[i]:
            term_m = term_m * x[i] ** neg_u[i]
    term_p = term_p * _monomial(n, zero, pos_y)
    term_m = term_m * _monomial(n, zero, neg_y)
    new_x = exact_divide(term_p + term_m, x[k])

    top, bottom = mutate_matrix(B, C, k)
    variables = list(x)
    variables[k] = new_x
    labels = None
    if s.labels is not None:
        labels = list(s.labels)
        labels[k] = relabel(s, k) if relabel is not None else None
        labels = tuple(labels)
    return Seed(tuple(variables), top, bottom, labels)


# orbit tracking along flips


def flip_theta_orbit(diagonals: frozenset[Chord], orb: frozenset[Chord], n: int) -> frozenset[Chord]:
    """Flip a diameter, or both members of a theta-pair, of a theta-invariant triangulation."""
    N = 2 * n + 2
    members = sorted(orb)
    if len(members) == 1:
        return frozenset({flip(diagonals, members[0], N)})
    c = members[0]
    new_c = flip(diagonals, c, N)
    new_orb = frozenset({new_c, theta_chord(new_c, n)})
    if len(new_orb) != 2:
        raise MutationError(f"flip of pair {members} produced a diameter")
    return new_orb


def theta_state_matrix(diagonals: frozenset[Chord], labels: Sequence[frozenset[Chord]], n: int,
                       mode: str) -> Matrix:
    """Exchange matrix of a theta-invariant triangulation in the given cluster order."""
    diam = next(c for c in diagonals if is_diameter(c, n))
    T = ThetaTriangulation.canonical(diagonals, n, (diam[1], diam[0]))
    pos = {orb: i for i, orb in enumerate(labels)}
    perm = [pos[T.orbit_of(c)] for c in T.labeled[:n]]
    B = b_matrix(T.tbar)
    P = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            P[perm[a]][perm[b]] = B[a][b]
    k = pos[T.orbit_of(diam)]
    D = diag_with_two_at(n, k)
    mode = mode.upper()
    if mode == "B":
        return mat_mul(D, P)
    if mode == "C":
        return mat_mul(P, D)
    return as_matrix(P)


@dataclass
class VariableRecord:
    label: Hashable
    x: LaurentPoly
    F: LaurentPoly
    g: tuple[int, ...]


@dataclass
class ExchangeGraph:
    clusters: int
    seeds: int
    variables: dict[Hashable, VariableRecord]


def g_vector(x: LaurentPoly, top: Sequence[Sequence[int]]) -> tuple[int, ...]:
    degs = x.degrees(top)
    if len(degs) != 1:
        raise MutationError(f"variable is not homogeneous: degrees {sorted(degs)}")
    return next(iter(degs))


def enumerate_exchange_graph(
    s0: Seed,
    relabel: Callable[[Seed, int], Hashable],
    state: Callable[[Seed], Hashable] | None = None,
    check_matrix: Callable[[Seed], Matrix] | None = None,
    cap: int = 100000,
) -> ExchangeGraph:
    """Breadth-first closure of s0 under all mutations.

    Seeds are identified by their unordered set of labels; each label's
    variable must come out the same every time it is reached.
    """
    n = s0.n
    top0 = s0.top
    records: dict[Hashable, VariableRecord] = {}

    def record(label, x):
        if label in records:
            if records[label].x != x:
                raise MutationError(f"label {label} reached with two different variables")
            return
        records[label] = VariableRecord(label, x, x.specialize_u(), g_vector(x, top0))

    key = state or (lambda s: frozenset(s.labels))
    seen = {key(s0)}
    for lab, x in zip(s0.labels, s0.variables):
        record(lab, x)
    queue = deque([s0])
    visited = 0
    while queue:
        s = queue.popleft()
        visited += 1
        if check_matrix is not None and check_matrix(s) != s.top:
            raise MutationError(f"exchange matrix does not match the triangulation at {s.labels}")
        for k in range(n):
            t = mutate(s, k, relabel)
            record(t.labels[k], t.variables[k])
            kk = key(t)
            if kk not in seen:
                if len(seen) >= cap:
                    raise MutationError("seed cap exceeded: infinite type or wrong matrix")
                seen.add(kk)
                queue.append(t)
    return ExchangeGraph(len(seen), visited, records)


def theta_oracle(T: ThetaTriangulation, mode: str) -> ExchangeGraph:
    """Mutation oracle for types B and C, variables labeled by theta-orbits."""
    n = T.n
    s0 = initial_seed(T, mode)

    def current(s: Seed) -> frozenset[Chord]:
        return frozenset().union(*s.labels)

    def relabel(s: Seed, k: int):
        return flip_theta_orbit(current(s), s.labels[k], n)

    def check(s: Seed) -> Matrix:
        return theta_state_matrix(current(s), s.labels, n, mode)

    return enumerate_exchange_graph(s0, relabel, check_matrix=check)


def type_a_oracle(T: Triangulation) -> ExchangeGraph:
    """Mutation oracle for type A, variables labeled by diagonals."""
    s0 = initial_seed_type_a(T)

    def relabel(s: Seed, k: int):
        return flip(s.labels, s.labels[k], T.m)

    def check(s: Seed) -> Matrix:
        return b_matrix_from_triangulation(Triangulation(T.m, s.labels))

    return enumerate_exchange_graph(s0, relabel, check_matrix=check)


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("CLUSTERBC_THREADS", "1")))
    except ValueError:
        return 1


def _oracle_job(args):
    diagonals, n, d, mode = args
    T = ThetaTriangulation(n, diagonals, d)
    return theta_oracle(T, mode)


def theta_oracles(triangulations: Sequence[ThetaTriangulation], mode: str,
                  workers: int | None = None) -> list[ExchangeGraph]:
    """Run the oracle on many triangulations, optionally in worker processes."""
    workers = workers or thread_count()
    jobs = [(T.diagonals, T.n, T.d, mode) for T in triangulations]
    if workers <= 1 or len(jobs) <= 1:
        return [_oracle_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_oracle_job, jobs))


__all__ = [
    "ExchangeGraph",
    "MutationError",
    "PolygonError",
    "Seed",
    "b_matrix_from_triangulation",
    "chord",
    "enumerate_exchange_graph",
    "exact_divide",
    "exchange_matrix",
    "initial_seed",
    "initial_seed_type_a",
    "mutate",
    "mutate_matrix",
    "theta_oracle",
    "type_a_oracle",
]
