import pytest

from clusterbc.laurent import LaurentPoly
from clusterbc.polygon import Triangulation, all_diagonals, b_matrix, crosses, enumerate_triangulations
from clusterbc.seeds import type_a_oracle
from clusterbc.snake import SnakeError, SnakeGraph, expansion

from conftest import P


def fib(k):
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def test_hexagon_example(hexagon):
    G = SnakeGraph(hexagon, (1, 4))
    assert G.d == 3
    assert sorted(G.crossed_labels) == [1, 2, 3]
    assert len(set(G.shape)) == 1  # a straight strip
    assert len(G.matchings) == 5
    P_minus = G.minimal_matching
    assert G.weight(P_minus) == (0, 2, 0)
    assert G.height(P_minus) == (0, 0, 0)
    E = expansion(hexagon, (1, 4))
    assert E.F == P("y1*y2*y3 + y1*y3 + y1 + y3 + 1")
    assert E.g == (-1, 1, -1)
    assert E.x * P("u1*u2*u3") == P("u1*u3*y1*y2*y3 + y1*y3 + u2*y1 + u2*y3 + u2^2")


def test_initial_and_boundary(hexagon):
    E = expansion(hexagon, (0, 2))
    assert (E.x, E.F, E.g) == (LaurentPoly.u(3, 3), LaurentPoly.one(3), (0, 0, 1))
    E = expansion(hexagon, (2, 3))
    assert (E.x, E.F, E.g) == (LaurentPoly.one(3), LaurentPoly.one(3), (0, 0, 0))
    with pytest.raises(SnakeError):
        SnakeGraph(hexagon, (0, 3))
    with pytest.raises(SnakeError):
        SnakeGraph(hexagon, (0, 1))


def _all_pairs(m):
    for T in enumerate_triangulations(m):
        T = Triangulation(m, tuple(sorted(T)))
        for c in all_diagonals(m):
            if c not in T:
                yield T, c


def test_tile_count_and_structure_octagon():
    for T, c in _all_pairs(8):
        G = SnakeGraph(T, c)
        assert G.d == sum(crosses(c, t) for t in T.diagonals)
        assert len(G.boundary_matchings) == 2
        heights = [G.height(P) for P in G.matchings]
        assert len(set(heights)) == len(heights)
        assert G.height(G.minimal_matching) == (0,) * len(T)
        top = [0] * len(T)
        for lab in G.crossed_labels:
            top[lab - 1] += 1
        assert G.height(G.maximal_matching) == tuple(top)
        if G.d == 1:
            assert not G.interior_edges and len(G.matchings) == 2
        if len(set(G.shape)) <= 1:
            assert len(G.matchings) == fib(G.d + 2)


def test_single_tile_minimal_weight():
    for T, c in _all_pairs(7):
        G = SnakeGraph(T, c)
        if G.d != 1:
            continue
        (j,) = G.crossed_labels
        B = b_matrix(T)
        want = tuple(int(B[i][j - 1] < 0) for i in range(len(T)))
        assert G.weight(G.minimal_matching) == want


def test_expansion_homogeneous_and_positive():
    for T, c in _all_pairs(7):
        E = expansion(T, c)
        assert E.x.degrees(b_matrix(T)) == {E.g}
        assert E.x.coefficients_positive()
        assert E.F.constant_term() == 1
        assert expansion(T, (c[1], c[0])) == E


@pytest.mark.parametrize("m", [6, 7])
def test_matches_type_a_oracle(m):
    for Tset in enumerate_triangulations(m):
        T = Triangulation(m, tuple(sorted(Tset)))
        G = type_a_oracle(T)
        for c, rec in G.variables.items():
            assert expansion(T, c).x == rec.x


def test_matches_type_a_oracle_decagon():
    for Tset in enumerate_triangulations(10)[:3]:
        T = Triangulation(10, tuple(sorted(Tset)))
        G = type_a_oracle(T)
        assert len(G.variables) == 35
        for c, rec in G.variables.items():
            assert expansion(T, c).x == rec.x


def test_to_json(hexagon):
    js = SnakeGraph(hexagon, (1, 4)).to_json()
    assert js["matchings"] == 5 and len(js["tiles"]) == 3
