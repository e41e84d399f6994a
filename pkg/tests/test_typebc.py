import pytest

from clusterbc.laurent import LaurentPoly
from clusterbc.polygon import all_theta_orbits, b_matrix, theta_orbit
from clusterbc.seeds import exchange_matrix, theta_oracle
from clusterbc.typebc import (
    ExpansionError,
    assemble_x,
    expand,
    expand_all,
    expand_type_b,
    expand_type_c,
    rotated_restriction_vector,
)
from clusterbc.verify import theta_triangulations, verify_theorem

from conftest import P

F_AB = "y1*y2*y3^2 + y1*y3^2 + 2*y1*y3 + y3^2 + y1 + 2*y3 + 1"


def test_type_b_worked_example(fig_exfpoly):
    E = expand_type_b(fig_exfpoly, theta_orbit((0, 3), 3))
    assert E.F == P(F_AB)
    assert E.F == P("y1*y2*y3 + y1*y3 + y1 + y3 + 1") * P("y3 + 1") - P("y1*y2*y3")
    want = theta_oracle(fig_exfpoly, "B").variables[theta_orbit((0, 3), 3)]
    assert (E.F, E.g, E.x) == (want.F, want.g, want.x)


def test_initial_orbits():
    for T in theta_triangulations(3):
        for i, c in enumerate(T.labeled[:3], start=1):
            for mode in "BC":
                E = expand(T, T.orbit_of(c), mode)
                assert E.F == LaurentPoly.one(3)
                assert E.g == tuple(int(k == i - 1) for k in range(3))
                assert E.x == LaurentPoly.u(3, i)


def test_assemble_x_identity(hexagon):
    assert assemble_x(LaurentPoly.one(3), (0, 1, 0), b_matrix(hexagon)) == LaurentPoly.u(3, 2)
    with pytest.raises(ExpansionError):
        assemble_x(P("u1 + 1"), (0, 0, 0), b_matrix(hexagon))


def test_rotated_restriction_vector():
    assert rotated_restriction_vector((1, 0, 2)) == (1, 0, 1)
    with pytest.raises(ExpansionError):
        rotated_restriction_vector((0, 1, 1))


def test_unknown_mode(fig_exfpoly):
    with pytest.raises(ValueError):
        expand(fig_exfpoly, theta_orbit((0, 3), 3), "D")
    with pytest.raises(ExpansionError):
        expand_type_b(fig_exfpoly, [(0, 3), (1, 5)])


@pytest.mark.parametrize("mode", ["B", "C"])
def test_small_sweep(mode):
    rep = verify_theorem(2, mode)
    assert (rep.triangulations, rep.per_triangulation, rep.checks) == (6, 6, 36)
    assert rep.passed, rep.failures[:1]


def test_expansions_positive():
    for T in theta_triangulations(3):
        for mode in "BC":
            for E in expand_all(T, mode).values():
                assert E.x.coefficients_positive()
                assert E.F.constant_term() == 1
                assert E.x.degrees(exchange_matrix(T, mode)) == {E.g}


def _internal_d_triangle(T):
    B = b_matrix(T.tbar)
    n = T.n
    return any(B[i][n - 1] == 1 for i in range(n - 1)) and any(B[i][n - 1] == -1 for i in range(n - 1))


def test_literal_c_rule_failure_set():
    # the uncorrected g shift fails exactly where d's triangle in T-bar has two diagonal sides
    rep = verify_theorem(3, "C", literal=True)
    assert len(rep.failures) == 12
    bad = {f["triangulation"] for f in rep.failures}
    expected = {T.full.text() for T in theta_triangulations(3) if _internal_d_triangle(T)}
    assert bad == expected and len(expected) == 4
    for f in rep.failures:
        assert f["got"]["F"] == f["expected"]["F"]
        assert f["got"]["g"] != f["expected"]["g"]


def test_literal_agrees_with_corrected_elsewhere():
    for T in theta_triangulations(3):
        if _internal_d_triangle(T):
            continue
        for orb in all_theta_orbits(3):
            assert expand_type_c(T, orb) == expand_type_c(T, orb, literal=True)
