import numpy as np
import pytest
import sympy as sym

from gaspt_rh import oracles
from gaspt_rh.oracles import X, Y


def test_invalid_oracle_rejected():
    # 3x + 3y^2/x does not solve the alpha = -1 equation
    with pytest.raises(ValueError):
        oracles.ExactSolution(3 * X + 3 * Y ** 2 / X, -1)


@pytest.mark.parametrize("alpha", [-2, -1, 0, 1, 2])
def test_poly_solutions_solve(alpha):
    sols = oracles.poly_solutions(alpha, 5)
    assert sols
    for s in sols:
        assert sym.simplify(oracles.pde_residual(s.expr, alpha)) == 0


def test_poly_solution_count_laplace():
    # harmonic polynomials even in x? no: basis in x^{2j} y^k; degree <= 4 gives
    # 1, y, x^2 - y^2, x^2 y - y^3/3, x^4 - 6 x^2 y^2 + y^4
    assert len(oracles.poly_solutions(0, 4)) == 5


def test_lift_and_sym_map():
    u = oracles.named("x2-2y2")
    v = oracles.lift(oracles.named("4x4-16x2y2"))
    assert v.alpha == 1
    w = oracles.sym_map(u)
    assert w.alpha == 1 and sym.simplify(w.expr - u.expr) == 0
    s = oracles.sym_map(oracles.named("x2+y2"))
    assert s.alpha == 4 and s.kind == "rational"


def test_conjugate_line_integral():
    u = oracles.named("x3")
    v = oracles.cr_conjugate(u, 2.0)
    z = np.array([2.3 + 0.4j, 1.5 - 0.2j])
    h = 1e-5
    gx = (v.at(z + h) - v.at(z - h)) / (2 * h)
    assert np.allclose(gx, v.vx(z.real, z.imag), atol=1e-7)
    assert np.max(np.abs(v.residual(z.real, z.imag))) < 1e-8


def test_fd_exact_on_constant():
    g = oracles.fd_solve(0, lambda t: np.ones_like(t), 0.1)
    assert np.allclose(g.values, 1.0, atol=1e-12)


def test_fd_grid_limit():
    with pytest.raises(ValueError):
        oracles.fd_solve(0, lambda t: np.ones_like(t), 0.001)


def test_boundary_trace_consistency():
    u = oracles.named("x3")
    d = oracles.boundary_trace(u, 2.0, 16)
    th = np.linspace(0, 2 * np.pi, 9)
    assert np.allclose(d.trace(th).real, (2 + np.cos(th)) ** 3, atol=1e-12)
    assert np.allclose(d.un(th).real, 3 * (2 + np.cos(th)) ** 2 * np.cos(th), atol=1e-12)


def test_named_unknown():
    with pytest.raises(KeyError):
        oracles.named("nope")
