"""Exit criteria.  Each test records one PASS/FAIL line, printed in the terminal summary."""

import math

import numpy as np
import pytest

from shishkin_bvp import (build_shishkin_mesh, builtin_problem, layer_width, paper_eps_grid, solve_bvp,
                          solve_block_tridiagonal, solve_dense_oracle, solve_reduced, transition_parameters,
                          two_mesh_difference, uniform_table, validate_problem)
from shishkin_bvp.problem import ms1_exact

from conftest import ACCEPTANCE_LINES, random_problem
from test_linsolve import random_dominant_system

N_LIST = [128, 256, 512, 1024, 2048]
PRINTED_D_N = [7.515e-2, 5.376e-2, 3.478e-2, 2.044e-2, 1.181e-2]
PRINTED_P_STAR = 0.4833
PRINTED_C_P_STAR = 2.7546


def record(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}")
    print(ACCEPTANCE_LINES[-1])
    assert ok, detail


@pytest.fixture(scope="module")
def table():
    return uniform_table(lambda e1, e2: builtin_problem("ex1", e1, e2), paper_eps_grid(), N_LIST)


def test_01_table_reproduction(table):
    rel = np.abs(table.d_n - PRINTED_D_N) / PRINTED_D_N
    ok = (np.all(rel <= 0.10) and np.sum(rel <= 0.02) >= 3
          and abs(table.p_star - PRINTED_P_STAR) <= 0.05
          and abs(table.c_p_star - PRINTED_C_P_STAR) <= 0.3)
    detail = (f"D^N={np.array2string(table.d_n, precision=4)} rel.err max {rel.max():.3%}, "
              f"{int(np.sum(rel <= 0.02))}/5 within 2%; p*={table.p_star:.4f}; C_p*={table.c_p_star:.4f}")
    record(1, "Table 1 reproduction", ok, detail)


def test_02_row_spot_checks():
    d1 = two_mesh_difference(builtin_problem("ex1", 5.0**-4, 2.0**-7), 128)
    d2 = two_mesh_difference(builtin_problem("ex1", 5.0**-8, 2.0**-11), 512)
    r1, r2 = abs(d1 - 4.725e-2) / 4.725e-2, abs(d2 - 3.365e-2) / 3.365e-2
    record(2, "row spot checks", r1 <= 0.1 and r2 <= 0.1,
           f"D(5^-4,2^-7,128)={d1:.4e} ({r1:.2%}), D(5^-8,2^-11,512)={d2:.4e} ({r2:.2%})")


def test_03_eps_stabilization(table):
    last, prev = table.d_eps_n[-1], table.d_eps_n[-2]
    rel = np.abs(last - prev) / last
    record(3, "eps-stabilization", bool(np.all(rel < 0.01)), f"max relative change {rel.max():.2e}")


def test_04_theorem_rate(table):
    ns = np.array(N_LIST, dtype=float)
    scaled = table.d_n * ns / np.log(ns)
    spread = scaled.max() / scaled.min()
    decreasing = bool(np.all(np.diff(table.d_n) < 0))
    ok = spread < 3 and decreasing and bool(np.all((table.p_n > 0.3) & (table.p_n < 1.3)))
    record(4, "N^-1 ln N behaviour", ok,
           f"D^N N/ln N spread x{spread:.3f}, strictly decreasing={decreasing}, p^N={np.round(table.p_n, 3)}")


def test_05_manufactured_solution():
    orders = {}
    for eps in [(1.0, 1.0), (0.1, 0.5)]:
        bvp = builtin_problem("ms1", *eps)
        errs = []
        for N in (256, 2048):
            sol = solve_bvp(bvp, N, kind="uniform")
            errs.append(np.abs(sol.values - ms1_exact(sol.x)).max())
        orders[eps] = math.log2(errs[0] / errs[1]) / 3
    ok = all(p >= 0.85 for p in orders.values())
    record(5, "manufactured-solution order", ok, ", ".join(f"eps={k}: p={v:.3f}" for k, v in orders.items()))


def test_06_discrete_maximum_principle_and_stability():
    rng = np.random.default_rng(4)
    worst_min, worst_slack = np.inf, -np.inf
    for _ in range(100):
        bvp = random_problem(rng)
        assert validate_problem(bvp, 201).ok
        N = int(rng.choice([8, 16, 32]))
        sol = solve_bvp(bvp, N)
        worst_min = min(worst_min, sol.values.min())
        x = sol.x
        f_norm = max(np.abs(bvp.f1(x)).max(), np.abs(bvp.f2(x)).max())
        bound = max(np.abs(bvp.left_bc).max(), np.abs(bvp.right_bc).max(), f_norm / bvp.beta)
        worst_slack = max(worst_slack, np.abs(sol.values).max() - bound)
    ok = worst_min >= -1e-10 and worst_slack <= 1e-8
    record(6, "discrete maximum principle / stability", ok,
           f"min U over 100 instances {worst_min:.3e}, max(|U| - bound) {worst_slack:.3e}")


def test_07_solver_oracle_equivalence():
    rng = np.random.default_rng(7)
    worst = 0.0
    for k in range(50):
        N = [4, 8, 16, 64][k % 4]
        sys = random_dominant_system(rng, N - 1)
        dense = solve_dense_oracle(sys)
        worst = max(worst, np.abs(solve_block_tridiagonal(sys) - dense).max() / np.abs(dense).max())
    record(7, "block Thomas vs dense elimination", worst <= 1e-10, f"max relative difference {worst:.2e}")


def _widths(name, eps1, eps2, N=1024, threshold=0.05):
    bvp = builtin_problem(name, eps1, eps2)
    sol, rsol = solve_bvp(bvp, N), solve_reduced(bvp, 1024)
    return [layer_width(sol, rsol, c, threshold) for c in (1, 2)], sol


def test_08_layer_patterns():
    details, ok = [], True

    # ex2: eps2-layer in both components.  The component-1 layer amplitude is
    # itself O(eps2), so it is only visible at threshold 0.05 for eps2 >= 2^-4.
    for k in (2, 3):
        (w1a, w2a), _ = _widths("ex2", 5.0**-6, 2.0**-k)
        (w1b, w2b), _ = _widths("ex2", 5.0**-6, 2.0 ** -(k + 1))
        r1, r2 = w1a / w1b, w2a / w2b
        ok &= 1.3 < r1 < 3.2 and 1.3 < r2 < 3.2
        details.append(f"ex2 eps2 2^-{k}->2^-{k + 1}: ratios {r1:.2f}, {r2:.2f}")
    (_, w2a), _ = _widths("ex2", 5.0**-6, 2.0**-6)
    (_, w2b), _ = _widths("ex2", 5.0**-6, 2.0**-7)
    ok &= 1.3 < w2a / w2b < 3.2
    details.append(f"ex2 u2 eps2 2^-6->2^-7: ratio {w2a / w2b:.2f}")

    # ex3: eps1-layer in component 1 only
    (w1, w2), sol = _widths("ex3", 5.0**-4, 2.0**-4)
    ok &= w2 <= sol.x[2] and w1 > sol.x[2]
    details.append(f"ex3 widths u1={w1:.3e}, u2={w2:.3e}")

    worst = 0.0
    for name in ("ex2", "ex3"):
        rsol = solve_reduced(builtin_problem(name), 1024)
        g = rsol.grid
        worst = max(worst, np.abs(rsol.values - np.column_stack([2 * g, g + 1])).max())
    ok &= worst <= 1e-7
    details.append(f"reduced error {worst:.1e}")
    record(8, "layer patterns", bool(ok), "; ".join(details))


def test_09_mesh_suite():
    checks = []
    t = transition_parameters(5.0**-4, 2.0**-7, 1.0, 1024)
    checks.append(t == (min(2.0**-7 * math.log(1024), 2 * 5.0**-4 * math.log(1024)),
                        min(0.5, 2 * 2.0**-7 * math.log(1024))))
    checks.append(transition_parameters(0.25, 0.25, 1.0, 4) == (0.25, 0.5))
    uniform = build_shishkin_mesh(0.25, 0.25, 1.0, 16)
    checks.append(np.abs(uniform.points - np.arange(17) / 16).max() <= 2 * np.finfo(float).eps)

    rng = np.random.default_rng(9)
    for _ in range(20):
        eps2 = 10.0 ** rng.uniform(-10, 0)
        eps1 = eps2 * 10.0 ** rng.uniform(-6, 0)
        N = 4 * int(rng.integers(1, 200))
        m = build_shishkin_mesh(eps1, eps2, 1.0, N)
        x = m.points
        in1 = np.sum((x > 0) & (x <= m.tau1))
        in2 = np.sum((x > m.tau1) & (x <= m.tau2))
        in3 = np.sum(x > m.tau2)
        fine = build_shishkin_mesh(eps1, eps2, 1.0, 2 * N, taus=(m.tau1, m.tau2))
        nested = np.isin(x, fine.points).all()
        checks.append(in1 == N // 4 and in2 == N // 4 and in3 == N // 2 and nested and m.h1 <= m.h2)
    record(9, "mesh unit suite", all(checks), f"{sum(checks)}/{len(checks)} checks passed")
