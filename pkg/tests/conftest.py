import numpy as np
import pytest

from shishkin_bvp import TwoParamBVP

# acceptance results, printed once at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def random_problem(rng: np.random.Generator, nonpositive_source: bool = True) -> TwoParamBVP:
    """A random problem satisfying the coefficient assumptions with known alpha and beta.

    a_i >= alpha, b_ij > 0, b_ii - b_ij >= beta; f <= 0 when requested and
    boundary values are nonnegative.
    """
    alpha = rng.uniform(0.2, 2.0)
    beta = rng.uniform(0.1, 2.0)
    eps2 = 10.0 ** rng.uniform(-8, 0)
    eps1 = eps2 * 10.0 ** rng.uniform(-4, 0)

    def bump(scale):
        amp, k, phase = rng.uniform(0, scale), rng.uniform(0.5, 6), rng.uniform(0, 2 * np.pi)
        return lambda x: amp * (1.0 + np.sin(k * x + phase))

    def positive(scale):
        c0, c2 = rng.uniform(0.05, scale), rng.uniform(0, scale)
        return lambda x: c0 + c2 * x**2

    def compose(base, extra, margin):
        return lambda x: base(x) + extra(x) + margin

    g1, g2 = bump(2.0), bump(2.0)
    b12, b21 = positive(3.0), positive(3.0)
    m1, m2 = bump(1.5), bump(1.5)
    s1, s2 = rng.uniform(0, 3, 2), rng.uniform(0, 3, 2)
    sign = -1.0 if nonpositive_source else rng.choice([-1.0, 1.0])

    return TwoParamBVP(
        eps1, eps2,
        a1=lambda x: alpha + g1(x),
        a2=lambda x: alpha + g2(x),
        b11=compose(b12, m1, beta),
        b12=b12,
        b21=b21,
        b22=compose(b21, m2, beta),
        f1=lambda x: sign * (s1[0] + s1[1] * np.exp(-x) ** 2),
        f2=lambda x: sign * (s2[0] + s2[1] * np.cos(3 * x) ** 2),
        left_bc=tuple(rng.uniform(0, 5, 2)),
        right_bc=tuple(rng.uniform(0, 5, 2)),
        alpha=alpha,
        beta=beta,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)
