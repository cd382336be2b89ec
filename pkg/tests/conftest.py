import numpy as np
import pytest

from mindlin1d import DEFAULT_PARAMS, MaterialParams, derive_coefficients


@pytest.fixture(scope="session")
def bench_params() -> MaterialParams:
    """Benchmark parameter set used by the verification cases."""
    return DEFAULT_PARAMS


@pytest.fixture(scope="session")
def bench_coeffs(bench_params):
    return derive_coefficients(bench_params)


def random_valid_params(rng: np.random.Generator) -> MaterialParams:
    """Random parameter set satisfying all admissibility inequalities."""
    rho = rng.uniform(0.1, 10.0)
    i_mu = rng.uniform(0.1, 10.0)
    gamma = rng.uniform(0.1, 10.0)
    b_micro = rng.uniform(0.1, 10.0)
    c_micro = rng.uniform(0.1, 10.0)
    # |A| strictly inside the sqrt(gamma*B) bound, sign random, never zero
    frac = rng.uniform(0.01, 0.99)
    sign = 1.0 if rng.random() < 0.5 else -1.0
    a_coupling = sign * frac * np.sqrt(gamma * b_micro)
    return MaterialParams(
        rho=rho, i_mu=i_mu, gamma=gamma,
        a_coupling=a_coupling, b_micro=b_micro, c_micro=c_micro,
    )
