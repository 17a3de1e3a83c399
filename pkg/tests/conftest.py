"""Shared, session-cached constructions of the two worked examples."""
import pytest

from wildram.lubin_tate import Kind, reduced_automorphism

N_FULL = 730


@pytest.fixture(scope="session")
def ram_pair():
    """Ramified p=3: alpha = 1+pi, beta = 1+pi^2."""
    return (reduced_automorphism(Kind.RAMIFIED, 3, "1+pi", N_FULL),
            reduced_automorphism(Kind.RAMIFIED, 3, "1+pi^2", N_FULL))


@pytest.fixture(scope="session")
def unram_pair():
    """Unramified p=3: alpha = 1+p, beta = 1+zeta*p."""
    return (reduced_automorphism(Kind.UNRAMIFIED, 3, "1+p", N_FULL),
            reduced_automorphism(Kind.UNRAMIFIED, 3, "1+zeta*p", N_FULL))


@pytest.fixture(scope="session")
def unram_prime_tau():
    """beta' = alpha beta^p for the counterexample group."""
    return reduced_automorphism(Kind.UNRAMIFIED, 3, "(1+p)*(1+zeta*p)^3", N_FULL)
