import pytest

from ccskit import Environment, generate_terms


@pytest.fixture
def small_env():
    """A two-letter environment plus a deterministic term stream."""
    env = Environment({}, ("a", "b"))
    return env, generate_terms(("a", "b"), 3, seed=20240)
