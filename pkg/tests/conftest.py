"""Shared solve cache so the table-reproduction tests reuse trajectories."""
import pytest

from dgadvect import make_preset, run_experiment, transient_profile


@pytest.fixture(scope="session")
def solves():
    cache = {}

    def get(preset: str, k: int, N: int, init="l2", cfl=0.1):
        key = (preset, k, N, str(init), cfl)
        if key not in cache:
            problem = make_preset(preset, k)
            cache[key] = run_experiment(problem, N, k, init_kind=init, cfl=cfl)
        return cache[key]

    return get


@pytest.fixture(scope="session")
def transients():
    cache = {}

    def get(preset: str, k: int, N: int, init_kinds: tuple, t_grid: tuple):
        key = (preset, k, N, init_kinds, t_grid)
        if key not in cache:
            problem = make_preset(preset, k)
            cache[key] = transient_profile(problem, N, k, list(init_kinds), list(t_grid))
        return cache[key]

    return get
