import numpy as np
import pytest

from cpsehp.errors import DimensionError, DomainError
from cpsehp.model import BOUND, Kind, PotentialParams
from cpsehp.nu import QuantumNumbers, energy, enumerate_bound_states
from cpsehp.oracle import (GridConfig, convergence_report, default_grid, node_count,
                           solve_radial)

HYDROGEN = PotentialParams(B=-1.0, kind=Kind.COULOMB)


@pytest.mark.parametrize("alpha", [0.01, 0.04])
@pytest.mark.parametrize("l", [0, 1, 2])
def test_fd_oracle_agrees_with_closed_form_on_bound_set(alpha, l):
    p = BOUND.with_(alpha=alpha)
    states = enumerate_bound_states(p, l, 3)
    grid = default_grid(p, beta_wf=min(s.beta_wf for s in states))
    sol = solve_radial("approximated", p, l, grid, k=4)
    for s, e in zip(states, sol.energies):
        assert abs(e - s.energy) / abs(s.energy) <= 1e-4


def test_hydrogen_ground_state():
    grid = GridConfig(r_min=1e-10, r_max=120.0, n_points=4000, refinement="richardson_pair")
    sol = solve_radial("exact", HYDROGEN, 0, grid, k=2)
    assert sol.energies[0] == pytest.approx(-0.5, abs=1e-5)
    assert sol.energies[1] == pytest.approx(-0.125, abs=1e-5)


def test_origin_correction_restores_second_order():
    p = BOUND.with_(alpha=0.04)
    # box sized to the ground state (decay length ~1/(alpha beta_wf) ~ 1)
    grids = [GridConfig(1e-10 / p.alpha, 40.0, n) for n in (500, 1000, 2000)]
    E0 = energy(p, QuantumNumbers(0, 0))
    corrected = convergence_report(p, 0, grids, reference=[E0])
    plain = convergence_report(p, 0, grids, reference=[E0], correct_origin=False)
    assert corrected.order_estimate() > 1.7
    assert plain.order_estimate() < 1.5
    assert abs(corrected.richardson[0] - E0) < abs(plain.richardson[0] - E0)


def test_eigenvector_nodes():
    p = BOUND.with_(alpha=0.04)
    grid = default_grid(p, n_points=2000, refinement="single")
    sol = solve_radial("approximated", p, 1, grid, k=3, vectors=True)
    for j in range(3):
        assert node_count(sol.vectors[:, j]) == j


def test_grid_validation():
    with pytest.raises(DimensionError):
        GridConfig(1.0, 0.5, 1000)
    with pytest.raises(DimensionError):
        GridConfig(0.1, 10.0, 50)
    with pytest.raises(DimensionError):
        GridConfig(0.1, 10.0, 500, refinement="cubic")
    with pytest.raises(DomainError):
        solve_radial("other", BOUND, 0, GridConfig(0.1, 10.0, 500), k=1)
    with pytest.raises(DomainError):
        default_grid(HYDROGEN)


def test_grid_nodes_are_interior():
    g = GridConfig(1.0, 102.0, 100)
    r = g.nodes()
    assert r[0] == pytest.approx(1.0 + g.step)
    assert r[-1] == pytest.approx(102.0 - g.step)
    assert np.allclose(np.diff(r), g.step)
