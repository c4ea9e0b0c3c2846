"""Stationary-equation solver against closed-form oracles.

Free-particle integrations are compared with sin/cos expressions, the
harmonic ground state with its Gaussian, and both built-in spectra with
their textbook formulas (n + 1/2 and n^2 pi^2 / 2).  Convergence order is
measured directly by halving the spacing.
"""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import harmonic_level, well_level
from qmkit import (
    DegeneratePair,
    GridTooSmall,
    NoEigenvalueInRange,
    Overflow,
    Potential,
    RealGrid,
    Wavefunction,
    find_eigenvalues,
    load_potential_table,
    numerov_integrate,
    pair_from_wavefunctions,
    shoot_mismatch,
    solution_pair,
    wronskian_profile,
)

HARMONIC_GRID = RealGrid(-10.0, 10.0, 4001)
WELL_GRID = RealGrid(0.0, 1.0, 2001)


# ---------------------------------------------------------------------------
# potentials and ingestion


def test_potential_constants_must_be_positive():
    with pytest.raises(ValueError, match="positive"):
        Potential.harmonic(mass=-1.0)
    with pytest.raises(ValueError, match="positive"):
        Potential.free(hbar=0.0)


def test_unknown_potential_kind_rejected():
    with pytest.raises(ValueError, match="unknown potential kind"):
        Potential(kind="banana")


def test_tabulated_requires_strictly_increasing_points():
    with pytest.raises(ValueError, match="strictly increasing"):
        Potential.tabulated([0.0, 1.0, 1.0], [0.0, 0.5, 1.0])


def test_tabulated_evaluate_rejects_points_outside_range():
    pot = Potential.tabulated([0.0, 1.0, 2.0], [0.0, 1.0, 4.0])
    with pytest.raises(ValueError, match="range"):
        pot.evaluate(np.array([-0.5]))


def test_load_potential_table_tolerates_header(tmp_path):
    path = tmp_path / "table.csv"
    path.write_text("q,V\n0.0,0.0\n0.5,0.125\n1.0,0.5\n")
    pot = load_potential_table(path)
    assert pot.kind == "tabulated"
    assert pot.evaluate(np.array([0.25]))[0] == pytest.approx(0.0625, abs=1e-12)


def test_load_potential_table_rejects_single_column(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("0.0\n1.0\n")
    with pytest.raises(ValueError, match="two columns"):
        load_potential_table(path)


def test_wavefunction_rejects_identically_zero_samples():
    with pytest.raises(ValueError, match="vanish"):
        Wavefunction(WELL_GRID, np.zeros(WELL_GRID.n_points), 1.0)


def test_grid_rejects_degenerate_and_tiny_shapes():
    with pytest.raises(ValueError):
        RealGrid(1.0, 1.0, 100)
    with pytest.raises(GridTooSmall):
        RealGrid(0.0, 1.0, 5)


# ---------------------------------------------------------------------------
# numerov_integrate


def test_free_particle_matches_sine_closed_form():
    grid = RealGrid(0.0, 10.0, 4001)
    h = grid.spacing
    wave = numerov_integrate(Potential.free(), 0.5, grid, seed=(0.0, math.sin(h)))
    assert np.abs(wave.values - np.sin(grid.points())).max() < 1e-8


@settings(max_examples=20, deadline=None)
@given(k=st.floats(min_value=0.5, max_value=3.0))
def test_free_particle_matches_sine_for_random_wavenumbers(k):
    grid = RealGrid(0.0, 10.0, 4001)
    h = grid.spacing
    energy = 0.5 * k * k
    wave = numerov_integrate(
        Potential.free(), energy, grid, seed=(0.0, math.sin(k * h))
    )
    assert np.abs(wave.values - np.sin(k * grid.points())).max() < 1e-6


def test_zero_energy_free_solution_is_linear():
    grid = RealGrid(0.0, 10.0, 4001)
    wave = numerov_integrate(Potential.free(), 0.0, grid, seed=(0.0, grid.spacing))
    assert np.abs(wave.values - grid.points()).max() < 1e-10


def test_harmonic_ground_state_matches_gaussian():
    h = HARMONIC_GRID.spacing
    seed = (math.exp(-0.5 * 10.0**2), math.exp(-0.5 * (-10.0 + h) ** 2))
    wave = numerov_integrate(Potential.harmonic(), 0.5, HARMONIC_GRID, seed=seed)
    q = HARMONIC_GRID.points()
    true = np.exp(-0.5 * q * q)
    # Past the right turning point the marched solution picks up the
    # growing branch from roundoff; compare where the state has support.
    mask = q <= 5.0
    rel = np.abs(wave.values[mask] - true[mask]).max() / true[mask].max()
    assert rel < 1e-6


def test_right_to_left_direction_matches_mirror_solution():
    grid = RealGrid(0.0, 10.0, 4001)
    h = grid.spacing
    seed = (math.sin(10.0), math.sin(10.0 - h))
    wave = numerov_integrate(
        Potential.free(), 0.5, grid, direction="right-to-left", seed=seed
    )
    assert np.abs(wave.values - np.sin(grid.points())).max() < 1e-8


def test_invalid_direction_rejected():
    with pytest.raises(ValueError, match="direction"):
        numerov_integrate(Potential.free(), 0.5, WELL_GRID, direction="up")


def test_unbounded_growth_raises_overflow():
    grid = RealGrid(0.0, 40.0, 4001)
    with pytest.raises(Overflow):
        numerov_integrate(Potential.harmonic(), 0.0, grid, seed=(1.0, 1.1))


# ---------------------------------------------------------------------------
# shoot_mismatch


def test_mismatch_vanishes_at_harmonic_ground_level():
    assert abs(shoot_mismatch(Potential.harmonic(), 0.5, HARMONIC_GRID)) < 1e-8


def test_mismatch_large_off_spectrum():
    assert abs(shoot_mismatch(Potential.harmonic(), 0.7, HARMONIC_GRID)) > 1e-2


def test_mismatch_vanishes_at_well_ground_level():
    energy = well_level(1)
    assert abs(shoot_mismatch(Potential.infinite_well(1.0), energy, WELL_GRID)) < 1e-8


# ---------------------------------------------------------------------------
# find_eigenvalues


def test_harmonic_spectrum_matches_closed_form():
    result = find_eigenvalues(Potential.harmonic(), (0.0, 6.0), 64, HARMONIC_GRID)
    expected = [harmonic_level(n) for n in range(6)]
    assert len(result.energies) == 6
    assert np.abs(result.energies - np.array(expected)).max() < 1e-6


def test_well_spectrum_matches_closed_form():
    result = find_eigenvalues(Potential.infinite_well(1.0), (0.0, 60.0), 64, WELL_GRID)
    expected = [well_level(n) for n in (1, 2, 3)]
    assert len(result.energies) == 3
    assert np.abs(result.energies - np.array(expected)).max() < 1e-4


def test_free_particle_has_no_discrete_levels():
    with pytest.raises(NoEigenvalueInRange):
        find_eigenvalues(Potential.free(), (0.0, 10.0), 64, RealGrid(0.0, 10.0, 2001))


def test_window_between_levels_is_empty():
    with pytest.raises(NoEigenvalueInRange):
        find_eigenvalues(Potential.harmonic(), (0.6, 1.4), 64, HARMONIC_GRID)


def test_node_counts_follow_the_node_theorem():
    result = find_eigenvalues(Potential.harmonic(), (0.0, 6.0), 64, HARMONIC_GRID)
    assert result.node_counts == (0, 1, 2, 3, 4, 5)
    well = find_eigenvalues(Potential.infinite_well(1.0), (0.0, 60.0), 64, WELL_GRID)
    assert well.node_counts == (0, 1, 2)


def test_eigenfunctions_are_orthonormal():
    result = find_eigenvalues(Potential.harmonic(), (0.0, 6.0), 64, HARMONIC_GRID)
    h = HARMONIC_GRID.spacing
    for i, psi_i in enumerate(result.wavefunctions):
        for j, psi_j in enumerate(result.wavefunctions):
            inner = float(np.trapezoid(psi_i.values * psi_j.values, dx=h))
            assert abs(inner - (1.0 if i == j else 0.0)) < 1e-6


def test_energies_come_out_strictly_increasing():
    result = find_eigenvalues(Potential.harmonic(), (0.0, 6.0), 64, HARMONIC_GRID)
    assert np.all(np.diff(result.energies) > 0)


def test_max_count_truncates_the_list():
    result = find_eigenvalues(Potential.harmonic(), (0.0, 6.0), 3, HARMONIC_GRID)
    assert len(result.energies) == 3


def test_hard_wall_grid_must_span_the_well():
    with pytest.raises(ValueError, match="span"):
        find_eigenvalues(
            Potential.infinite_well(1.0), (0.0, 60.0), 64, RealGrid(0.0, 0.9, 2001)
        )


def test_eigenvalue_error_shrinks_at_fourth_order():
    # Halving the spacing must shrink the eigenvalue error ~16x (fourth
    # order); over two halvings the compounded factor far exceeds 30.
    errors = []
    for n in (251, 501, 1001):
        grid = RealGrid(-10.0, 10.0, n)
        result = find_eigenvalues(Potential.harmonic(), (0.0, 1.0), 1, grid)
        errors.append(abs(float(result.energies[0]) - 0.5))
    assert errors[0] / errors[1] > 12.0
    assert errors[1] / errors[2] > 12.0
    assert errors[0] / errors[2] > 30.0


# ---------------------------------------------------------------------------
# solution pairs


def test_free_pair_is_cosine_and_sine():
    grid = RealGrid(0.0, 10.0, 4001)
    pair = solution_pair(Potential.free(), 0.5, grid)
    x = grid.points() - 5.0
    assert np.abs(pair.u.values - np.cos(x)).max() < 1e-8
    assert np.abs(pair.v.values - np.sin(x)).max() < 1e-8
    assert pair.wronskian == pytest.approx(1.0, abs=1e-12)


def test_free_pair_scaling_for_other_wavenumbers():
    # With the Wronskian pinned to hbar the pair is sqrt(hbar/k) cos/sin.
    grid = RealGrid(0.0, 10.0, 4001)
    k = 2.0
    pair = solution_pair(Potential.free(), 0.5 * k * k, grid)
    x = grid.points() - 5.0
    amp = math.sqrt(1.0 / k)
    assert np.abs(pair.u.values - amp * np.cos(k * x)).max() < 1e-7
    assert np.abs(pair.v.values - amp * np.sin(k * x)).max() < 1e-7


def test_pair_wronskian_profile_is_flat():
    grid = RealGrid(-4.0, 4.0, 4001)
    pot = Potential.harmonic()
    pair = solution_pair(pot, 0.5, grid)
    g = 2.0 * (0.5 - pot.evaluate(grid.points()))
    profile = wronskian_profile(pair.u.values, pair.v.values, g, grid.spacing)
    assert np.abs(profile - 1.0).max() < 1e-8


def test_pair_exists_away_from_the_spectrum():
    grid = RealGrid(-4.0, 4.0, 4001)
    pair = solution_pair(Potential.harmonic(), 0.7, grid)
    assert pair.wronskian == pytest.approx(1.0)


def test_identical_seeds_rejected_as_degenerate():
    grid = RealGrid(0.0, 10.0, 2001)
    h = grid.spacing
    wave = numerov_integrate(Potential.free(), 0.5, grid, seed=(0.0, math.sin(h)))
    with pytest.raises(DegeneratePair):
        pair_from_wavefunctions(wave, wave, Potential.free())


def test_caller_supplied_pair_is_rescaled_to_hbar():
    grid = RealGrid(0.0, 10.0, 4001)
    q = grid.points()
    u = Wavefunction(grid, 3.0 * np.cos(q), 0.5)
    v = Wavefunction(grid, 3.0 * np.sin(q), 0.5)
    pair = pair_from_wavefunctions(u, v, Potential.free())
    assert pair.wronskian == pytest.approx(1.0)
    # 3 cos * 3 sin has Wronskian 9; the common rescale is 1/3.
    assert np.abs(pair.u.values - np.cos(q)).max() < 1e-9


def test_pair_members_must_share_grid_and_energy():
    grid = RealGrid(0.0, 10.0, 2001)
    q = grid.points()
    u = Wavefunction(grid, np.cos(q), 0.5)
    v = Wavefunction(grid, np.sin(q), 0.6)
    with pytest.raises(ValueError, match="share"):
        pair_from_wavefunctions(u, v, Potential.free())


def test_inconsistent_samples_rejected():
    # sin(x) and x are independent but not solutions of one equation, so
    # their Wronskian profile is not constant and must be refused.
    grid = RealGrid(0.5, 10.0, 2001)
    q = grid.points()
    u = Wavefunction(grid, np.sin(q), 0.5)
    v = Wavefunction(grid, q.copy(), 0.5)
    with pytest.raises(DegeneratePair):
        pair_from_wavefunctions(u, v, Potential.free())
