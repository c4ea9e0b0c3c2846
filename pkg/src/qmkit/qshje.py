"""Reduced action, quantum potential and trajectories on a grid.

Given two independent real solutions u, v of the stationary wave equation
with Wronskian W = u v' - v u', the reduced action is reconstructed as

    S0 = hbar * arctan(v / u)    (continuously unwrapped),
    S0' = hbar * W / (u^2 + v^2) (exact, no differencing),

so that exp(2 i S0 / hbar) equals the ratio of the two conjugate complex
combinations of the pair.  The conjugate momentum S0' never vanishes: it
is bounded below by hbar |W| / max(u^2 + v^2).  The quantum potential

    Q = (hbar^2 / 4 m) {S0, q}

turns the stationary Hamilton-Jacobi identity

    (S0')^2 / 2m + V - E + Q = 0

into a pointwise residual check, and trajectory time is recovered from
the energy derivative t = dS0/dE taken by central differences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NonMonotoneTime
from .grids import RealGrid, SampledFunction
from .schrodinger1d import Potential, SolutionPair, Wavefunction, solution_pair

__all__ = [
    "ReducedAction",
    "ScanRow",
    "Trajectory",
    "bipolar_reconstruct",
    "classical_limit_scan",
    "floyd_trajectory",
    "qshje_residual",
    "quantum_potential",
    "reduced_action_from_pair",
    "suggest_trajectory_grid",
    "write_residual_csv",
    "write_trajectory_csv",
]


@dataclass(frozen=True)
class ReducedAction:
    """Reduced action samples with the exact conjugate momentum S0'."""

    grid: RealGrid
    S0: np.ndarray
    S0_prime: np.ndarray
    energy: float
    hbar: float
    mass: float

    def __post_init__(self):
        S0 = np.asarray(self.S0, dtype=float)
        S0p = np.asarray(self.S0_prime, dtype=float)
        object.__setattr__(self, "S0", S0)
        object.__setattr__(self, "S0_prime", S0p)
        n = self.grid.n_points
        if len(S0) != n or len(S0p) != n:
            raise ValueError("samples must match the grid")
        if np.any(S0p == 0.0):
            raise ValueError("S0_prime must never vanish")
        if self.hbar <= 0 or self.mass <= 0:
            raise ValueError("hbar and mass must be positive")


@dataclass(frozen=True)
class Trajectory:
    """Time-parametrized motion samples (t, q, p) with strictly rising t."""

    t: np.ndarray
    q: np.ndarray
    p: np.ndarray
    energy: float

    def __post_init__(self):
        t = np.asarray(self.t, dtype=float)
        q = np.asarray(self.q, dtype=float)
        p = np.asarray(self.p, dtype=float)
        for name, arr in (("t", t), ("q", q), ("p", p)):
            object.__setattr__(self, name, arr)
        if not (len(t) == len(q) == len(p)):
            raise ValueError("t, q, p must have matching lengths")
        if np.any(np.diff(t) <= 0.0):
            raise NonMonotoneTime("trajectory time must be strictly increasing")


@dataclass(frozen=True)
class ScanRow:
    """Per-hbar summary produced by the semiclassical scan."""

    hbar: float
    sup_abs_quantum_potential: float
    momentum_deviation: float
    min_abs_momentum: float


def reduced_action_from_pair(
    pair: SolutionPair, *, hbar: float, mass: float
) -> ReducedAction:
    """Reconstruct the reduced action from a solution pair.

    The phase arctan(v/u) is unwrapped into a continuous branch, oriented
    so that a positive Wronskian gives S0' > 0, and S0' is evaluated in
    closed form from the Wronskian rather than by differencing S0.
    """
    u = pair.u.values
    v = pair.v.values
    envelope = u * u + v * v
    if envelope.min() <= 0.0:
        raise ValueError("u and v vanish together; not an independent pair")
    phase = np.unwrap(np.arctan2(v, u))
    return ReducedAction(
        grid=pair.u.grid,
        S0=hbar * phase,
        S0_prime=hbar * pair.wronskian / envelope,
        energy=pair.u.energy,
        hbar=hbar,
        mass=mass,
    )


def quantum_potential(action: ReducedAction) -> SampledFunction:
    """Q = (hbar^2 / 4 m) {S0, q} from the exact S0' samples.

    The second and third derivatives of S0 come from centered differences
    of S0', so the result loses one point at each grid edge.
    """
    h = action.grid.spacing
    p = action.S0_prime
    d2 = (p[2:] - p[:-2]) / (2.0 * h)
    d3 = (p[2:] - 2.0 * p[1:-1] + p[:-2]) / (h * h)
    core = p[1:-1]
    braces = d3 / core - 1.5 * (d2 / core) ** 2
    factor = action.hbar**2 / (4.0 * action.mass)
    return SampledFunction(action.grid.interior(1), factor * braces)


def _central_slice(n: int, fraction: float = 0.05) -> slice:
    trim = int(math.floor(fraction * n))
    return slice(trim, n - trim)


def qshje_residual(action: ReducedAction, potential: Potential) -> float:
    """Sup-norm defect of the stationary Hamilton-Jacobi identity.

    Evaluates |(S0')^2 / 2m + V - E + Q| on the central 90% of the grid
    (the outer 5% per side is excluded, where one-sided seeding and
    stencil truncation dominate).
    """
    q_pot = quantum_potential(action)
    qs = q_pot.grid.points()
    p = action.S0_prime[1:-1]
    kinetic = p * p / (2.0 * action.mass)
    values = kinetic + potential.evaluate(qs) - action.energy + q_pot.values
    window = _central_slice(action.grid.n_points)
    # Map the 90% window of the full grid onto the trimmed interior.
    lo = max(window.start - 1, 0)
    hi = min(window.stop - 1, len(values))
    return float(np.abs(values[lo:hi]).max())


def bipolar_reconstruct(action: ReducedAction, A: complex, B: complex) -> Wavefunction:
    """Assemble (S0')^(-1/2) (A e^{i S0/hbar} + B e^{-i S0/hbar}).

    With the Wronskian convention W = hbar, the choices (A, B) = (1/2, 1/2)
    and (1/(2i), -1/(2i)) reproduce the original pair members up to one
    global scale.  Returns complex samples on the action's grid.
    """
    if A == 0 and B == 0:
        raise ValueError("A and B must not both vanish")
    phase = action.S0 / action.hbar
    amplitude = np.abs(action.S0_prime) ** -0.5
    values = amplitude * (A * np.exp(1j * phase) + B * np.exp(-1j * phase))
    return Wavefunction(action.grid, values, action.energy)


def floyd_trajectory(
    potential: Potential,
    energy: float,
    grid: RealGrid,
    dE: float | None = None,
    anchor: float | None = None,
) -> Trajectory:
    """Trajectory time from the energy derivative of the reduced action.

    Builds solution pairs at E - dE, E, E + dE with matched anchoring and
    Wronskian convention, takes t(q) = dS0/dE by central differences
    (default step 1e-6 * max(|E|, 1)), shifts t to start at zero and pairs
    it with the exact momentum at E.  The outer 5% of points per side is
    excluded; non-monotone time on the remaining window raises
    NonMonotoneTime rather than being silently repaired.
    """
    if dE is None:
        dE = 1e-6 * max(abs(energy), 1.0)
    if dE <= 0.0:
        raise ValueError("dE must be positive")
    hbar, mass = potential.hbar, potential.mass

    actions = {}
    for offset in (-dE, 0.0, +dE):
        pair = solution_pair(potential, energy + offset, grid, anchor=anchor)
        actions[offset] = reduced_action_from_pair(pair, hbar=hbar, mass=mass)

    t = (actions[+dE].S0 - actions[-dE].S0) / (2.0 * dE)
    window = _central_slice(grid.n_points)
    t = t[window]
    q = grid.points()[window]
    p = actions[0.0].S0_prime[window]
    return Trajectory(t - t[0], q, p, energy)


# ---------------------------------------------------------------------------
# semiclassical scan


def _scan_grid(potential: Potential, energy: float, hbar: float, mass: float,
               *, budget: float = 3.0,
               min_points: int = 4001) -> tuple[RealGrid, float, float]:
    """Domain and resolution adapted to one energy and hbar value.

    The domain covers the classically allowed interval plus forbidden tails
    holding `budget` units of WKB action; the spacing resolves the local
    oscillation length.  Returns the grid and the turning points
    (allowed-interval ends).  The pair is marched outward from the anchor,
    so tail depth never sharpens interior values -- it only amplifies the
    growing solution by e^(2*budget) and with it the roundoff in both
    solutions, which is why the default keeps the tails shallow.
    """
    if potential.hard_wall:
        grid = RealGrid(0.0, potential.length, min_points)
        return grid, 0.0, potential.length

    if potential.kind == "tabulated":
        box_lo, box_hi = float(potential.table_q[0]), float(potential.table_q[-1])
        probe = np.linspace(box_lo, box_hi, 16001)
        w = potential.evaluate(probe) - energy
        if w[0] <= 0.0 or w[-1] <= 0.0:
            grid = RealGrid(box_lo, box_hi, min_points)
            return grid, box_lo, box_hi
    else:
        for candidate in (4.0, 8.0, 16.0, 32.0, 64.0):
            probe = np.linspace(-candidate, candidate, 8001)
            w = potential.evaluate(probe) - energy
            if w[0] > 0.0 and w[-1] > 0.0:
                box_lo, box_hi = -candidate, candidate
                break
        else:
            # Not confining on any probe box (free-like): fixed window.
            grid = RealGrid(-4.0, 4.0, min_points)
            return grid, -4.0, 4.0
        probe = np.linspace(box_lo, box_hi, 16001)
        w = potential.evaluate(probe) - energy

    allowed = np.nonzero(w < 0.0)[0]
    if len(allowed) == 0:
        raise ValueError("energy lies below the potential minimum")
    q_lo_t, q_hi_t = probe[allowed[0]], probe[allowed[-1]]

    kappa = np.sqrt(2.0 * mass * np.clip(w, 0.0, None)) / hbar
    dq = probe[1] - probe[0]

    def padded(start_index: int, step: int) -> float:
        total = 0.0
        i = start_index
        while 0 < i < len(probe) - 1:
            total += 0.5 * (kappa[i] + kappa[i + step]) * dq
            i += step
            if total >= budget:
                break
        return probe[i]

    q_hi = padded(allowed[-1], +1)
    q_lo = padded(allowed[0], -1)

    p_max = math.sqrt(2.0 * mass * float(-w.min()))
    wavelength = 2.0 * math.pi * hbar / p_max
    spacing = wavelength / 80.0
    n = int(math.ceil((q_hi - q_lo) / spacing)) + 1
    n = min(max(n, min_points), 400001)
    return RealGrid(float(q_lo), float(q_hi), n), float(q_lo_t), float(q_hi_t)


def suggest_trajectory_grid(potential: Potential, energy: float) -> RealGrid:
    """Domain suited to action and trajectory work at one energy.

    Covers the classically allowed interval plus short forbidden-tail
    pads, finely sampled.  Long tails are deliberately excluded: time
    increments decay exponentially there and drop below double-precision
    resolution, which poisons the strict monotonicity of the time column,
    and the growing solution branch loses the decaying one to roundoff.
    """
    grid, _, _ = _scan_grid(
        potential, energy, potential.hbar, potential.mass,
        budget=3.0, min_points=40001,
    )
    return grid


def classical_limit_scan(
    potential: Potential,
    energy: float,
    hbar_sequence,
    anchor: float | None = None,
) -> list[ScanRow]:
    """Track the quantum potential as hbar shrinks at fixed energy.

    For each hbar the pair, action and quantum potential are rebuilt on a
    domain adapted to that hbar, and the scan reports sup|Q|, the gap
    between |S0'| and the classical momentum and min|S0'| over the central
    80% of the classically allowed interval.  The report is descriptive:
    callers assert the trends they need.
    """
    rows = []
    for hb in hbar_sequence:
        scaled = Potential(
            kind=potential.kind,
            hbar=float(hb),
            mass=potential.mass,
            omega=potential.omega,
            length=potential.length,
            slope=potential.slope,
            table_q=potential.table_q,
            table_v=potential.table_v,
        )
        grid, q_lo_t, q_hi_t = _scan_grid(scaled, energy, float(hb), scaled.mass)
        pair = solution_pair(scaled, energy, grid, anchor=anchor)
        action = reduced_action_from_pair(pair, hbar=float(hb), mass=scaled.mass)
        q_pot = quantum_potential(action)

        width = q_hi_t - q_lo_t
        lo, hi = q_lo_t + 0.1 * width, q_hi_t - 0.1 * width
        qs = q_pot.grid.points()
        inside = (qs >= lo) & (qs <= hi)
        sup_q = float(np.abs(q_pot.values[inside]).max())

        qs_full = grid.points()
        inside_full = (qs_full >= lo) & (qs_full <= hi)
        p = action.S0_prime[inside_full]
        p_classical = np.sqrt(
            2.0 * scaled.mass * (energy - potential.evaluate(qs_full[inside_full]))
        )
        deviation = float(
            np.minimum(np.abs(p - p_classical), np.abs(p + p_classical)).max()
        )
        rows.append(
            ScanRow(
                hbar=float(hb),
                sup_abs_quantum_potential=sup_q,
                momentum_deviation=deviation,
                min_abs_momentum=float(np.abs(p).min()),
            )
        )
    return rows


# ---------------------------------------------------------------------------
# exports


def _open_for_write(target):
    if isinstance(target, (str, Path)):
        return open(target, "w", newline=""), True
    return target, False


def write_trajectory_csv(trajectory: Trajectory, target) -> None:
    """Write a trajectory as CSV with columns t, q, p (17 significant digits)."""
    handle, owned = _open_for_write(target)
    try:
        handle.write("t,q,p\n")
        for t, q, p in zip(trajectory.t, trajectory.q, trajectory.p):
            handle.write(f"{t:.17g},{q:.17g},{p:.17g}\n")
    finally:
        if owned:
            handle.close()


def write_residual_csv(action: ReducedAction, potential: Potential, target) -> None:
    """Write columns q, S0, p, Q, residual on the quantum potential's domain."""
    q_pot = quantum_potential(action)
    qs = q_pot.grid.points()
    p = action.S0_prime[1:-1]
    s0 = action.S0[1:-1]
    residual = (
        p * p / (2.0 * action.mass)
        + potential.evaluate(qs)
        - action.energy
        + q_pot.values
    )
    handle, owned = _open_for_write(target)
    try:
        handle.write("q,S0,p,Q,residual\n")
        for row in zip(qs, s0, p, q_pot.values, residual):
            handle.write(",".join(f"{x:.17g}" for x in row) + "\n")
    finally:
        if owned:
            handle.close()
