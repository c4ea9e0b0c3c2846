"""Stationary one-dimensional wave equation on a uniform grid.

The second-order equation psi'' = -g(q) psi with g = 2 m (E - V)/hbar^2 is
integrated by the Numerov three-term recurrence (sixth-order local error).
Bound states of confining potentials are located by shooting: decaying
solutions are propagated inward from both edges, their logarithmic
derivatives are compared at the rightmost classical turning point, and the
energy is refined by node-count bracketing followed by bisection on that
mismatch.  The module also builds the canonical two-solution pairs that
the reduced-action reconstruction downstream consumes.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DegeneratePair, NoEigenvalueInRange, Overflow
from .grids import RealGrid

__all__ = [
    "EigenResult",
    "Potential",
    "SolutionPair",
    "Wavefunction",
    "find_eigenvalues",
    "load_potential_table",
    "numerov_integrate",
    "pair_from_wavefunctions",
    "shoot_mismatch",
    "solution_pair",
    "wronskian_profile",
]

#: Seed magnitude for decaying-tail starts.
_TAIL_SEED = 1e-30

#: Rolling renormalization threshold for shooting marches.
_RENORM_AT = 1e100

#: Hard ceiling for raw integration output.
_OVERFLOW_AT = 1e250

#: Ceiling for solution-pair marches (their squares must stay representable).
_PAIR_OVERFLOW_AT = 1e140

#: Eigenvalue bisection stops below this absolute width.
_BISECT_TOL = 1e-12

#: Eigenvalue bisection iteration cap.
_BISECT_MAX_ITER = 60


# ---------------------------------------------------------------------------
# potentials


@dataclass(frozen=True)
class Potential:
    """A one-dimensional potential plus the constants hbar and mass.

    ``kind`` selects the shape: "harmonic" (0.5 m omega^2 q^2),
    "infinite_well" (V = 0 on [0, length] with hard walls), "linear"
    (slope * q), "free" (V = 0, not confining) or "tabulated" (linear
    interpolation of a strictly increasing sample table).
    """

    kind: str
    hbar: float = 1.0
    mass: float = 1.0
    omega: float = 1.0
    length: float = 1.0
    slope: float = 1.0
    table_q: np.ndarray | None = None
    table_v: np.ndarray | None = None

    _KINDS = ("harmonic", "infinite_well", "linear", "free", "tabulated")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown potential kind {self.kind!r}")
        if self.hbar <= 0 or self.mass <= 0:
            raise ValueError("hbar and mass must be positive")
        if self.kind == "infinite_well" and self.length <= 0:
            raise ValueError("well length must be positive")

    # -- constructors ------------------------------------------------------

    @classmethod
    def harmonic(cls, mass: float = 1.0, omega: float = 1.0, hbar: float = 1.0):
        return cls(kind="harmonic", hbar=hbar, mass=mass, omega=omega)

    @classmethod
    def infinite_well(cls, length: float = 1.0, mass: float = 1.0, hbar: float = 1.0):
        return cls(kind="infinite_well", hbar=hbar, mass=mass, length=length)

    @classmethod
    def linear(cls, slope: float = 1.0, mass: float = 1.0, hbar: float = 1.0):
        return cls(kind="linear", hbar=hbar, mass=mass, slope=slope)

    @classmethod
    def free(cls, mass: float = 1.0, hbar: float = 1.0):
        return cls(kind="free", hbar=hbar, mass=mass)

    @classmethod
    def tabulated(cls, q, v, mass: float = 1.0, hbar: float = 1.0):
        q = np.asarray(q, dtype=float)
        v = np.asarray(v, dtype=float)
        if q.ndim != 1 or q.shape != v.shape or len(q) < 2:
            raise ValueError("tabulated potential needs two matching 1-d columns")
        if not np.all(np.diff(q) > 0):
            raise ValueError("tabulated sample points must be strictly increasing")
        return cls(kind="tabulated", hbar=hbar, mass=mass, table_q=q, table_v=v)

    # -- behavior ----------------------------------------------------------

    @property
    def hard_wall(self) -> bool:
        return self.kind == "infinite_well"

    def evaluate(self, q: np.ndarray) -> np.ndarray:
        q = np.asarray(q, dtype=float)
        if self.kind == "harmonic":
            return 0.5 * self.mass * self.omega**2 * q * q
        if self.kind == "linear":
            return self.slope * q
        if self.kind in ("free", "infinite_well"):
            return np.zeros_like(q)
        pad = 1e-9 * (self.table_q[-1] - self.table_q[0])
        if q.min() < self.table_q[0] - pad or q.max() > self.table_q[-1] + pad:
            raise ValueError("grid leaves the tabulated potential's range")
        return np.interp(q, self.table_q, self.table_v)

    def default_grid(self) -> RealGrid:
        if self.kind == "infinite_well":
            return RealGrid(0.0, self.length, 2001)
        if self.kind == "tabulated":
            return RealGrid(float(self.table_q[0]), float(self.table_q[-1]), 4001)
        return RealGrid(-10.0, 10.0, 4001)


def load_potential_table(
    path: str | Path, mass: float = 1.0, hbar: float = 1.0
) -> Potential:
    """Read a two-column CSV of (q, V) samples into a tabulated potential.

    A single non-numeric header row is tolerated; sample points must be
    strictly increasing.
    """
    qs: list[float] = []
    vs: list[float] = []
    with open(path, newline="") as handle:
        for row_number, row in enumerate(csv.reader(handle)):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) < 2:
                raise ValueError(f"row {row_number + 1}: expected two columns")
            try:
                q, v = float(row[0]), float(row[1])
            except ValueError:
                if row_number == 0:
                    continue  # header
                raise ValueError(f"row {row_number + 1}: non-numeric entry") from None
            qs.append(q)
            vs.append(v)
    return Potential.tabulated(qs, vs, mass=mass, hbar=hbar)


# ---------------------------------------------------------------------------
# wavefunctions and pairs


@dataclass(frozen=True)
class Wavefunction:
    """Samples of one solution at a fixed energy."""

    grid: RealGrid
    values: np.ndarray
    energy: float

    def __post_init__(self):
        values = np.asarray(self.values)
        object.__setattr__(self, "values", values)
        if values.ndim != 1 or len(values) != self.grid.n_points:
            raise ValueError("values must be a 1-d array matching the grid")
        if not np.any(values != 0.0):
            raise ValueError("wavefunction must not vanish identically")


@dataclass(frozen=True)
class SolutionPair:
    """Two linearly independent real solutions with Wronskian u v' - v u'.

    Pairs produced by :func:`solution_pair` are rescaled so the Wronskian
    equals hbar, which pins the overall normalization of the reduced
    action built from them.
    """

    u: Wavefunction
    v: Wavefunction
    wronskian: float

    def __post_init__(self):
        if self.u.grid != self.v.grid:
            raise ValueError("pair members must share one grid")
        if self.u.energy != self.v.energy:
            raise ValueError("pair members must share one energy")
        if self.wronskian == 0.0:
            raise DegeneratePair("pair has vanishing Wronskian")


@dataclass(frozen=True)
class EigenResult:
    """Bound-state energies with node counts and normalized eigenfunctions."""

    energies: np.ndarray
    node_counts: tuple[int, ...]
    wavefunctions: tuple[Wavefunction, ...]

    def __post_init__(self):
        energies = np.asarray(self.energies, dtype=float)
        object.__setattr__(self, "energies", energies)
        if not (len(energies) == len(self.node_counts) == len(self.wavefunctions)):
            raise ValueError("result fields must have matching lengths")
        if len(energies) and np.any(np.diff(energies) <= 0):
            raise ValueError("energies must be strictly increasing")


# ---------------------------------------------------------------------------
# Numerov marches (plain-float loops: the recurrence cannot be vectorized)


def _coefficients(potential: Potential, energy: float, grid: RealGrid) -> np.ndarray:
    """Numerov coefficients c_i = 1 + h^2 g_i / 12 on the grid."""
    q = grid.points()
    g = 2.0 * potential.mass * (energy - potential.evaluate(q)) / potential.hbar**2
    return 1.0 + (grid.spacing**2 / 12.0) * g


def _march_full(c: np.ndarray, y0: float, y1: float, allow_renorm: bool,
                cap: float = _OVERFLOW_AT) -> np.ndarray:
    """Full Numerov sweep; whole-array renormalization keeps one solution."""
    coeff = c.tolist()
    out = [y0, y1]
    prev, cur = y0, y1
    cp, cc = coeff[0], coeff[1]
    for i in range(2, len(coeff)):
        cn = coeff[i]
        nxt = ((12.0 - 10.0 * cc) * cur - cp * prev) / cn
        out.append(nxt)
        prev, cur = cur, nxt
        cp, cc = cc, cn
        if abs(nxt) > cap:
            if not allow_renorm:
                raise Overflow(
                    "integration exceeded the representable range; "
                    "renormalize or shrink the domain"
                )
            scale = 1.0 / abs(nxt)
            out = [value * scale for value in out]
            prev *= scale
            cur *= scale
    return np.asarray(out)


def _march_nodes(c: np.ndarray, y0: float, y1: float) -> int:
    """Count strict sign changes along a sweep (log-derivative safe)."""
    coeff = c.tolist()
    nodes = 0
    prev, cur = y0, y1
    cp, cc = coeff[0], coeff[1]
    for i in range(2, len(coeff)):
        cn = coeff[i]
        nxt = ((12.0 - 10.0 * cc) * cur - cp * prev) / cn
        if cur * nxt < 0.0:
            nodes += 1
        prev, cur = cur, nxt
        cp, cc = cc, cn
        if abs(nxt) > _RENORM_AT:
            scale = 1.0 / abs(nxt)
            prev *= scale
            cur *= scale
    return nodes


def _march_tail3(c: np.ndarray, y0: float, y1: float) -> tuple[float, float, float]:
    """Sweep and return the last three values (renormalization-consistent)."""
    coeff = c.tolist()
    older, prev, cur = 0.0, y0, y1
    cp, cc = coeff[0], coeff[1]
    for i in range(2, len(coeff)):
        cn = coeff[i]
        nxt = ((12.0 - 10.0 * cc) * cur - cp * prev) / cn
        older, prev, cur = prev, cur, nxt
        cp, cc = cc, cn
        if abs(nxt) > _RENORM_AT:
            scale = 1.0 / abs(nxt)
            older *= scale
            prev *= scale
            cur *= scale
    return older, prev, cur


def numerov_integrate(
    potential: Potential,
    energy: float,
    grid: RealGrid,
    direction: str = "left-to-right",
    seed: tuple[float, float] = (0.0, 1e-6),
) -> Wavefunction:
    """Integrate psi'' = -g psi across the grid from a two-value seed.

    ``seed`` holds psi at the first two points along the sweep direction
    ("left-to-right" or "right-to-left").  Raises Overflow when the
    solution leaves the representable range; the caller must then
    renormalize or shrink the domain.
    """
    if direction not in ("left-to-right", "right-to-left"):
        raise ValueError("direction must be 'left-to-right' or 'right-to-left'")
    c = _coefficients(potential, energy, grid)
    if direction == "right-to-left":
        values = _march_full(c[::-1], seed[0], seed[1], allow_renorm=False)[::-1]
    else:
        values = _march_full(c, seed[0], seed[1], allow_renorm=False)
    return Wavefunction(grid, values, energy)


# ---------------------------------------------------------------------------
# shooting


def _decay_seed(potential: Potential, energy: float, grid: RealGrid,
                left: bool) -> tuple[float, float]:
    """Two starting values of the solution decaying into a forbidden edge."""
    if potential.hard_wall:
        return 0.0, 1e-6
    edge = grid.q_min if left else grid.q_max
    v_edge = float(potential.evaluate(np.array([edge]))[0])
    gap = v_edge - energy
    if gap <= 0.0:
        raise ValueError(
            "energy is not classically forbidden at the grid edge; "
            "the decaying seed is undefined"
        )
    kappa = math.sqrt(2.0 * potential.mass * gap) / potential.hbar
    return _TAIL_SEED, _TAIL_SEED * math.exp(kappa * grid.spacing)


def _matching_index(potential: Potential, energy: float, grid: RealGrid) -> int:
    """Rightmost classical turning point's index; grid midpoint if none."""
    w = potential.evaluate(grid.points()) - energy
    crossings = np.nonzero(w[:-1] * w[1:] <= 0.0)[0]
    index = int(crossings[-1]) if len(crossings) else grid.n_points // 2
    return min(max(index, 2), grid.n_points - 3)


def shoot_mismatch(potential: Potential, energy: float, grid: RealGrid) -> float:
    """Logarithmic-derivative mismatch of edge-decaying solutions.

    Decaying solutions are propagated inward from both edges and their
    logarithmic derivatives compared at the rightmost classical turning
    point (grid midpoint when no turning point exists).  The mismatch is a
    strictly decreasing function of energy between its poles and crosses
    zero exactly at the bound-state energies.
    """
    c = _coefficients(potential, energy, grid)
    h = grid.spacing
    im = _matching_index(potential, energy, grid)

    l0, l1 = _decay_seed(potential, energy, grid, left=True)
    below, at, above = _march_tail3(c[: im + 2], l0, l1)
    at = at if at != 0.0 else 1e-300
    ld_left = (above - below) / (2.0 * h * at)

    r0, r1 = _decay_seed(potential, energy, grid, left=False)
    above_r, at_r, below_r = _march_tail3(c[im - 1 :][::-1], r0, r1)
    at_r = at_r if at_r != 0.0 else 1e-300
    ld_right = (above_r - below_r) / (2.0 * h * at_r)

    return ld_left - ld_right


def _node_count(potential: Potential, energy: float, grid: RealGrid) -> int:
    c = _coefficients(potential, energy, grid)
    y0, y1 = _decay_seed(potential, energy, grid, left=True)
    return _march_nodes(c, y0, y1)


def _assemble_eigenfunction(
    potential: Potential, energy: float, grid: RealGrid
) -> tuple[Wavefunction, int]:
    """Glue the left and right decaying solutions at the matching point."""
    c = _coefficients(potential, energy, grid)
    h = grid.spacing
    im = _matching_index(potential, energy, grid)

    l0, l1 = _decay_seed(potential, energy, grid, left=True)
    left = _march_full(c[: im + 2], l0, l1, allow_renorm=True)
    r0, r1 = _decay_seed(potential, energy, grid, left=False)
    right = _march_full(c[im - 1 :][::-1], r0, r1, allow_renorm=True)[::-1]

    # The two marches overlap on indices im-1..im+1.  A node of the true
    # eigenfunction can sit on any one grid point, leaving roundoff-level
    # samples with meaningless signs, so anchor the splice at the overlap
    # sample where both marches stand farthest from zero.
    overlap = [(min(abs(left[im - 1 + j]), abs(right[j])), j) for j in range(3)]
    _, j_best = max(overlap)
    anchor_left, anchor_right = left[im - 1 + j_best], right[j_best]
    if anchor_right == 0.0:
        raise DegeneratePair("matching point collapsed to zero on both sides")
    scale = anchor_left / anchor_right
    values = np.concatenate([left[:im], right[1:] * scale])

    norm = math.sqrt(float(np.trapezoid(values * values, dx=h)))
    values = values / norm
    if values[int(np.argmax(np.abs(values)))] < 0.0:
        values = -values
    # A node can land exactly on a grid point, leaving a roundoff-level
    # sample whose sign is noise; count sign changes over the samples that
    # stand clear of that noise so such a node is seen once, not twice.
    clear = values[np.abs(values) > 1e-9 * float(np.abs(values).max())]
    nodes = int(np.count_nonzero(clear[:-1] * clear[1:] < 0.0))
    return Wavefunction(grid, values, energy), nodes


def find_eigenvalues(
    potential: Potential,
    e_range: tuple[float, float],
    max_count: int,
    grid: RealGrid | None = None,
) -> EigenResult:
    """Bound states of a confining (or hard-wall) potential in an energy window.

    Levels are isolated by node-count bracketing and polished by bisection
    on the shooting mismatch (terminating below 1e-12 absolute width or at
    60 iterations).  For soft potentials only energies that remain
    classically forbidden at both grid edges are searchable; a window with
    no such level raises NoEigenvalueInRange.
    """
    if grid is None:
        grid = potential.default_grid()
    if potential.hard_wall:
        span_ok = abs(grid.q_min) < 1e-9 and abs(grid.q_max - potential.length) < 1e-9
        if not span_ok:
            raise ValueError("hard-wall grids must span exactly [0, length]")
    e_lo, e_hi = float(e_range[0]), float(e_range[1])
    if not e_lo < e_hi:
        raise ValueError("energy range must satisfy lo < hi")
    if max_count < 1:
        raise ValueError("max_count must be at least 1")

    search_hi = e_hi
    if not potential.hard_wall:
        edges = potential.evaluate(np.array([grid.q_min, grid.q_max]))
        ceiling = float(edges.min())
        search_hi = min(e_hi, ceiling - 1e-9 * max(1.0, abs(ceiling)))
        if search_hi <= e_lo:
            raise NoEigenvalueInRange(
                "no energy in the window is confined on this grid"
            )

    nodes_lo = _node_count(potential, e_lo, grid)
    nodes_hi = _node_count(potential, search_hi, grid)
    if nodes_hi <= nodes_lo:
        raise NoEigenvalueInRange("no node-count step inside the energy window")

    scale = max(1.0, abs(e_lo), abs(search_hi))
    coarse_tol = 1e-6 * scale

    energies: list[float] = []
    functions: list[Wavefunction] = []
    node_counts: list[int] = []
    floor = e_lo
    for k in range(nodes_lo, nodes_hi):
        if len(energies) >= max_count:
            break
        lo, hi = floor, search_hi
        while hi - lo > coarse_tol:
            mid = 0.5 * (lo + hi)
            if _node_count(potential, mid, grid) >= k + 1:
                hi = mid
            else:
                lo = mid

        f_lo = shoot_mismatch(potential, lo, grid)
        f_hi = shoot_mismatch(potential, hi, grid)
        if math.isfinite(f_lo) and math.isfinite(f_hi) and (f_lo > 0.0 > f_hi):
            for _ in range(_BISECT_MAX_ITER):
                if hi - lo < _BISECT_TOL:
                    break
                mid = 0.5 * (lo + hi)
                if shoot_mismatch(potential, mid, grid) > 0.0:
                    lo = mid
                else:
                    hi = mid
        else:
            # A pole sits in the bracket; keep splitting on node count.
            while hi - lo > _BISECT_TOL:
                mid = 0.5 * (lo + hi)
                if _node_count(potential, mid, grid) >= k + 1:
                    hi = mid
                else:
                    lo = mid
        level = 0.5 * (lo + hi)
        psi, nodes = _assemble_eigenfunction(potential, level, grid)
        energies.append(level)
        functions.append(psi)
        node_counts.append(nodes)
        floor = hi + coarse_tol

    if not energies:
        raise NoEigenvalueInRange("no bound state found in the energy window")
    return EigenResult(np.array(energies), tuple(node_counts), tuple(functions))


# ---------------------------------------------------------------------------
# canonical solution pairs


def wronskian_profile(
    u: np.ndarray, v: np.ndarray, g: np.ndarray, spacing: float
) -> np.ndarray:
    """Pointwise estimates of the Wronskian u v' - v u' along the grid.

    Uses midpoint product differences at steps h and 2h combined by
    Richardson extrapolation, which is accurate to O(h^6) and therefore
    flat to roundoff for genuine solution pairs even on coarse grids.
    """
    h = spacing
    d_h = u[1:] * v[:-1] - v[1:] * u[:-1]
    gm_h = 0.5 * (g[:-1] + g[1:])
    w_h = -d_h / (h * (1.0 - h * h * gm_h / 6.0))

    d_2h = u[2:] * v[:-2] - v[2:] * u[:-2]
    w_2h = -d_2h / (2.0 * h * (1.0 - 4.0 * h * h * g[1:-1] / 6.0))

    w_h_centered = 0.5 * (w_h[:-1] + w_h[1:])
    return (16.0 * w_h_centered - w_2h) / 15.0


def _g_values(potential: Potential, energy: float, grid: RealGrid) -> np.ndarray:
    q = grid.points()
    return 2.0 * potential.mass * (energy - potential.evaluate(q)) / potential.hbar**2


def _validated_wronskian(
    u: np.ndarray, v: np.ndarray, g: np.ndarray, spacing: float
) -> float:
    profile = wronskian_profile(u, v, g, spacing)
    wbar = float(np.median(profile))
    spread = float(np.abs(profile - wbar).max())
    if wbar == 0.0 or spread > 0.5 * abs(wbar):
        raise DegeneratePair("solutions are (numerically) linearly dependent")
    # The estimator differences nearly parallel products, so its noise
    # floor is eps * |u v| / (h |W|); constancy can only be enforced down
    # to that floor when the pair grows large at non-eigenvalue energies.
    noise_floor = (
        32.0
        * np.finfo(float).eps
        * float(np.abs(u * v).max())
        / (spacing * abs(wbar))
    )
    if spread > max(1e-7, noise_floor) * abs(wbar):
        raise DegeneratePair(
            f"Wronskian varies by {spread / abs(wbar):.2e} relative; "
            "the inputs are not consistent solutions on this grid"
        )
    return wbar


def _taylor_start(g: np.ndarray, h: float, i0: int, value: float,
                  derivative: float) -> tuple[float, float]:
    """Fourth-order series values at q0 +/- h from (psi, psi') at q0."""
    g0 = g[i0]
    g1 = (g[i0 + 1] - g[i0 - 1]) / (2.0 * h)
    g2 = (g[i0 + 1] - 2.0 * g[i0] + g[i0 - 1]) / (h * h)
    d2 = -g0 * value
    d3 = -g1 * value - g0 * derivative
    d4 = -g2 * value - 2.0 * g1 * derivative + g0 * g0 * value
    plus = value + h * derivative + h * h * d2 / 2.0 + h**3 * d3 / 6.0 + h**4 * d4 / 24.0
    minus = value - h * derivative + h * h * d2 / 2.0 - h**3 * d3 / 6.0 + h**4 * d4 / 24.0
    return plus, minus


def _march_both_ways(c: np.ndarray, i0: int, at: float, plus: float,
                     minus: float) -> np.ndarray:
    right = _march_full(c[i0:], at, plus, allow_renorm=False, cap=_PAIR_OVERFLOW_AT)
    left = _march_full(c[: i0 + 1][::-1], at, minus, allow_renorm=False,
                       cap=_PAIR_OVERFLOW_AT)
    return np.concatenate([left[::-1][:-1], right])


def solution_pair(
    potential: Potential,
    energy: float,
    grid: RealGrid,
    anchor: float | None = None,
) -> SolutionPair:
    """Two independent real solutions at one energy, Wronskian scaled to hbar.

    The pair is launched from an interior anchor (grid center by default)
    with cosine-like and sine-like initial data whose slope matches the
    local classical wavenumber.  That choice keeps u^2 + v^2 free of
    spurious beats in the classically allowed region, which is what makes
    the semiclassical limit of the reconstructed action clean.  Any other
    independent pair would satisfy the same stationary identities.
    """
    q = grid.points()
    h = grid.spacing
    g = _g_values(potential, energy, grid)

    if anchor is None:
        i0 = grid.n_points // 2
    else:
        i0 = int(np.argmin(np.abs(q - anchor)))
    i0 = min(max(i0, 2), grid.n_points - 3)

    local = abs(g[i0])
    kappa = max(math.sqrt(local) if local > 0 else 0.0,
                1.0 / (grid.q_max - grid.q_min))

    c = 1.0 + (h * h / 12.0) * g
    u_plus, u_minus = _taylor_start(g, h, i0, 1.0, 0.0)
    v_plus, v_minus = _taylor_start(g, h, i0, 0.0, kappa)
    u = _march_both_ways(c, i0, 1.0, u_plus, u_minus)
    v = _march_both_ways(c, i0, 0.0, v_plus, v_minus)

    wbar = _validated_wronskian(u, v, g, h)
    scale = math.sqrt(potential.hbar / abs(wbar))
    u = u * scale
    v = v * scale * (1.0 if wbar > 0 else -1.0)

    return SolutionPair(
        Wavefunction(grid, u, energy),
        Wavefunction(grid, v, energy),
        potential.hbar,
    )


def pair_from_wavefunctions(
    u: Wavefunction, v: Wavefunction, potential: Potential
) -> SolutionPair:
    """Validate and normalize a caller-supplied pair to Wronskian = hbar.

    Raises DegeneratePair when the two inputs are linearly dependent or
    are not consistent solutions of the same equation on the shared grid.
    """
    if u.grid != v.grid or u.energy != v.energy:
        raise ValueError("pair members must share grid and energy")
    g = _g_values(potential, u.energy, u.grid)
    wbar = _validated_wronskian(u.values, v.values, g, u.grid.spacing)
    scale = math.sqrt(potential.hbar / abs(wbar))
    flip = 1.0 if wbar > 0 else -1.0
    return SolutionPair(
        Wavefunction(u.grid, u.values * scale, u.energy),
        Wavefunction(v.grid, v.values * scale * flip, v.energy),
        potential.hbar,
    )
