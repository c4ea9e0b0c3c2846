"""Independent reference computations used as test oracles.

Every numeric expectation frozen into the test suite traces back to one of
the helpers here: symbolic differentiation for Schwarzian-derivative
values, 2x2 matrix algebra for fractional-linear composition, closed-form
spectra for the built-in potentials, and brute-force path enumeration for
amplitude networks.  None of these share code with the library under test.
"""

from __future__ import annotations

import math

import numpy as np
import sympy as sp

from qmkit import RealGrid, SampledFunction
from qmkit.saqm import AmplitudeNetwork

_X = sp.Symbol("x")


def schwarzian_expr(f: sp.Expr) -> sp.Expr:
    """Symbolic Schwarzian derivative f'''/f' - (3/2)(f''/f')^2."""
    d1 = sp.diff(f, _X)
    d2 = sp.diff(f, _X, 2)
    d3 = sp.diff(f, _X, 3)
    return sp.simplify(d3 / d1 - sp.Rational(3, 2) * (d2 / d1) ** 2)


def sampled_with_exact_derivatives(f: sp.Expr, grid: RealGrid) -> SampledFunction:
    """Sample a sympy expression and its first three derivatives on a grid."""
    funcs = [sp.lambdify(_X, sp.diff(f, _X, order), "numpy") for order in range(4)]
    q = grid.points()
    # Constant derivatives lambdify to scalars; broadcast them to the grid.
    vals = [
        np.broadcast_to(np.asarray(fn(q), dtype=complex), q.shape).copy()
        for fn in funcs
    ]
    if all(np.abs(v.imag).max() == 0.0 for v in vals):
        vals = [v.real for v in vals]
    return SampledFunction(grid, vals[0], (vals[1], vals[2], vals[3]))


def schwarzian_samples(f: sp.Expr, grid: RealGrid) -> np.ndarray:
    """Numerical samples of the symbolic Schwarzian on a grid."""
    s = schwarzian_expr(f)
    return np.asarray(sp.lambdify(_X, s, "numpy")(grid.points()), dtype=complex)


def compose_moebius_coefficients(
    outer: tuple[complex, complex, complex, complex],
    inner: tuple[complex, complex, complex, complex],
) -> tuple[complex, complex, complex, complex]:
    """Coefficients of the composed map via 2x2 matrix multiplication."""
    m1 = np.array([[outer[0], outer[1]], [outer[2], outer[3]]], dtype=complex)
    m2 = np.array([[inner[0], inner[1]], [inner[2], inner[3]]], dtype=complex)
    prod = m1 @ m2
    return (prod[0, 0], prod[0, 1], prod[1, 0], prod[1, 1])


def harmonic_level(n: int, hbar: float = 1.0, omega: float = 1.0) -> float:
    """Closed-form oscillator level (n + 1/2) * hbar * omega."""
    return (n + 0.5) * hbar * omega


def well_level(n: int, length: float = 1.0, hbar: float = 1.0,
               mass: float = 1.0) -> float:
    """Closed-form hard-wall level n^2 pi^2 hbar^2 / (2 m L^2), n >= 1."""
    return (n * math.pi * hbar / length) ** 2 / (2.0 * mass)


def path_sum_amplitude(network: AmplitudeNetwork) -> complex:
    """Total amplitude by brute-force enumeration of source->sink paths.

    Sums the product of edge amplitudes over every directed path.  This is
    the defining semantics of series-parallel composition, evaluated here
    without any reduction machinery, so it can referee the reducer.
    """
    outgoing: dict = {}
    for tail, head, amplitude in network.edges:
        outgoing.setdefault(tail, []).append((head, amplitude))

    def walk(node, carried: complex) -> complex:
        if node == network.sink:
            return carried
        return sum(
            (walk(head, carried * amp) for head, amp in outgoing.get(node, [])),
            start=complex(0.0),
        )

    return walk(network.source, complex(1.0))
