"""Adiabatic controlled-phase gate design.

A sin^2 laser pulse drives the qubit |D> towards the lower dressed Rydberg
state while the detuning sweeps from 1.5 Delta_0 down to 0.5 Delta_0 and
back. Integrating the instantaneous light shifts of the doubly-driven
(|DD>, blockaded) and singly-driven (|DE>) manifolds over the pulse gives
the accumulated phases; the entangling phase is their blockade-sensitive
combination phi_DD - 2 phi_DE. Phases follow the positive convention
phi = integral E dt.
"""

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad, solve_ivp
from scipy.optimize import brentq

from .errors import DomainError, NoRoot, SingularDenominator, ValidationError

QUAD_ABS_TOL = 1e-8  # rad, adaptive quadrature target for accumulated phases


def wrap_angle(x):
    """Map an angle to the interval (-pi, pi]."""
    return np.pi - np.mod(np.pi - np.asarray(x), 2.0 * np.pi)


@dataclass(frozen=True)
class PulseShape:
    """sin^2 pulse: peak Rabi omega0, detuning scale delta0, duration tau (us)."""

    omega0: float
    delta0: float
    tau: float

    def __post_init__(self):
        if self.tau <= 0.0:
            raise ValidationError(f"pulse duration must be positive, got {self.tau}")
        if self.omega0 < 0.0:
            raise ValidationError(f"peak Rabi frequency must be >= 0, got {self.omega0}")


@dataclass(frozen=True)
class GateDesign:
    """Accumulated phases and the resulting two-qubit phase rotation.

    blockade in rad/us; phi_dd and phi_de unwrapped; phi_ent in (-pi, pi];
    unitary is the 4x4 diagonal on the basis {EE, DE, ED, DD}.
    """

    blockade: float
    phi_dd: float
    phi_de: float
    phi_ent: float
    unitary: np.ndarray


def pulse_at(t, p: PulseShape):
    """Instantaneous (Omega_-, E_-) of the pulse at time t in [0, tau]."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0.0) or np.any(t_arr > p.tau):
        raise DomainError(f"t must lie in [0, {p.tau}]")
    phase = np.pi * t_arr / p.tau
    omega_minus = p.omega0 * np.sin(phase) ** 2
    e_minus = p.delta0 * (0.5 + np.cos(phase) ** 2)
    return omega_minus, e_minus


def adiabatic_energies(omega_minus, e_minus, blockade):
    """Lower adiabatic light shifts (E_DD, E_DE) of the driven manifolds.

    E_DD = [delta0_eff - sqrt(delta0_eff^2 + 2 Omega^2)] / 2 with
    delta0_eff = E_- - Omega^2 / (4 E_- + 2 B);
    E_DE = [E_- - sqrt(E_-^2 + Omega^2)] / 2.
    Only |Omega_-| enters. Raises SingularDenominator when 4 E_- + 2 B
    vanishes to machine precision.
    """
    om = np.abs(np.asarray(omega_minus, dtype=float))
    e = np.asarray(e_minus, dtype=float)
    denom = 4.0 * e + 2.0 * blockade
    scale = np.maximum(np.abs(4.0 * e) + np.abs(2.0 * blockade), 1.0)
    if np.any(np.abs(denom) <= 1e-12 * scale):
        raise SingularDenominator("4 E_- + 2 B vanished in the blockade light shift")
    delta_eff = e - om**2 / denom
    e_dd = 0.5 * (delta_eff - np.sqrt(delta_eff**2 + 2.0 * om**2))
    e_de = 0.5 * (e - np.sqrt(e**2 + om**2))
    return e_dd, e_de


def gate_unitary(phi_ent: float, phi_de: float) -> np.ndarray:
    """diag(1, e^{i phi_DE}, e^{i phi_DE}, e^{i (phi_ent + 2 phi_DE)})."""
    return np.diag(
        [
            1.0,
            np.exp(1j * phi_de),
            np.exp(1j * phi_de),
            np.exp(1j * (phi_ent + 2.0 * phi_de)),
        ]
    )


def _accumulated_phases(p: PulseShape, blockade: float, quad_tol: float):
    def integrand_dd(t):
        om, e = pulse_at(t, p)
        return adiabatic_energies(om, e, blockade)[0]

    def integrand_de(t):
        om, e = pulse_at(t, p)
        return adiabatic_energies(om, e, blockade)[1]

    phi_dd, _ = quad(integrand_dd, 0.0, p.tau, epsabs=quad_tol, epsrel=1e-12, limit=400)
    phi_de, _ = quad(integrand_de, 0.0, p.tau, epsabs=quad_tol, epsrel=1e-12, limit=400)
    return phi_dd, phi_de


def entangling_phase(p: PulseShape, blockade: float,
                     quad_tol: float = QUAD_ABS_TOL) -> GateDesign:
    """Integrate the adiabatic energies over the pulse and assemble the gate."""
    phi_dd, phi_de = _accumulated_phases(p, blockade, quad_tol)
    phi_ent = float(wrap_angle(phi_dd - 2.0 * phi_de))
    return GateDesign(
        blockade=blockade,
        phi_dd=phi_dd,
        phi_de=phi_de,
        phi_ent=phi_ent,
        unitary=gate_unitary(phi_ent, phi_de),
    )


def phase_trace(p: PulseShape, blockade: float, n_points: int = 201):
    """Cumulative phi_DD(t), phi_DE(t), phi_ent(t) on a uniform grid.

    Returns (times, phi_dd, phi_de, phi_ent) with phi_ent wrapped to (-pi, pi].
    """
    times = np.linspace(0.0, p.tau, n_points)

    def rhs(t, _y):
        om, e = pulse_at(t, p)
        e_dd, e_de = adiabatic_energies(om, e, blockade)
        return [e_dd, e_de]

    sol = solve_ivp(rhs, (0.0, p.tau), [0.0, 0.0], method="DOP853",
                    rtol=1e-11, atol=1e-12, t_eval=times)
    phi_dd, phi_de = sol.y
    return times, phi_dd, phi_de, wrap_angle(phi_dd - 2.0 * phi_de)


def optimize_pulse(omega0: float, tau: float, blockade: float,
                   target: float = np.pi, bracket=None) -> float:
    """Detuning scale delta0 at which the pulse accumulates the target phase.

    Scans the bracket (default [1e-3, 50] * omega0) for a sign change of the
    unwrapped phi_ent - target, then polishes with Brent's method to
    |phi_ent - target| < 1e-6. Raises NoRoot for a flat objective (omega0 = 0)
    or when the bracket contains no sign change.
    """
    if omega0 <= 0.0:
        raise NoRoot("phase is independent of delta0 when omega0 = 0")
    if bracket is None:
        bracket = (1e-3 * omega0, 50.0 * omega0)
    lo, hi = bracket
    if not (0.0 < lo < hi):
        raise NoRoot(f"invalid bracket {bracket}")

    def objective(delta0):
        phi_dd, phi_de = _accumulated_phases(PulseShape(omega0, delta0, tau),
                                             blockade, QUAD_ABS_TOL)
        return phi_dd - 2.0 * phi_de - target

    grid = np.geomspace(lo, hi, 40)
    values = [objective(g) for g in grid]
    for a, b, fa, fb in zip(grid[:-1], grid[1:], values[:-1], values[1:]):
        if fa == 0.0:
            return float(a)
        if fa * fb < 0.0:
            root = brentq(objective, a, b, xtol=1e-14, rtol=8.9e-16)
            if abs(objective(root)) >= 1e-6:
                raise NoRoot("root polish did not reach the phase tolerance")
            return float(root)
    raise NoRoot("no sign change of phi_ent - target inside the bracket")


def adiabaticity_ratio(p: PulseShape, blockade: float, n_points: int = 401) -> float:
    """min gap^2 / max slew, the dimensionless adiabaticity margin of the pulse.

    Gap is the smaller of the two instantaneous avoided-crossing gaps, slew
    the larger of |dOmega/dt| and |dE/dt|. Reported as a diagnostic; the
    design is considered adiabatic when the ratio is well above ~3.
    """
    times = np.linspace(0.0, p.tau, n_points)
    om, e = pulse_at(times, p)
    denom = 4.0 * e + 2.0 * blockade
    delta_eff = e - om**2 / denom
    gap_dd = np.sqrt(delta_eff**2 + 2.0 * om**2)
    gap_de = np.sqrt(e**2 + om**2)
    min_gap = min(gap_dd.min(), gap_de.min())
    slew = np.pi / p.tau * max(p.omega0, abs(p.delta0))
    return float(min_gap**2 / slew)
