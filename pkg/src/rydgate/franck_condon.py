"""Franck-Condon overlap matrices between phonon bases of two potential surfaces.

Two code paths:

* aligned mode vectors -- the overlap factorizes into 1D same-center
  different-frequency oscillator overlaps, evaluated by a stable two-term
  recursion (a Bogoliubov relation between the two ladder algebras):

      K[m, n+1] = ( sqrt(m) * sech * K[m-1, n] - t * sqrt(n) * K[m, n-1] ) / sqrt(n+1)
      K[m+1, n] = ( sqrt(n) * sech * K[m, n-1] + t * sqrt(m) * K[m-1, n] ) / sqrt(m+1)

  with t = (nu - omega)/(nu + omega), sech = 2 sqrt(nu omega)/(nu + omega)
  and K[0, 0] = sqrt(sech). Entries with odd m+n vanish identically.

* rotated mode vectors -- a genuine 2D integral over the shared mass-scaled
  coordinates, with the bra modes living on rotated coordinates (rotation
  S = B^T A between the two eigenvector matrices). The combined Gaussian of
  bra and ket is diagonalized once, after which tensor Gauss-Hermite
  quadrature is exact for the remaining polynomial part; the order is grown
  until doubling it moves no entry by more than 1e-9.

All eigenfunctions are taken real with positive leading coefficient, so
every overlap is real.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TruncationWarning
from .modes import PhononBasis

ALIGNMENT_TOL = 1e-8
ROW_NORM_DEFECT_TOL = 1e-4


@dataclass(frozen=True)
class FCMatrix:
    """Overlap amplitudes between truncated two-mode Fock bases.

    entries[k, j] = <bra multi-index k | ket multi-index j> with the flat
    index (m1, m2) -> m1 * (n_max + 1) + m2. Rows are bra (excited-surface)
    states, columns ket (ground-surface) states.
    """

    n_max: int
    entries: np.ndarray

    def flat_index(self, m1: int, m2: int) -> int:
        return m1 * (self.n_max + 1) + m2

    @property
    def labels(self):
        n = self.n_max + 1
        return [(i // n, i % n) for i in range(n * n)]

    def row_norms(self) -> np.ndarray:
        return np.sqrt(np.sum(self.entries**2, axis=1))


def _overlap_table(nu: float, omega: float, n_max: int) -> np.ndarray:
    """Table of <m_nu|n_omega> for m, n = 0..n_max (same-center oscillators)."""
    t = (nu - omega) / (nu + omega)
    sech = 2.0 * np.sqrt(nu * omega) / (nu + omega)
    k = np.zeros((n_max + 1, n_max + 1))
    k[0, 0] = np.sqrt(sech)
    for n in range(n_max):
        prev = k[0, n - 1] if n >= 1 else 0.0
        k[0, n + 1] = -t * np.sqrt(n) * prev / np.sqrt(n + 1)
    for m in range(n_max):
        for n in range(n_max + 1):
            a = np.sqrt(n) * sech * k[m, n - 1] if n >= 1 else 0.0
            b = t * np.sqrt(m) * k[m - 1, n] if m >= 1 else 0.0
            k[m + 1, n] = (a + b) / np.sqrt(m + 1)
    return k


def fc_overlap_1d(nu: float, omega: float, m: int, n: int) -> float:
    """Overlap <m_nu|n_omega> of two oscillator eigenstates sharing a center.

    nu is the bra frequency, omega the ket frequency (both > 0, any common
    unit). Zero whenever m+n is odd; reduces to delta_mn for nu == omega.
    """
    if nu <= 0.0 or omega <= 0.0:
        raise DomainError("oscillator frequencies must be positive")
    if m < 0 or n < 0:
        raise DomainError("quantum numbers must be non-negative")
    if (m + n) % 2 == 1:
        return 0.0
    return float(_overlap_table(nu, omega, max(m, n))[m, n])


def _hermite_functions(n_max: int, y: np.ndarray) -> np.ndarray:
    """h[n, :] = H_n(y) / sqrt(2^n n! sqrt(pi)), stable upward recursion."""
    h = np.empty((n_max + 1, y.size))
    h[0] = np.pi**-0.25
    if n_max >= 1:
        h[1] = np.sqrt(2.0) * y * h[0]
    for n in range(1, n_max):
        h[n + 1] = y * np.sqrt(2.0 / (n + 1)) * h[n] - np.sqrt(n / (n + 1.0)) * h[n - 1]
    return h


def _quadrature_fc(ground: PhononBasis, excited: PhononBasis, n_max: int,
                   order: int) -> np.ndarray:
    """2D Gauss-Hermite evaluation of the overlap matrix on rotated modes."""
    w_g = ground.frequencies   # Gaussian widths exp(-w Q^2 / 2), hbar = M = 1
    w_e = excited.frequencies
    rot = excited.eigenvectors.T @ ground.eigenvectors  # ket coords -> bra coords
    gauss = np.diag(w_g) + rot.T @ np.diag(w_e) @ rot
    d, r = np.linalg.eigh(gauss)
    nodes, weights = np.polynomial.hermite.hermgauss(order)
    # grid over the principal axes u of the combined Gaussian
    ta, tb = np.meshgrid(nodes, nodes, indexing="ij")
    u = np.stack([ta.ravel() * np.sqrt(2.0 / d[0]), tb.ravel() * np.sqrt(2.0 / d[1])])
    q_ket = r @ u              # shared coordinates expressed in ket modes
    q_bra = rot @ q_ket
    wgt = np.outer(weights, weights).ravel() * np.sqrt(2.0 / d[0]) * np.sqrt(2.0 / d[1])

    def mode_values(freqs, q):
        out = []
        for i in range(2):
            w = freqs[i]
            out.append(w**0.25 * _hermite_functions(n_max, np.sqrt(w) * q[i]))
        return out

    g1, g2 = mode_values(ground.frequencies, q_ket)
    e1, e2 = mode_values(excited.frequencies, q_bra)
    k4 = np.einsum("an,bn,cn,dn,n->abcd", e1, e2, g1, g2, wgt)
    dim = (n_max + 1) ** 2
    return k4.reshape(dim, dim)


def fc_matrix(ground: PhononBasis, excited: PhononBasis, n_max: int = 10,
              force_quadrature: bool = False, order: int = None) -> FCMatrix:
    """Overlap matrix between the truncated Fock spaces of two phonon bases.

    Both bases must describe the same axis and geometry. When the mode
    vectors agree the matrix is an exact tensor product of 1D overlaps;
    otherwise it is computed by rotated-coordinate Gauss-Hermite quadrature.
    Emits TruncationWarning when any bra row norm drops below 1 - 1e-4.
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    aligned = np.max(np.abs(ground.eigenvectors - excited.eigenvectors)) <= ALIGNMENT_TOL
    if aligned and not force_quadrature:
        t1 = _overlap_table(excited.frequencies[0], ground.frequencies[0], n_max)
        t2 = _overlap_table(excited.frequencies[1], ground.frequencies[1], n_max)
        entries = np.kron(t1, t2)
    else:
        # exact once the order exceeds the polynomial degree; grown until the
        # doubled order agrees to 1e-9 entrywise
        q = order if order is not None else 2 * n_max + 4
        entries = _quadrature_fc(ground, excited, n_max, q)
        while True:
            refined = _quadrature_fc(ground, excited, n_max, 2 * q)
            if np.max(np.abs(refined - entries)) <= 1e-9 or q > 64 * (n_max + 1):
                entries = refined
                break
            entries, q = refined, 2 * q
    result = FCMatrix(n_max=n_max, entries=entries)
    worst = result.row_norms().min()
    if worst < 1.0 - ROW_NORM_DEFECT_TOL:
        warnings.warn(
            f"FC row norm {worst:.6f} < {1.0 - ROW_NORM_DEFECT_TOL}; "
            f"raise n_max={n_max} to restore truncated unitarity",
            TruncationWarning,
            stacklevel=2,
        )
    return result
