"""Sine kernel of the CUE eigenangle process and its arc restrictions.

The N eigenangles of a Haar-random U(N) matrix form a determinantal point
process on [0, 2π) with kernel

    K_N(x, y) = sin(N(x-y)/2) / sin((x-y)/2),

a rank-N projection with respect to the uniform probability measure dθ/2π.
Restricting the projection to an arc [0, θ) gives an N×N Hermitian matrix
whose eigenvalues (all in [0, 1]) are the Bernoulli parameters of the
counting function on that arc.  This module owns all normalization
conventions: the 1/2π reference measure appears in the arc-kernel entries,
and the Fourier basis is centered so the reconstruction of K_N is real.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * np.pi

# |sin((x-y)/2)| below this is treated as the diagonal singularity
_DIAG_TOL = 1e-12


@dataclass(frozen=True)
class KernelConfig:
    """Dimension N of the unitary group; fixes the kernel K_N."""

    matrix_size: int

    def __post_init__(self):
        if self.matrix_size < 1:
            raise ValueError(f"matrix_size must be >= 1, got {self.matrix_size}")


@dataclass(frozen=True)
class ArcKernelMatrix:
    """Hermitian restriction of the projection kernel to the arc [0, θ).

    entries[j, k] = (1/2π) ∫_0^θ e^{i(j-k)x} dx, so the diagonal is θ/2π
    and trace = Nθ/2π.  Eigenvalues lie in [0, 1].
    """

    dimension: int
    arc_length: float
    entries: np.ndarray


def reduce_angle(x: float) -> float:
    """Reduce a finite angle to [0, 2π) by floor-division remainder."""
    r = float(x) % TWO_PI
    # % can return 2π itself when x is a tiny negative number
    return r if r < TWO_PI else 0.0


def kernel_value(cfg: KernelConfig, x: float, y: float) -> float:
    """Evaluate K_N(x, y) = sin(N(x-y)/2)/sin((x-y)/2).

    Angles are reduced mod 2π first.  Near the singularities of the ratio
    (difference a multiple of 2π) the analytic limit ±N is returned; the
    sign is (-1)^{m(N-1)} for wrapped multiple m, which is +N at x = y.
    """
    n = cfg.matrix_size
    d = reduce_angle(x) - reduce_angle(y)
    # reduced difference lies in (-2π, 2π): wrapped multiple m ∈ {-1, 0, 1}
    m = int(np.rint(d / TWO_PI))
    delta = d - TWO_PI * m
    sign = -1.0 if (m * (n - 1)) % 2 else 1.0
    s = np.sin(0.5 * delta)
    if abs(s) < _DIAG_TOL:
        return sign * n
    return sign * np.sin(0.5 * n * delta) / s


def orthonormal_basis_vector(cfg: KernelConfig, theta: float) -> np.ndarray:
    """Fourier factorization of K_N: components e^{i(k-(N-1)/2)θ}, k = 0..N-1.

    Orthonormal for dθ/2π; ‖v(θ)‖² = N and Σ_k v_k(x) conj(v_k(y)) = K_N(x, y).
    The centered exponents make the reconstruction real.
    """
    n = cfg.matrix_size
    exponents = np.arange(n) - 0.5 * (n - 1)
    return np.exp(1j * exponents * theta)


def arc_kernel(cfg: KernelConfig, theta: float) -> ArcKernelMatrix:
    """Restriction of the projection kernel to the arc [0, θ), 0 ≤ θ ≤ 2π."""
    if not 0.0 <= theta <= TWO_PI:
        raise ValueError(f"arc length must lie in [0, 2*pi], got {theta}")
    return ArcKernelMatrix(cfg.matrix_size, theta,
                           _interval_entries(cfg.matrix_size, 0.0, theta))


def arc_kernel_interval(cfg: KernelConfig, a: float, b: float) -> ArcKernelMatrix:
    """Restriction to a general arc [a, b) ⊆ [0, 2π); needed for joint laws."""
    if not (0.0 <= a <= b <= TWO_PI):
        raise ValueError(f"need 0 <= a <= b <= 2*pi, got [{a}, {b})")
    return ArcKernelMatrix(cfg.matrix_size, b - a,
                           _interval_entries(cfg.matrix_size, a, b))


def _interval_entries(n: int, a: float, b: float) -> np.ndarray:
    # M[j, k] = (1/2π) ∫_a^b e^{i(j-k)x} dx; exactly Hermitian by mirroring
    m = np.empty((n, n), dtype=np.complex128)
    np.fill_diagonal(m, (b - a) / TWO_PI)
    for j in range(n):
        for k in range(j + 1, n):
            d = j - k
            val = (np.exp(1j * d * b) - np.exp(1j * d * a)) / (TWO_PI * 1j * d)
            m[j, k] = val
            m[k, j] = val.conjugate()
    return m
