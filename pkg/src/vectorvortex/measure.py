"""Projection measurement and non-separability metrics.

Stokes labelling used throughout: S0 = I_H + I_V, S1 = I_D - I_A,
S2 = I_L - I_R, S3 = I_H - I_V.  The degree of polarization and the linear
entropy are invariant under any relabelling, so only the signs of individual
components depend on this choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import ScalarField, inner_product, power
from .jones import JonesVector, VectorField, basis, project, total_power

__all__ = [
    "ProjectionPowers",
    "StokesVector",
    "PolDensityMatrix",
    "projection_powers",
    "stokes",
    "dop",
    "linear_entropy",
    "reduced_polarization_matrix",
    "dop_from_matrix",
    "intensity_image",
    "count_petals",
    "ring_profile",
    "cyclic_correlation_shift",
]

_PAIR_TOL = 1e-9

N_RING_ANGLES = 720
_PEAK_FRACTION = 0.5
_UNIFORM_RATIO = 1.2


@dataclass(frozen=True)
class ProjectionPowers:
    """Integrated analyzer powers, normalized by the total power."""

    i_h: float
    i_v: float
    i_d: float
    i_a: float
    i_l: float
    i_r: float

    def __post_init__(self) -> None:
        vals = (self.i_h, self.i_v, self.i_d, self.i_a, self.i_l, self.i_r)
        if any(not math.isfinite(v) or v < 0.0 for v in vals):
            raise ValueError(f"projection powers must be finite and >= 0, got {vals}")
        s_hv = self.i_h + self.i_v
        s_da = self.i_d + self.i_a
        s_lr = self.i_l + self.i_r
        if abs(s_hv - s_da) > _PAIR_TOL or abs(s_hv - s_lr) > _PAIR_TOL:
            raise ValueError(
                f"analyzer pairs disagree: H+V={s_hv!r}, D+A={s_da!r}, L+R={s_lr!r}"
            )


def projection_powers(f: VectorField) -> ProjectionPowers:
    """Normalized power behind each of the six analyzer settings."""
    p_total = total_power(f)
    if p_total <= 0.0:
        raise ValueError("projection powers are undefined for a zero field")
    vals = [power(project(f, basis(name))) / p_total for name in ("H", "V", "D", "A", "L", "R")]
    return ProjectionPowers(*vals)


@dataclass(frozen=True)
class StokesVector:
    """Stokes parameters normalized so that s0 = 1."""

    s0: float
    s1: float
    s2: float
    s3: float

    def __post_init__(self) -> None:
        if abs(self.s0 - 1.0) > 1e-12:
            raise ValueError(f"StokesVector must be normalized to s0 = 1, got s0 = {self.s0!r}")
        mag = self.s1 ** 2 + self.s2 ** 2 + self.s3 ** 2
        if mag > 1.0 + _PAIR_TOL:
            raise ValueError(f"s1^2 + s2^2 + s3^2 = {mag!r} exceeds 1")


def stokes(p: ProjectionPowers) -> StokesVector:
    """Stokes parameters from analyzer powers (s1: D/A, s2: L/R, s3: H/V)."""
    s0 = p.i_h + p.i_v
    if s0 <= 0.0:
        raise ValueError("total intensity is zero")
    return StokesVector(1.0, (p.i_d - p.i_a) / s0, (p.i_l - p.i_r) / s0, (p.i_h - p.i_v) / s0)


def dop(s: StokesVector) -> float:
    """Degree of polarization sqrt(s1^2 + s2^2 + s3^2), clamped to [0, 1]."""
    val = math.sqrt(s.s1 ** 2 + s.s2 ** 2 + s.s3 ** 2)
    return min(max(val, 0.0), 1.0)


def linear_entropy(dop_value: float) -> float:
    """Mixedness of the reduced polarization state: 1 - DOP**2.

    0 for a product state, 1 for a maximally non-separable one.
    """
    d = float(dop_value)
    if not (0.0 <= d <= 1.0):
        raise ValueError(f"degree of polarization must lie in [0, 1], got {dop_value!r}")
    return 1.0 - d * d


@dataclass(frozen=True, eq=False)
class PolDensityMatrix:
    """2x2 reduced polarization density matrix (Hermitian, unit trace)."""

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=np.complex128)
        if m.shape != (2, 2):
            raise ValueError(f"density matrix must be 2x2, got shape {m.shape}")
        if not np.isfinite(m).all():
            raise ValueError("density matrix contains NaN or Inf")
        if np.abs(m - m.conj().T).max() > 1e-12:
            raise ValueError("density matrix is not Hermitian")
        if abs(m[0, 0].real + m[1, 1].real - 1.0) > _PAIR_TOL:
            raise ValueError(f"density matrix trace {np.trace(m)!r} is not 1")
        eigs = np.linalg.eigvalsh(m)
        if eigs.min() < -_PAIR_TOL or eigs.max() > 1.0 + _PAIR_TOL:
            raise ValueError(f"density matrix eigenvalues {eigs} outside [0, 1]")
        if m is self.matrix and m.flags.writeable:
            m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def reduced_polarization_matrix(f: VectorField) -> PolDensityMatrix:
    """Polarization state after tracing out the spatial mode.

    rho_hh = <e_h, e_h>/P, rho_vv = <e_v, e_v>/P, rho_hv = <e_v, e_h>/P; the
    off-diagonal magnitude is the spatial-mode overlap of the two arms, which
    is what makes this an independent cross-check on the Stokes route.
    """
    p_total = total_power(f)
    if p_total <= 0.0:
        raise ValueError("reduced polarization matrix is undefined for a zero field")
    hh = power(f.e_h) / p_total
    vv = power(f.e_v) / p_total
    hv = inner_product(f.e_v, f.e_h) / p_total
    return PolDensityMatrix(np.array([[hh, hv], [np.conj(hv), vv]], dtype=np.complex128))


def dop_from_matrix(rho: PolDensityMatrix) -> float:
    """Degree of polarization sqrt(2*Tr(rho^2) - 1) of a 2x2 density matrix.

    For a Hermitian unit-trace matrix the radicand equals
    (rho_hh - rho_vv)^2 + 4*|rho_hv|^2, which ``hypot`` evaluates without the
    catastrophic cancellation the raw purity expression suffers near DOP = 0.
    """
    m = rho.matrix
    val = math.hypot(float(m[0, 0].real - m[1, 1].real), 2.0 * abs(m[0, 1]))
    return min(val, 1.0)


def intensity_image(f: VectorField, p: JonesVector) -> np.ndarray:
    """Pixelwise intensity behind analyzer ``p``, max-normalized to 1.

    A dark port (zero projection) yields an all-zero image rather than an
    error.
    """
    amp = project(f, p).amp
    img = amp.real * amp.real + amp.imag * amp.imag
    peak = img.max()
    if peak > 0.0:
        img = img / peak
    return img


def _bilinear(img: np.ndarray, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    r0 = np.clip(np.floor(rows).astype(int), 0, img.shape[0] - 2)
    c0 = np.clip(np.floor(cols).astype(int), 0, img.shape[1] - 2)
    fr = np.clip(rows - r0, 0.0, 1.0)
    fc = np.clip(cols - c0, 0.0, 1.0)
    return (
        img[r0, c0] * (1.0 - fr) * (1.0 - fc)
        + img[r0 + 1, c0] * fr * (1.0 - fc)
        + img[r0, c0 + 1] * (1.0 - fr) * fc
        + img[r0 + 1, c0 + 1] * fr * fc
    )


def ring_profile(image: np.ndarray, n_angles: int = N_RING_ANGLES) -> tuple[float, np.ndarray]:
    """Radius (pixels) of maximum azimuthally-averaged intensity, and the
    intensity sampled on that circle at ``n_angles`` equally spaced angles."""
    img = np.asarray(image, dtype=float)
    if img.ndim != 2 or img.shape[0] != img.shape[1]:
        raise ValueError("image must be a square 2-D array")
    if not img.any():
        raise ValueError("all-zero image")
    n = img.shape[0]
    centre = (n - 1) / 2.0
    radii = 0.5 + np.arange(n // 2)
    angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
    rows = centre + radii[:, None] * np.sin(angles)[None, :]
    cols = centre + radii[:, None] * np.cos(angles)[None, :]
    samples = _bilinear(img, rows, cols)
    best = int(np.argmax(samples.mean(axis=1)))
    return float(radii[best]), samples[best]


def count_petals(image: np.ndarray) -> int:
    """Number of intensity lobes on the brightest ring of ``image``.

    The circle at the radius of maximum azimuthally-averaged intensity is
    sampled at 720 angles (bilinear interpolation) and the lobes above half
    the circle's maximum are counted.  Azimuthally uniform rings (circle
    max/min below 1.2) report 0 petals.  An all-zero image is an error.

    A lobe is a cyclic connected run of samples above the half-maximum
    threshold: one count per run collapses the several strict sample-level
    maxima that bilinear interpolation ripple (sub-percent, pixel-crossing
    period) produces on the flat top of a wide lobe, while genuine lobes stay
    separated because the threshold crossings sit on steep flanks.
    """
    _, s = ring_profile(image)
    cmax = float(s.max())
    cmin = float(s.min())
    if cmax <= 0.0:
        return 0
    if cmin > 0.0 and cmax / cmin < _UNIFORM_RATIO:
        return 0
    above = s > _PEAK_FRACTION * cmax
    if above.all():
        return 1
    rising = above & ~np.roll(above, 1)
    return int(np.count_nonzero(rising))


def cyclic_correlation_shift(a: np.ndarray, b: np.ndarray) -> int:
    """Cyclic shift k maximizing sum_t a[t] * b[(t + k) % N].

    If ``b`` is ``a`` rotated by k samples (b[t] = a[t - k]), the result is k.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("inputs must be 1-D arrays of equal length")
    best_k = 0
    best_v = -math.inf
    for k in range(len(a)):
        v = float(np.dot(a, np.roll(b, -k)))
        if v > best_v:
            best_k, best_v = k, v
    return best_k
