"""Jones calculus: polarization basis states, waveplates, and their pixelwise
action on two-component vector fields.

Circularity convention: L = (1, i)/sqrt(2), R = (1, -i)/sqrt(2).  Flipping it
flips the sign of the L/R intensity difference and nothing else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import GridSpec, ScalarField, inner_product, power

__all__ = [
    "JonesVector",
    "VectorField",
    "BASIS_NAMES",
    "basis",
    "jones_hwp",
    "jones_qwp",
    "apply_jones",
    "project",
    "projector_matrix",
    "total_power",
    "state_overlap",
]

_NORM_TOL = 1e-9
_INV_SQRT2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class JonesVector:
    """Uniform polarization state (h, v amplitudes)."""

    h: complex
    v: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "h", complex(self.h))
        object.__setattr__(self, "v", complex(self.v))

    @property
    def norm_sq(self) -> float:
        return abs(self.h) ** 2 + abs(self.v) ** 2

    def as_array(self) -> np.ndarray:
        return np.array([self.h, self.v], dtype=np.complex128)


_BASIS = {
    "H": JonesVector(1.0, 0.0),
    "V": JonesVector(0.0, 1.0),
    "D": JonesVector(_INV_SQRT2, _INV_SQRT2),
    "A": JonesVector(_INV_SQRT2, -_INV_SQRT2),
    "L": JonesVector(_INV_SQRT2, _INV_SQRT2 * 1j),
    "R": JonesVector(_INV_SQRT2, -_INV_SQRT2 * 1j),
}

BASIS_NAMES = tuple(_BASIS)


def basis(name: str) -> JonesVector:
    """One of the six analyzer states H, V, D, A, L, R."""
    try:
        return _BASIS[name]
    except (KeyError, TypeError):
        raise ValueError(
            f"unknown polarization basis {name!r}; expected one of {', '.join(BASIS_NAMES)}"
        ) from None


def jones_hwp(theta: float) -> np.ndarray:
    """Half-wave plate with fast axis at ``theta`` radians."""
    c, s = math.cos(2.0 * theta), math.sin(2.0 * theta)
    return np.array([[c, s], [s, -c]], dtype=np.complex128)


def jones_qwp(theta: float) -> np.ndarray:
    """Quarter-wave plate with fast axis at ``theta`` radians (global phase fixed)."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [
            [c * c + 1j * s * s, (1.0 - 1j) * s * c],
            [(1.0 - 1j) * s * c, s * s + 1j * c * c],
        ],
        dtype=np.complex128,
    )


@dataclass(frozen=True, eq=False)
class VectorField:
    """Two-component field (e_h, e_v) sharing one grid: the full state."""

    e_h: ScalarField
    e_v: ScalarField

    def __post_init__(self) -> None:
        if self.e_h.grid != self.e_v.grid:
            raise ValueError("e_h and e_v must share the same grid")

    @property
    def grid(self) -> GridSpec:
        return self.e_h.grid


def total_power(f: VectorField) -> float:
    return power(f.e_h) + power(f.e_v)


def apply_jones(f: VectorField, matrix: np.ndarray) -> VectorField:
    """Apply a 2x2 Jones matrix pixelwise to both components."""
    j = np.asarray(matrix, dtype=np.complex128)
    if j.shape != (2, 2):
        raise ValueError(f"Jones matrix must be 2x2, got shape {j.shape}")
    eh = j[0, 0] * f.e_h.amp + j[0, 1] * f.e_v.amp
    ev = j[1, 0] * f.e_h.amp + j[1, 1] * f.e_v.amp
    return VectorField(ScalarField(f.grid, eh), ScalarField(f.grid, ev))


def project(f: VectorField, p: JonesVector) -> ScalarField:
    """Scalar amplitude passed by an ideal analyzer set to state ``p``.

    Models the quarter-wave plate / half-wave plate / polarizing splitter
    chain as a single projector: conj(p.h)*e_h + conj(p.v)*e_v.
    """
    if abs(p.norm_sq - 1.0) > _NORM_TOL:
        raise ValueError(f"projection state must be normalized, |p|^2 = {p.norm_sq!r}")
    amp = np.conj(p.h) * f.e_h.amp + np.conj(p.v) * f.e_v.amp
    return ScalarField(f.grid, amp)


def projector_matrix(p: JonesVector) -> np.ndarray:
    """Rank-1 projector |p><p| as a Jones matrix."""
    if abs(p.norm_sq - 1.0) > _NORM_TOL:
        raise ValueError(f"projector state must be normalized, |p|^2 = {p.norm_sq!r}")
    v = p.as_array()
    return np.outer(v, v.conj())


def state_overlap(f: VectorField, g: VectorField) -> complex:
    """Normalized overlap <f|g>; |result| = 1 iff the states agree up to a global phase."""
    pf, pg = total_power(f), total_power(g)
    if pf <= 0.0 or pg <= 0.0:
        raise ValueError("state_overlap requires fields with non-zero power")
    ip = inner_product(f.e_h, g.e_h) + inner_product(f.e_v, g.e_v)
    return ip / math.sqrt(pf * pg)
