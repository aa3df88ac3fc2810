"""State-preparation elements and generation chains.

The spiral phase plate and the spatial light modulator are modeled as ideal
vortex-order converters: acting on a beam expanded over the fundamental-ring
vortex family, they move every order m to m + delta while preserving the
relative weights and the total power.  This matches the textbook description
of a phase plate turning the Gaussian |0> into the vortex |m>, and it keeps
element chains exactly equivalent (overlap 1) to directly synthesized target
states.  The modulator is polarization selective: only the horizontal
component is converted, the vertical one merely picks up the uniform
birefringent walk-off phase and keeps its spatial profile untouched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .fields import (
    MAX_VORTEX_ORDER,
    GridSpec,
    ScalarField,
    _check_order,
    lg_mode,
    power,
)
from .jones import (
    JonesVector,
    VectorField,
    apply_jones,
    jones_hwp,
    jones_qwp,
    projector_matrix,
)

__all__ = [
    "Hwp",
    "Qwp",
    "Spp",
    "Slm",
    "Projector",
    "Element",
    "MAX_CHAIN_LENGTH",
    "shift_vortex_order",
    "apply_spp",
    "apply_slm",
    "make_ns_state",
    "sagnac_generate",
    "run_chain",
]

MAX_CHAIN_LENGTH = 64

# Relative power a field may carry outside the supported vortex family before
# an order shift refuses to proceed; in-family fields sit many orders below.
_RESIDUAL_TOL = 1e-6
# Relative power below which an order pushed out of range is dropped silently
# (numerical cross-talk, not signal).
_DROP_TOL = 1e-12

_INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _check_angle(value, name: str = "angle") -> float:
    v = float(value)
    if not math.isfinite(v):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return v


@dataclass(frozen=True)
class Hwp:
    """Half-wave plate at ``theta`` radians."""

    theta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", _check_angle(self.theta, "theta"))


@dataclass(frozen=True)
class Qwp:
    """Quarter-wave plate at ``theta`` radians."""

    theta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta", _check_angle(self.theta, "theta"))


@dataclass(frozen=True)
class Spp:
    """Spiral phase plate of order ``m`` (acts on both polarizations)."""

    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", _check_order(self.m))


@dataclass(frozen=True)
class Slm:
    """Polarization-selective modulator: order ``m`` on H, phase delay on V."""

    m: int
    phi_delay: float = math.pi / 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", _check_order(self.m))
        object.__setattr__(self, "phi_delay", _check_angle(self.phi_delay, "phi_delay"))


@dataclass(frozen=True)
class Projector:
    """Ideal polarizer passing the normalized state ``state``."""

    state: JonesVector


Element = Union[Hwp, Qwp, Spp, Slm, Projector]

_CHARGES = tuple(range(-MAX_VORTEX_ORDER, MAX_VORTEX_ORDER + 1))


@lru_cache(maxsize=3)
def _charge_basis(grid: GridSpec, waist: float) -> np.ndarray:
    """Stacked flattened vortex modes for every supported order, read-only."""
    flat = np.stack([lg_mode(grid, m, waist).amp.ravel() for m in _CHARGES])
    flat.setflags(write=False)
    return flat


def shift_vortex_order(field: ScalarField, delta: int, waist: float = 1.0) -> ScalarField:
    """Move every vortex order m present in ``field`` to m + delta.

    The field is decomposed over the fundamental-ring family, the orders are
    relabelled, and the result is re-synthesized and rescaled to the input
    power (the physical element is lossless).  Raises if the field carries
    significant power outside the family, or if a populated order would leave
    the supported range.
    """
    delta = _check_order(delta)
    if delta == 0:
        return field
    p_in = power(field)
    if p_in == 0.0:
        return field
    basis = _charge_basis(field.grid, float(waist))
    vec = field.amp.ravel()
    coeffs = np.einsum("kp,p->k", basis, np.conj(vec)).conj() * field.grid.pitch ** 2
    captured = float(np.sum(np.abs(coeffs) ** 2))
    residual = p_in - captured
    if residual > _RESIDUAL_TOL * p_in:
        raise ValueError(
            "field is not a superposition of supported vortex modes "
            f"(residual power fraction {residual / p_in:.3e}); order shift undefined"
        )
    shifted = np.zeros_like(coeffs)
    for idx, m in enumerate(_CHARGES):
        target = m + delta
        c = coeffs[idx]
        if abs(target) <= MAX_VORTEX_ORDER:
            shifted[target + MAX_VORTEX_ORDER] = c
        elif abs(c) ** 2 > _DROP_TOL * p_in:
            raise ValueError(
                f"vortex order {m} + {delta} = {target} exceeds the supported |m| <= {MAX_VORTEX_ORDER}"
            )
    out = np.einsum("k,kp->p", shifted, basis).reshape(field.amp.shape)
    out_field = ScalarField(field.grid, out)
    p_out = power(out_field)
    if p_out == 0.0:
        return out_field
    return ScalarField(field.grid, out * math.sqrt(p_in / p_out))


def apply_spp(f: VectorField, m: int, waist: float = 1.0) -> VectorField:
    """Spiral phase plate of order ``m``: both components gain m units of OAM."""
    m = _check_order(m)
    if m == 0:
        return f
    return VectorField(
        shift_vortex_order(f.e_h, m, waist),
        shift_vortex_order(f.e_v, m, waist),
    )


def apply_slm(f: VectorField, m_slm: int, phi_delay: float, waist: float = 1.0) -> VectorField:
    """Modulator action: ``m_slm`` OAM units onto e_h only; e_v keeps its
    spatial profile and gains the uniform phase exp(i*phi_delay)."""
    m_slm = _check_order(m_slm)
    phi = _check_angle(phi_delay, "phi_delay")
    e_h = shift_vortex_order(f.e_h, m_slm, waist) if m_slm != 0 else f.e_h
    if phi != 0.0:
        e_v = ScalarField(f.grid, f.e_v.amp * complex(math.cos(phi), math.sin(phi)))
    else:
        e_v = f.e_v
    if e_h is f.e_h and e_v is f.e_v:
        return f
    return VectorField(e_h, e_v)


def make_ns_state(m_h: int, m_v: int, phi: float, grid: GridSpec, waist: float = 1.0) -> VectorField:
    """Directly synthesized state (|H> LG_mh + e^{i phi} |V> LG_mv)/sqrt(2).

    Unit total power; separable exactly when m_h == m_v.
    """
    phi = _check_angle(phi, "phi")
    mode_h = lg_mode(grid, m_h, waist)
    mode_v = lg_mode(grid, m_v, waist)
    cv = complex(math.cos(phi), math.sin(phi)) * _INV_SQRT2
    return VectorField(
        ScalarField(grid, mode_h.amp * _INV_SQRT2),
        ScalarField(grid, mode_v.amp * cv),
    )


def sagnac_generate(m: int, grid: GridSpec, waist: float = 1.0) -> VectorField:
    """Net output of a polarizing Sagnac loop around a phase plate of order m.

    The counter-propagating arms see opposite handedness, so H carries +m and
    V carries -m with no relative phase.
    """
    m = _check_order(m)
    return make_ns_state(m, -m, 0.0, grid, waist)


def run_chain(field: VectorField, chain, waist: float = 1.0) -> VectorField:
    """Apply ``chain`` left to right; element errors are tagged with their index."""
    chain = tuple(chain)
    if len(chain) > MAX_CHAIN_LENGTH:
        raise ValueError(f"chain length {len(chain)} exceeds the maximum {MAX_CHAIN_LENGTH}")
    f = field
    for index, element in enumerate(chain):
        try:
            if isinstance(element, Hwp):
                f = apply_jones(f, jones_hwp(element.theta))
            elif isinstance(element, Qwp):
                f = apply_jones(f, jones_qwp(element.theta))
            elif isinstance(element, Spp):
                f = apply_spp(f, element.m, waist)
            elif isinstance(element, Slm):
                f = apply_slm(f, element.m, element.phi_delay, waist)
            elif isinstance(element, Projector):
                f = apply_jones(f, projector_matrix(element.state))
            else:
                raise ValueError(f"unknown element type {type(element).__name__}")
        except ValueError as exc:
            raise ValueError(f"chain[{index}] ({type(element).__name__}): {exc}") from exc
    return f
