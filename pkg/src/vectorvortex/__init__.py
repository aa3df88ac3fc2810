"""Classical non-separable light-state simulator.

Vector vortex beams couple polarization and orbital angular momentum into a
state that cannot be written as a product of the two degrees of freedom.
This package synthesizes such states on a sampled grid, runs the standard
generation schemes (Sagnac loop, phase plate + selective modulator, dual
modulator), renders analyzer projection images, and quantifies the
non-separability through Stokes parameters, the degree of polarization, and
the linear entropy, with an independent density-matrix cross-check.
"""

from .fields import (
    MAX_VORTEX_ORDER,
    GridSpec,
    ScalarField,
    azimuthal_phase_mask,
    inner_product,
    lg_mode,
    make_grid,
    normalize,
    power,
)
from .jones import (
    BASIS_NAMES,
    JonesVector,
    VectorField,
    apply_jones,
    basis,
    jones_hwp,
    jones_qwp,
    project,
    projector_matrix,
    state_overlap,
    total_power,
)
from .elements import (
    MAX_CHAIN_LENGTH,
    Element,
    Hwp,
    Projector,
    Qwp,
    Slm,
    Spp,
    apply_slm,
    apply_spp,
    make_ns_state,
    run_chain,
    sagnac_generate,
    shift_vortex_order,
)
from .measure import (
    PolDensityMatrix,
    ProjectionPowers,
    StokesVector,
    count_petals,
    cyclic_correlation_shift,
    dop,
    dop_from_matrix,
    intensity_image,
    linear_entropy,
    projection_powers,
    reduced_polarization_matrix,
    ring_profile,
    stokes,
)
from .pgm import write_pgm
from .pipeline import (
    MEASUREMENT_NAMES,
    PRESET_NAMES,
    ConfigError,
    MeasurementReport,
    PipelineConfig,
    PipelineError,
    SourceSpec,
    parse_config,
    preset_description,
    preset_rows,
    run_pipeline,
    run_preset,
    serialize_config,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_VORTEX_ORDER",
    "GridSpec",
    "ScalarField",
    "make_grid",
    "lg_mode",
    "azimuthal_phase_mask",
    "inner_product",
    "power",
    "normalize",
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
    "write_pgm",
    "ConfigError",
    "PipelineError",
    "SourceSpec",
    "PipelineConfig",
    "MeasurementReport",
    "MEASUREMENT_NAMES",
    "PRESET_NAMES",
    "preset_description",
    "parse_config",
    "serialize_config",
    "run_pipeline",
    "preset_rows",
    "run_preset",
]
