"""Declarative experiment pipelines.

A pipeline is described by a small TOML dialect (sections ``[grid]``,
``[source]``, repeated ``[[chain]]`` element tables, ``[output]``), executed
deterministically, and summarized in a JSON measurement report plus optional
PGM projection images.  Bundled presets reproduce the canonical generation
schemes and figure galleries.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

try:
    import tomllib as _toml
except ModuleNotFoundError:  # Python 3.10
    import tomli as _toml

from .elements import Element, Hwp, Projector, Qwp, Slm, Spp, run_chain
from .fields import MAX_VORTEX_ORDER, GridSpec, ScalarField, lg_mode
from .jones import BASIS_NAMES, JonesVector, VectorField, basis
from .measure import (
    count_petals,
    dop,
    intensity_image,
    linear_entropy,
    projection_powers,
    reduced_polarization_matrix,
    stokes,
)
from .pgm import write_pgm

__all__ = [
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
    "config_to_dict",
    "run_pipeline",
    "preset_rows",
    "run_preset",
]


class ConfigError(ValueError):
    """Invalid pipeline configuration (syntax or semantics)."""


class PipelineError(RuntimeError):
    """A validated pipeline failed while running."""


MEASUREMENT_NAMES = ("powers", "stokes", "dop", "linear_entropy", "density_matrix", "petals")

_ELEMENT_TYPES = ("HWP", "QWP", "SPP", "SLM", "PROJECTOR")

_DEFAULT_GRID_N = 256
_DEFAULT_EXTENT = 5.0
_DEFAULT_OUTPUT_DIR = "out"


@dataclass(frozen=True)
class SourceSpec:
    """Input beam: single vortex mode ``mode`` with uniform polarization.

    ``polarization`` is either an analyzer name (H/V/D/A/L/R) or an (h, v)
    complex pair, which is normalized to unit power when the field is built.
    """

    polarization: Union[str, tuple[complex, complex]]
    mode: int = 0


@dataclass(frozen=True)
class PipelineConfig:
    grid: GridSpec
    waist: float
    source: SourceSpec
    chain: tuple[Element, ...]
    measurements: tuple[str, ...]
    images: tuple[str, ...]
    output_dir: str


@dataclass(frozen=True)
class MeasurementReport:
    """Structured pipeline output; ``None`` fields were not requested."""

    config: dict
    projection_powers: Union[dict, None]
    stokes: Union[dict, None]
    dop: Union[float, None]
    linear_entropy: Union[float, None]
    density_matrix: Union[dict, None]
    petals: Union[dict, None]
    images: dict

    def as_dict(self) -> dict:
        out = {"config": self.config}
        for key in ("projection_powers", "stokes", "dop", "linear_entropy", "density_matrix", "petals"):
            value = getattr(self, key)
            if value is not None:
                out[key] = value
        out["images"] = self.images
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"


# ---------------------------------------------------------------------------
# config parsing


def _fail(path: str, message: str) -> None:
    raise ConfigError(f"{path}: {message}" if path else message)


def _check_unknown(table: dict, allowed, path: str) -> None:
    for key in table:
        if key not in allowed:
            _fail("", f"unknown key '{path}.{key}'" if path else f"unknown key '{key}'")


def _get_int(table: dict, key: str, path: str, default=None, required: bool = False):
    if key not in table:
        if required:
            _fail(f"{path}.{key}", "missing required key")
        return default
    value = table[key]
    if not isinstance(value, int) or isinstance(value, bool):
        _fail(f"{path}.{key}", f"expected an integer, got {value!r}")
    return value


def _get_float(table: dict, key: str, path: str, default=None, required: bool = False):
    if key not in table:
        if required:
            _fail(f"{path}.{key}", "missing required key")
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(f"{path}.{key}", f"expected a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        _fail(f"{path}.{key}", "must be finite")
    return value


def _get_str(table: dict, key: str, path: str, default=None, required: bool = False):
    if key not in table:
        if required:
            _fail(f"{path}.{key}", "missing required key")
        return default
    value = table[key]
    if not isinstance(value, str):
        _fail(f"{path}.{key}", f"expected a string, got {value!r}")
    return value


def _get_pair(table: dict, key: str, path: str) -> complex:
    value = table[key]
    ok = (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
        and all(math.isfinite(float(x)) for x in value)
    )
    if not ok:
        _fail(f"{path}.{key}", f"expected [re, im] with two finite numbers, got {value!r}")
    return complex(float(value[0]), float(value[1]))


def _get_angle(table: dict, path: str, key: str = "theta", required: bool = True, default=None):
    """Angle given as ``key`` (radians) or ``key_deg`` (degrees), not both."""
    deg_key = key + "_deg"
    has_rad, has_deg = key in table, deg_key in table
    if has_rad and has_deg:
        _fail(path, f"give either '{key}' or '{deg_key}', not both")
    if not has_rad and not has_deg:
        if required:
            _fail(path, f"missing required key '{key}' (radians) or '{deg_key}' (degrees)")
        return default
    if has_rad:
        return _get_float(table, key, path, required=True)
    return math.radians(_get_float(table, deg_key, path, required=True))


def _check_mode_order(m: int, path: str) -> int:
    if abs(m) > MAX_VORTEX_ORDER:
        _fail(path, f"|m| must be ≤ {MAX_VORTEX_ORDER}, got {m}")
    return m


def _parse_grid(table, path="grid") -> GridSpec:
    if not isinstance(table, dict):
        _fail(path, "expected a [grid] table")
    _check_unknown(table, ("n", "extent"), path)
    n = _get_int(table, "n", path, required=True)
    extent = _get_float(table, "extent", path, required=True)
    if n < 16 or n % 2 != 0:
        _fail("", "grid.n must be even, ≥ 16")
    if extent < 3.0:
        _fail("", "grid.extent must be ≥ 3")
    return GridSpec(n, extent)


def _parse_source(table, path="source") -> SourceSpec:
    if not isinstance(table, dict):
        _fail(path, "expected a [source] table")
    _check_unknown(table, ("polarization", "h", "v", "mode"), path)
    mode = _get_int(table, "mode", path, default=0)
    mode = _check_mode_order(mode, f"{path}.mode")
    has_name = "polarization" in table
    has_pair = "h" in table or "v" in table
    if has_name == has_pair:
        _fail(path, "give either polarization = \"name\" or an h/v pair, not both or neither")
    if has_name:
        name = _get_str(table, "polarization", path, required=True)
        if name not in BASIS_NAMES:
            _fail(f"{path}.polarization", f"unknown basis {name!r}; expected one of {', '.join(BASIS_NAMES)}")
        return SourceSpec(name, mode)
    if "h" not in table or "v" not in table:
        _fail(path, "an h/v polarization pair needs both h and v")
    h = _get_pair(table, "h", path)
    v = _get_pair(table, "v", path)
    if abs(h) ** 2 + abs(v) ** 2 <= 0.0:
        _fail(path, "polarization vector must be non-zero")
    return SourceSpec((h, v), mode)


def _parse_element(table, path: str) -> Element:
    if not isinstance(table, dict):
        _fail(path, "expected an element table")
    kind = _get_str(table, "type", path, required=True).upper()
    if kind not in _ELEMENT_TYPES:
        _fail(f"{path}.type", f"unknown element {table['type']!r}; expected one of {', '.join(_ELEMENT_TYPES)}")
    if kind in ("HWP", "QWP"):
        _check_unknown(table, ("type", "theta", "theta_deg"), path)
        theta = _get_angle(table, path, "theta", required=True)
        return Hwp(theta) if kind == "HWP" else Qwp(theta)
    if kind == "SPP":
        _check_unknown(table, ("type", "m"), path)
        m = _get_int(table, "m", path, required=True)
        return Spp(_check_mode_order(m, f"{path}.m"))
    if kind == "SLM":
        _check_unknown(table, ("type", "m", "phi", "phi_deg"), path)
        m = _get_int(table, "m", path, required=True)
        m = _check_mode_order(m, f"{path}.m")
        phi = _get_angle(table, path, "phi", required=False, default=math.pi / 2)
        return Slm(m, phi)
    _check_unknown(table, ("type", "basis", "h", "v"), path)
    has_name = "basis" in table
    has_pair = "h" in table or "v" in table
    if has_name == has_pair:
        _fail(path, "give either basis = \"name\" or an h/v pair, not both or neither")
    if has_name:
        name = _get_str(table, "basis", path, required=True)
        if name not in BASIS_NAMES:
            _fail(f"{path}.basis", f"unknown basis {name!r}; expected one of {', '.join(BASIS_NAMES)}")
        return Projector(basis(name))
    if "h" not in table or "v" not in table:
        _fail(path, "an h/v projector pair needs both h and v")
    h = _get_pair(table, "h", path)
    v = _get_pair(table, "v", path)
    norm = math.sqrt(abs(h) ** 2 + abs(v) ** 2)
    if norm <= 0.0:
        _fail(path, "projector state must be non-zero")
    if abs(norm * norm - 1.0) > 1e-9:
        _fail(path, f"projector state must be normalized, |p|^2 = {norm * norm!r}")
    return Projector(JonesVector(h, v))


def _parse_name_list(value, path: str, allowed, what: str) -> tuple[str, ...]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        _fail(path, f"expected a list of {what} names")
    seen = []
    for name in value:
        if name not in allowed:
            _fail(path, f"unknown {what} {name!r}; expected one of {', '.join(allowed)}")
        if name in seen:
            _fail(path, f"duplicate entry {name!r}")
        seen.append(name)
    return tuple(seen)


def config_from_dict(data: dict) -> PipelineConfig:
    if not isinstance(data, dict):
        raise ConfigError("config root must be a table")
    _check_unknown(data, ("waist", "grid", "source", "chain", "output"), "")
    waist = _get_float(data, "waist", "", default=1.0)
    if waist <= 0.0:
        _fail("waist", f"must be > 0, got {waist}")
    if "grid" not in data:
        _fail("grid", "missing required [grid] section")
    grid = _parse_grid(data["grid"])
    if "source" not in data:
        _fail("source", "missing required [source] section")
    source = _parse_source(data["source"])

    chain: list[Element] = []
    raw_chain = data.get("chain", [])
    if not isinstance(raw_chain, list):
        _fail("chain", "expected an array of [[chain]] element tables")
    for i, entry in enumerate(raw_chain):
        chain.append(_parse_element(entry, f"chain[{i}]"))

    out = data.get("output", {})
    if not isinstance(out, dict):
        _fail("output", "expected an [output] table")
    _check_unknown(out, ("dir", "measurements", "images"), "output")
    out_dir = _get_str(out, "dir", "output", default=_DEFAULT_OUTPUT_DIR)
    measurements = (
        _parse_name_list(out["measurements"], "output.measurements", MEASUREMENT_NAMES, "measurement")
        if "measurements" in out
        else MEASUREMENT_NAMES
    )
    images = (
        _parse_name_list(out["images"], "output.images", BASIS_NAMES, "projection")
        if "images" in out
        else ()
    )
    return PipelineConfig(grid, waist, source, tuple(chain), measurements, images, out_dir)


def parse_config(text: str) -> PipelineConfig:
    """Parse and fully validate a pipeline config; diagnostics name the
    offending key (semantic errors) or the line (syntax errors)."""
    try:
        data = _toml.loads(text)
    except _toml.TOMLDecodeError as exc:
        raise ConfigError(f"config syntax error: {exc}") from None
    return config_from_dict(data)


# ---------------------------------------------------------------------------
# config serialization


def _fmt_value(value) -> str:
    if isinstance(value, bool):
        raise TypeError("booleans are not used in configs")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt_value(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {value!r}")


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _element_to_dict(element: Element) -> dict:
    if isinstance(element, Hwp):
        return {"type": "HWP", "theta": element.theta}
    if isinstance(element, Qwp):
        return {"type": "QWP", "theta": element.theta}
    if isinstance(element, Spp):
        return {"type": "SPP", "m": element.m}
    if isinstance(element, Slm):
        return {"type": "SLM", "m": element.m, "phi": element.phi_delay}
    if isinstance(element, Projector):
        return {"type": "PROJECTOR", "h": _pair(element.state.h), "v": _pair(element.state.v)}
    raise TypeError(f"unknown element {element!r}")


def config_to_dict(cfg: PipelineConfig) -> dict:
    source: dict = {}
    if isinstance(cfg.source.polarization, str):
        source["polarization"] = cfg.source.polarization
    else:
        h, v = cfg.source.polarization
        source["h"] = _pair(h)
        source["v"] = _pair(v)
    source["mode"] = cfg.source.mode
    return {
        "waist": cfg.waist,
        "grid": {"n": cfg.grid.n, "extent": cfg.grid.extent},
        "source": source,
        "chain": [_element_to_dict(e) for e in cfg.chain],
        "output": {
            "dir": cfg.output_dir,
            "measurements": list(cfg.measurements),
            "images": list(cfg.images),
        },
    }


def serialize_config(cfg: PipelineConfig) -> str:
    """Render ``cfg`` in the config dialect; ``parse_config`` inverts this exactly."""
    d = config_to_dict(cfg)
    lines = [f"waist = {_fmt_value(d['waist'])}", ""]
    for section in ("grid", "source"):
        lines.append(f"[{section}]")
        for key, value in d[section].items():
            lines.append(f"{key} = {_fmt_value(value)}")
        lines.append("")
    for entry in d["chain"]:
        lines.append("[[chain]]")
        for key, value in entry.items():
            lines.append(f"{key} = {_fmt_value(value)}")
        lines.append("")
    lines.append("[output]")
    for key, value in d["output"].items():
        lines.append(f"{key} = {_fmt_value(value)}")
    lines.append("")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# execution


def _source_field(cfg: PipelineConfig) -> VectorField:
    mode = lg_mode(cfg.grid, cfg.source.mode, cfg.waist)
    pol = cfg.source.polarization
    if isinstance(pol, str):
        jv = basis(pol)
    else:
        h, v = pol
        norm = math.sqrt(abs(h) ** 2 + abs(v) ** 2)
        jv = JonesVector(h / norm, v / norm)
    return VectorField(
        ScalarField(cfg.grid, mode.amp * jv.h),
        ScalarField(cfg.grid, mode.amp * jv.v),
    )


def run_pipeline(cfg: PipelineConfig) -> MeasurementReport:
    """Build the source, run the chain, measure, and write images + report.

    The report is also written to ``<output_dir>/report.json``.  Everything is
    deterministic: rerunning the same config reproduces every byte.
    """
    try:
        field = _source_field(cfg)
    except ValueError as exc:
        raise PipelineError(f"source: {exc}") from exc
    try:
        field = run_chain(field, cfg.chain, waist=cfg.waist)
    except ValueError as exc:
        raise PipelineError(f"chain: {exc}") from exc

    want = set(cfg.measurements)
    powers_d = stokes_d = density_d = petals_d = None
    dop_v = slin_v = None
    try:
        if want & {"powers", "stokes", "dop", "linear_entropy"}:
            pp = projection_powers(field)
            if "powers" in want:
                powers_d = {
                    "i_h": pp.i_h, "i_v": pp.i_v, "i_d": pp.i_d,
                    "i_a": pp.i_a, "i_l": pp.i_l, "i_r": pp.i_r,
                }
            if want & {"stokes", "dop", "linear_entropy"}:
                sv = stokes(pp)
                if "stokes" in want:
                    stokes_d = {"s0": sv.s0, "s1": sv.s1, "s2": sv.s2, "s3": sv.s3}
                if want & {"dop", "linear_entropy"}:
                    d = dop(sv)
                    if "dop" in want:
                        dop_v = d
                    if "linear_entropy" in want:
                        slin_v = linear_entropy(d)
        if "density_matrix" in want:
            rho = reduced_polarization_matrix(field).matrix
            density_d = {
                "hh": _pair(complex(rho[0, 0])),
                "hv": _pair(complex(rho[0, 1])),
                "vh": _pair(complex(rho[1, 0])),
                "vv": _pair(complex(rho[1, 1])),
            }
        images = {name: intensity_image(field, basis(name)) for name in cfg.images}
        if "petals" in want:
            petals_d = {name: count_petals(img) for name, img in images.items()}
    except ValueError as exc:
        raise PipelineError(f"measurement: {exc}") from exc

    out_dir = Path(cfg.output_dir)
    image_names = {name: f"projection_{name}.pgm" for name in cfg.images}
    report = MeasurementReport(
        config=config_to_dict(cfg),
        projection_powers=powers_d,
        stokes=stokes_d,
        dop=dop_v,
        linear_entropy=slin_v,
        density_matrix=density_d,
        petals=petals_d,
        images=image_names,
    )
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, img in images.items():
            write_pgm(img, out_dir / image_names[name])
        (out_dir / "report.json").write_text(report.to_json(), encoding="ascii")
    except OSError as exc:
        raise PipelineError(f"output: {exc}") from exc
    return report


# ---------------------------------------------------------------------------
# presets

_HWP_TO_DIAGONAL = Hwp(math.radians(22.5))
_HWP_SWAP = Hwp(math.radians(45.0))
_WALK_OFF = math.pi / 2

_ALL_IMAGES = BASIS_NAMES
_CIRC_IMAGES = ("D", "A", "L", "R")

# Figure galleries keep the plate order fixed at 2 and the walk-off at pi/2;
# the modulator order per row is the labelled horizontal order minus 2.
_FIGURE45_ROWS = (-4, -3, -2, -1, 1)
_FIGURE67_ROWS = (3, 4, 5, 6)

PRESET_NAMES = (
    "sagnac-eq1",
    "spp-slm-eq4",
    "table1",
    "figure4",
    "figure5",
    "figure6",
    "figure7",
    "dual-slm",
)

_PRESET_DESCRIPTIONS = {
    "sagnac-eq1": "Sagnac-loop state (|H>|+2> + |V>|-2>)/sqrt(2) via an equivalent modulator chain",
    "spp-slm-eq4": "plate(2) + modulator(-4, pi/2) chain on an H Gaussian -> orders (-2, +2), phase pi/2",
    "table1": "separable vs non-separable benchmark rows with full polarization metrics",
    "figure4": "six-projection gallery, horizontal orders -4..1 (experimental layout, ideal values)",
    "figure5": "six-projection gallery, horizontal orders -4..1",
    "figure6": "D/A/L/R gallery, horizontal orders 3..6 (experimental layout, ideal values)",
    "figure7": "D/A/L/R gallery, horizontal orders 3..6",
    "dual-slm": "two-modulator arbitrary-state chain -> orders (1, 3), no relative phase",
}


def preset_description(name: str) -> str:
    return _PRESET_DESCRIPTIONS[name]


def _row_config(grid: GridSpec, source: SourceSpec, chain, images, out_dir: str) -> PipelineConfig:
    return PipelineConfig(
        grid=grid,
        waist=1.0,
        source=source,
        chain=tuple(chain),
        measurements=MEASUREMENT_NAMES,
        images=tuple(images),
        output_dir=out_dir,
    )


def preset_rows(name: str, out_dir: str = _DEFAULT_OUTPUT_DIR, grid_n=None):
    """Named rows (row_name, PipelineConfig) of a bundled preset."""
    if name not in PRESET_NAMES:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}")
    n = _DEFAULT_GRID_N if grid_n is None else grid_n
    try:
        grid = GridSpec(n, _DEFAULT_EXTENT)
    except ValueError as exc:
        raise ConfigError(f"grid.n override: {exc}") from exc
    src_h = SourceSpec("H", 0)
    src_d = SourceSpec("D", 0)

    def cfg(row, source, chain, images=_ALL_IMAGES):
        return (row, _row_config(grid, source, chain, images, f"{out_dir}/{row}"))

    if name == "sagnac-eq1":
        return (cfg("m2", src_d, (Slm(-2, 0.0), _HWP_SWAP, Slm(2, 0.0))),)
    if name == "spp-slm-eq4":
        return (cfg("mh_-2", src_h, (_HWP_TO_DIAGONAL, Spp(2), Slm(-4, _WALK_OFF))),)
    if name == "table1":
        return (
            cfg("separable", src_h, (_HWP_TO_DIAGONAL, Slm(0, _WALK_OFF))),
            cfg("nonseparable", src_h, (_HWP_TO_DIAGONAL, Spp(2), Slm(-4, _WALK_OFF))),
        )
    if name in ("figure4", "figure5"):
        rows = _FIGURE45_ROWS
        images = _ALL_IMAGES
    elif name in ("figure6", "figure7"):
        rows = _FIGURE67_ROWS
        images = _CIRC_IMAGES
    else:  # dual-slm
        return (cfg("mh1_mv3", src_d, (Slm(3, 0.0), _HWP_SWAP, Slm(1, 0.0))),)
    return tuple(
        cfg(f"mh_{m_h}", src_h, (_HWP_TO_DIAGONAL, Spp(2), Slm(m_h - 2, _WALK_OFF)), images)
        for m_h in rows
    )


def run_preset(name: str, out_dir: str = _DEFAULT_OUTPUT_DIR, grid_n=None, json_report=None) -> dict:
    """Run every row of a preset; write the combined report and return it."""
    rows = preset_rows(name, out_dir=out_dir, grid_n=grid_n)
    combined = {"preset": name, "rows": []}
    for row_name, cfg in rows:
        report = run_pipeline(cfg)
        combined["rows"].append({"name": row_name, "report": report.as_dict()})
    path = Path(json_report) if json_report else Path(out_dir) / "report.json"
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(combined, indent=2) + "\n", encoding="ascii")
    except OSError as exc:
        raise PipelineError(f"output: {exc}") from exc
    return combined
