"""Bit-exact 16-bit binary PGM output for max-normalized intensity images."""

from __future__ import annotations

import numpy as np

__all__ = ["write_pgm"]

_MAXVAL = 65535


def write_pgm(image: np.ndarray, path) -> None:
    """Write ``image`` (square, values in [0, 1]) as a binary PGM file.

    Format: ASCII header ``P5\\n<n> <n>\\n65535\\n`` followed by n*n big-endian
    16-bit samples, sample value round(65535 * intensity) (half away from
    zero).  Rows run top of the scene first; array row index increases with
    the y coordinate, so the array is written bottom row last.
    """
    img = np.asarray(image, dtype=float)
    if img.ndim != 2 or img.shape[0] != img.shape[1]:
        raise ValueError(f"image must be a square 2-D array, got shape {img.shape}")
    if not np.isfinite(img).all():
        raise ValueError("image contains NaN or Inf")
    if img.size and (img.min() < 0.0 or img.max() > 1.0 + 1e-12):
        raise ValueError("image must be max-normalized to [0, 1]")
    n = img.shape[0]
    samples = np.floor(img * float(_MAXVAL) + 0.5).astype(">u2")
    header = f"P5\n{n} {n}\n{_MAXVAL}\n".encode("ascii")
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(samples[::-1, :].tobytes())
    except OSError as exc:
        raise OSError(f"failed to write PGM {path}: {exc}") from exc
