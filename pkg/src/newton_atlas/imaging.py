"""Fixed palette and binary PPM (P6) output for basin images."""

from __future__ import annotations

import numpy as np

from .dynamics import BasinImage
from .rational_core import is_inf

# finite attractors in list order; infinity is always black
FINITE_COLORS = [
    (0, 168, 84),  # green
    (214, 45, 38),  # red
    (255, 183, 28),  # amber
    (54, 93, 214),  # blue
    (186, 60, 186),  # magenta
    (0, 160, 160),  # teal
]
INFINITY_COLOR = (0, 0, 0)
UNRESOLVED_COLOR = (64, 64, 64)


def palette_for(attractors) -> list[tuple[int, int, int]]:
    """Color per attractor-list position."""
    colors = []
    next_finite = 0
    for a in attractors:
        if is_inf(a):
            colors.append(INFINITY_COLOR)
        else:
            colors.append(FINITE_COLORS[next_finite % len(FINITE_COLORS)])
            next_finite += 1
    return colors


def render_rgb(img: BasinImage, attractors) -> np.ndarray:
    colors = palette_for(attractors)
    lut = np.array([UNRESOLVED_COLOR] + colors, dtype=np.uint8)
    return lut[img.indices + 1]


def write_ppm(path, rgb: np.ndarray) -> None:
    """Binary P6, maxval 255, rows top to bottom."""
    h, w, _ = rgb.shape
    with open(path, "wb") as fh:
        fh.write(f"P6\n{w} {h}\n255\n".encode("ascii"))
        fh.write(rgb.astype(np.uint8).tobytes())


def read_ppm(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    parts = data.split(b"\n", 3)
    if parts[0] != b"P6":
        raise ValueError("not a binary PPM")
    w, h = (int(t) for t in parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w, 3)
