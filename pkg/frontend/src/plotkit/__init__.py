"""Figure rendering for solver CSV outputs."""

from .figures import (
    CONTOUR_LEVEL_COUNT,
    SCHLIEREN_SHARPNESS,
    SchemaError,
    contour_levels,
    load_csv,
    render_contour,
    render_entropy,
    render_profile,
    render_schlieren,
    schlieren_image,
)

__all__ = [
    "CONTOUR_LEVEL_COUNT",
    "SCHLIEREN_SHARPNESS",
    "SchemaError",
    "contour_levels",
    "load_csv",
    "render_contour",
    "render_entropy",
    "render_profile",
    "render_schlieren",
    "schlieren_image",
]
