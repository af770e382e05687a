"""Exact polynomial arithmetic and root isolation."""

from src.services.poly.interval import (
    RootInterval,
    certified_sign,
    dyadic_between,
    phi_enclosure,
    phi_interval,
    phi_iterate_enclosure,
)
from src.services.poly.intpoly import (
    IntPoly,
    eval_rational,
    poly_add,
    poly_compose,
    poly_divide_exact,
    poly_mul,
    poly_scale,
)
from src.services.poly.rootisolation import (
    isolate_at_guides,
    refine_interval,
    refine_root,
    sturm_count,
    sturm_isolate,
)

__all__ = [
    "IntPoly",
    "RootInterval",
    "eval_rational",
    "poly_add",
    "poly_compose",
    "poly_divide_exact",
    "poly_mul",
    "poly_scale",
    "phi_enclosure",
    "phi_interval",
    "phi_iterate_enclosure",
    "certified_sign",
    "dyadic_between",
    "isolate_at_guides",
    "refine_interval",
    "refine_root",
    "sturm_count",
    "sturm_isolate",
]
