"""Arboreal Galois groups of quadratic PCF polynomials."""

import json

from ._arbor import (
    ArborError,
    TreeAutomorphism,
    closure_log2,
    compose,
    count_predicate,
    find_pcf_params,
    graft,
    misiurewicz_mod2_check,
    mod2_iterate_check,
    orbit_portrait,
    pink_generators,
    pink_log2_order,
    valid_base_points,
)
from . import _arbor

__all__ = [
    "ArborError",
    "TreeAutomorphism",
    "closure_log2",
    "compose",
    "count_predicate",
    "find_pcf_params",
    "frobenius",
    "graft",
    "homtest",
    "kernel",
    "kummer",
    "label",
    "membership",
    "misiurewicz_mod2_check",
    "mod2_iterate_check",
    "orbit_portrait",
    "pink_generators",
    "pink_log2_order",
    "valid_base_points",
]


def membership(sigma, r, s):
    return json.loads(_arbor.membership_json(sigma, r, s))


def kernel(r, s, n, variant="tBp"):
    return json.loads(_arbor.kernel_json(r, s, n, variant))


def label(p, c, x0, depth=5):
    return json.loads(_arbor.label_json(p, c, x0, depth))


def frobenius(p, c, x0, depth=5, k=1):
    return json.loads(_arbor.frobenius_json(p, c, x0, depth, k))


def kummer(p, c, x0, r, s, k=1):
    return json.loads(_arbor.kummer_json(p, c, x0, r, s, k))


def homtest(seed, trials=1000, depth=5):
    return json.loads(_arbor.homtest_json(seed, trials, depth))
