"""Multi-valued maps on finite spaces: m-homotopy, tmc, catm and msecat.

Spaces are model recipes ("circle4", "cone:fence:2") or dicts
{"points": [...], "min_open": {label: [...]}}. Maps are dicts
{"dom": space, "cod": space, "values": {label: [...]}} or
{"model": "antipodal", "space": "circle4"}. Results are plain dicts.
"""

import json as _json

from . import _mvtop
from ._mvtop import MvtopError

DEFAULT_BUDGET = _mvtop.default_budget

__all__ = [
    "MvtopError", "space", "map", "open_sets", "is_open", "closure", "is_pathwise_connected",
    "semicontinuity", "classify", "one_step", "homotopy", "null_homotopy", "contractible",
    "catm", "tmc", "dm", "catm_map", "tmc_map", "msecat", "fibration_certificate", "catalog",
]


def _enc(desc):
    return _json.dumps(desc)


def space(desc):
    """Normalised JSON table of a space."""
    return _json.loads(_mvtop.space_json(_enc(desc)))


def map(desc):  # noqa: A001
    return _json.loads(_mvtop.map_json(_enc(desc)))


def open_sets(desc):
    return _mvtop.open_sets(_enc(desc))


def is_open(desc, points):
    return _mvtop.is_open(_enc(desc), list(points))


def closure(desc, points):
    return _mvtop.closure(_enc(desc), list(points))


def is_pathwise_connected(desc):
    return _mvtop.is_pathwise_connected(_enc(desc))


def semicontinuity(f):
    return _json.loads(_mvtop.semicontinuity(_enc(f)))


def classify(f):
    return _json.loads(_mvtop.classify(_enc(f)))


def one_step(f, g):
    return _mvtop.one_step(_enc(f), _enc(g))


def homotopy(f, g, budget=DEFAULT_BUDGET, mode="comparable"):
    return _json.loads(_mvtop.homotopy(_enc(f), _enc(g), budget, mode))


def null_homotopy(f, budget=DEFAULT_BUDGET, mode="comparable"):
    return _json.loads(_mvtop.null_homotopy(_enc(f), budget, mode))


def contractible(x, budget=DEFAULT_BUDGET, mode="comparable"):
    return _json.loads(_mvtop.contractible(_enc(x), budget, mode))


def catm(x, budget=DEFAULT_BUDGET, mode="core", threads=1):
    return _json.loads(_mvtop.catm(_enc(x), budget, mode, threads))


def tmc(x, budget=DEFAULT_BUDGET, mode="core", threads=1):
    return _json.loads(_mvtop.tmc(_enc(x), budget, mode, threads))


def dm(f, g, budget=DEFAULT_BUDGET, mode="core", threads=1):
    return _json.loads(_mvtop.dm(_enc(f), _enc(g), budget, mode, threads))


def catm_map(f, budget=DEFAULT_BUDGET, mode="core", threads=1):
    return _json.loads(_mvtop.catm_map(_enc(f), budget, mode, threads))


def tmc_map(f, codomain="paired", budget=DEFAULT_BUDGET, mode="core", threads=1):
    return _json.loads(_mvtop.tmc_map(_enc(f), codomain, budget, mode, threads))


def msecat(f, budget=DEFAULT_BUDGET, mode="core", threads=1):
    return _json.loads(_mvtop.msecat(_enc(f), budget, mode, threads))


def fibration_certificate(f):
    return _mvtop.fibration_certificate(_enc(f))


def catalog():
    return dict(_mvtop.catalog())
