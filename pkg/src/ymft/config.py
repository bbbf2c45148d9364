"""JSON run-configuration schema: validation and object construction.

Configs are plain JSON with explicit dimensions and row-major flattened
tensors.  Validation is strict: unknown keys are rejected and every tensor
array is length-checked against the declared dimensions, so a malformed
config never reaches the numerical layers.
"""

from __future__ import annotations

import json

import numpy as np

from . import lie_core
from .deformations import (DeformationSet, family_e_only, family_general,
                           family_solvable, family_su2, make_deformation)
from .dynamics import (DEFAULT_TOLS, EONLY, GENERAL, LINEAR, TheoryVariant,
                       variant_e_only, variant_general, variant_linear)
from .lie_core import InternalSpace, StructureConstants


class ConfigError(ValueError):
    """Schema violation in a run configuration."""


_TOP_KEYS = {"algebra", "deformation", "jet", "checks", "tolerances",
             "observables", "variant", "output"}
_ALGEBRA_KEYS = {"dim", "family", "inner_product", "structure_constants"}
_DEFORM_KEYS = {"family", "mass", "lambda", "v", "w", "cmap", "e", "dims",
                "a", "b", "j", "k", "inner_product_a", "inner_product_b",
                "mass_matrix", "h0", "mass_value"}
_JET_KEYS = {"degree", "amplitude", "seeds"}
_TOL_KEYS = {"linear", "polynomial", "composite", "constraints"}
_OBS_KEYS = {"sampler", "parameter", "center", "radius", "grid", "points",
             "causality_samples", "checks"}
_CHECK_NAMES = {"gauge-invariance", "noether", "strength-identities",
                "commutators", "linearization", "euler-lagrange",
                "strength-transformation"}
_ALGEBRA_FAMILIES = {"su2", "su11", "abelian"}
_DEFORM_FAMILIES = {"su2", "solvable", "e_only", "linear", "explicit",
                    "general"}
_SAMPLERS = {"coulomb", "radial-magnetic", "uniform-scalar", "zero"}


def _require_keys(section: dict, allowed: set, where: str):
    if not isinstance(section, dict):
        raise ConfigError(f"{where} must be an object")
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown keys in {where}: {sorted(unknown)}")


def _tensor(section: dict, key: str, shape: tuple, where: str,
            default=None) -> np.ndarray:
    if key not in section:
        if default is not None:
            return default
        raise ConfigError(f"{where}.{key} is required")
    flat = section[key]
    size = int(np.prod(shape))
    if not isinstance(flat, list) or len(flat) != size:
        raise ConfigError(f"{where}.{key} must be a flat list of length "
                          f"{size} (row-major for shape {shape})")
    try:
        return np.array([float(x) for x in flat]).reshape(shape)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{where}.{key}: {exc}") from None


class RunConfig:
    """Validated run configuration."""

    def __init__(self, raw: dict):
        if not isinstance(raw, dict):
            raise ConfigError("top-level config must be an object")
        _require_keys(raw, _TOP_KEYS, "config")
        self.raw = raw
        self.jet = dict(degree=3, amplitude=0.1, seeds=list(range(1, 6)))
        if "jet" in raw:
            _require_keys(raw["jet"], _JET_KEYS, "jet")
            self.jet.update(raw["jet"])
        if not isinstance(self.jet["seeds"], list) or \
                not all(isinstance(s, int) for s in self.jet["seeds"]):
            raise ConfigError("jet.seeds must be a list of integers")
        if not isinstance(self.jet["degree"], int) or self.jet["degree"] < 1:
            raise ConfigError("jet.degree must be a positive integer")

        self.tolerances = dict(DEFAULT_TOLS, constraints=1e-10)
        if "tolerances" in raw:
            _require_keys(raw["tolerances"], _TOL_KEYS, "tolerances")
            for key, val in raw["tolerances"].items():
                self.tolerances[key] = float(val)

        self.checks = raw.get("checks")
        if self.checks is not None:
            if not isinstance(self.checks, list):
                raise ConfigError("checks must be a list")
            unknown = set(self.checks) - _CHECK_NAMES
            if unknown:
                raise ConfigError(f"unknown checks: {sorted(unknown)}")

        self.output = raw.get("output")
        self.variant_kind = raw.get("variant")
        if self.variant_kind is not None and \
                self.variant_kind not in (LINEAR, GENERAL, EONLY):
            raise ConfigError(f"unknown variant {self.variant_kind!r}")

        if "algebra" in raw:
            _require_keys(raw["algebra"], _ALGEBRA_KEYS, "algebra")
        if "deformation" in raw:
            _require_keys(raw["deformation"], _DEFORM_KEYS, "deformation")
        if "observables" in raw:
            _require_keys(raw["observables"], _OBS_KEYS, "observables")
            sampler = raw["observables"].get("sampler", "coulomb")
            if sampler not in _SAMPLERS:
                raise ConfigError(f"unknown sampler {sampler!r}")

    # -- builders ----------------------------------------------------------

    def structure_constants(self) -> StructureConstants:
        section = self.raw.get("algebra")
        if section is None:
            raise ConfigError("config has no algebra section")
        family = section.get("family")
        if family is not None:
            if family not in _ALGEBRA_FAMILIES:
                raise ConfigError(f"unknown algebra family {family!r}")
            return {"su2": lie_core.su2, "su11": lie_core.su11,
                    "abelian": lambda: lie_core.abelian(
                        section.get("dim", 3))}[family]()
        dim = section.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise ConfigError("algebra.dim must be a positive integer")
        metric = _tensor(section, "inner_product", (dim, dim), "algebra",
                         default=np.eye(dim))
        c = _tensor(section, "structure_constants", (dim, dim, dim),
                    "algebra")
        return StructureConstants(InternalSpace(dim, metric), c)

    def deformation(self) -> DeformationSet:
        section = self.raw.get("deformation")
        if section is None:
            raise ConfigError("config has no deformation section")
        family = section.get("family")
        if family not in _DEFORM_FAMILIES:
            raise ConfigError(f"unknown deformation family {family!r}")
        if family == "su2":
            return family_su2(float(section.get("mass", 0.0)),
                              float(section.get("lambda", 1.0)))
        if family == "solvable":
            v = _tensor(section, "v", (3,), "deformation")
            w = _tensor(section, "w", (3,), "deformation")
            cmap = _tensor(section, "cmap", (3, 3), "deformation",
                           default=np.zeros((3, 3)))
            return family_solvable(v, w, cmap)
        if family == "e_only":
            dims = section.get("dims")
            if (not isinstance(dims, list) or len(dims) != 2
                    or not all(isinstance(d, int) for d in dims)):
                raise ConfigError("deformation.dims must be [dim A, dim A']")
            n, m = dims
            e = _tensor(section, "e", (m, n, n), "deformation")
            return family_e_only(e)
        if family == "general":
            massless = lie_core.su2()
            h0 = _tensor(section, "h0", (3, 3), "deformation",
                         default=np.eye(3))
            mass_value = float(section.get("mass_value", 1.0))
            return family_general(massless_a=massless,
                                  massless_b=lie_core.su2(), h0=h0,
                                  massive=lie_core.abelian(1),
                                  mass_value=mass_value)
        dims = section.get("dims")
        if (not isinstance(dims, list) or len(dims) != 2
                or not all(isinstance(d, int) for d in dims)):
            raise ConfigError("deformation.dims must be [dim A, dim A']")
        n, m = dims
        mass = _tensor(section, "mass_matrix", (n, m), "deformation",
                       default=np.zeros((n, m)))
        if family == "linear":
            z = np.zeros
            return make_deformation(
                InternalSpace(n), InternalSpace(m), z((n, n, n)),
                z((n, m, n)), z((m, n, m)), z((m, m, m)), z((m, n, n)),
                mass, label="linear")
        ga = _tensor(section, "inner_product_a", (n, n), "deformation",
                     default=np.eye(n))
        gb = _tensor(section, "inner_product_b", (m, m), "deformation",
                     default=np.eye(m))
        return make_deformation(
            InternalSpace(n, ga), InternalSpace(m, gb),
            _tensor(section, "a", (n, n, n), "deformation"),
            _tensor(section, "b", (n, m, n), "deformation"),
            _tensor(section, "j", (m, n, m), "deformation"),
            _tensor(section, "k", (m, m, m), "deformation"),
            _tensor(section, "e", (m, n, n), "deformation",
                    default=np.zeros((m, n, n))),
            mass, label="explicit")

    def variant(self) -> TheoryVariant:
        ds = self.deformation()
        kind = self.variant_kind
        if kind is None:
            family = self.raw["deformation"].get("family")
            kind = {"linear": LINEAR, "e_only": EONLY}.get(family, GENERAL)
        if kind == LINEAR:
            return variant_linear(ds.mass.m, space_a=ds.space_a,
                                  space_b=ds.space_b)
        if kind == EONLY:
            return variant_e_only(ds)
        return variant_general(ds)

    def observables_section(self) -> dict:
        section = dict(sampler="coulomb", parameter=1.0, radius=2.0,
                       grid=[64, 128], points=256, causality_samples=1000,
                       checks=["charge", "causality", "trace"])
        section.update(self.raw.get("observables", {}))
        return section


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as handle:
            raw = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from None
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return RunConfig(raw)
