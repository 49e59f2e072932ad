"""Curvature profiles: the function triple (kappa, tau, sigma) on a domain.

A profile fixes the curve family and the curvature functions over an
arc-length interval [s_min, s_max]. Components are either expression
strings in s or monotone-cubic interpolants of sample tables; both are
plain callables afterwards, so every consumer treats them uniformly.

Family rules enforced by validate():

    partially null: kappa != 0 and tau != 0 on the domain
    pseudo null:    kappa identically 1, tau != 0 and sigma != 0

JSON form:

    {"kind": "partially_null" | "pseudo_null",
     "domain": [s_min, s_max],
     "kappa": "<expr>" | {"s": [...], "values": [...]},
     "tau": ..., "sigma": ..., "label": "..."}

kappa defaults to "1" for pseudo null profiles and sigma defaults to "0"
for partially null ones.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import OutOfDomainError, ProfileError
from .expr import Expr, Num, parse_expression
from .frames import FrameKind

log = logging.getLogger("lcl.profiles")

VALIDATION_SAMPLES = 257
_ZERO_TOL = 1e-9


class SampleTable:
    """Monotone cubic interpolant of (s, value) samples.

    Monotone (PCHIP) interpolation keeps sign behavior of the samples, so
    a strictly positive table cannot acquire spurious zero crossings.
    """

    def __init__(self, s, values):
        s = np.asarray(s, dtype=float)
        values = np.asarray(values, dtype=float)
        if s.ndim != 1 or s.shape != values.shape:
            raise ProfileError("sample table needs matching 1-d s and values")
        if s.shape[0] < 2:
            raise ProfileError("sample table needs at least two samples")
        if not np.all(np.diff(s) > 0):
            raise ProfileError("sample table s values must strictly increase")
        if not (np.all(np.isfinite(s)) and np.all(np.isfinite(values))):
            raise ProfileError("sample table entries must be finite")
        self.s = s
        self.values = values
        self._interp = PchipInterpolator(s, values, extrapolate=True)

    def __call__(self, x):
        out = self._interp(np.asarray(x, dtype=float))
        return float(out) if np.ndim(x) == 0 else out

    def to_jsonable(self):
        return {"s": self.s.tolist(), "values": self.values.tolist()}


Component = Union[Expr, SampleTable]


def _as_component(value, default: str | None = None) -> Component:
    if value is None:
        if default is None:
            raise ProfileError("missing curvature component")
        return parse_expression(default)
    if isinstance(value, (Expr, SampleTable)):
        return value
    if isinstance(value, str):
        return parse_expression(value)
    if isinstance(value, (int, float)):
        return Num(float(value))
    if isinstance(value, dict):
        try:
            return SampleTable(value["s"], value["values"])
        except KeyError as exc:
            raise ProfileError(f"sample table missing key {exc}") from None
    raise ProfileError(f"cannot interpret curvature component {value!r}")


def _component_jsonable(c: Component):
    return c.to_jsonable() if isinstance(c, SampleTable) else str(c)


@dataclass(frozen=True)
class CurvatureProfile:
    kind: FrameKind
    kappa: Component
    tau: Component
    sigma: Component
    s_min: float
    s_max: float
    label: str = ""

    @classmethod
    def create(cls, kind, kappa=None, tau=None, sigma=None,
               domain=(0.0, 1.0), label="") -> "CurvatureProfile":
        kind = FrameKind(kind) if not isinstance(kind, FrameKind) else kind
        s_min, s_max = float(domain[0]), float(domain[1])
        if not (np.isfinite(s_min) and np.isfinite(s_max)) or s_min >= s_max:
            raise ProfileError(f"bad domain [{s_min}, {s_max}]")
        kappa_default = "1" if kind is FrameKind.PSEUDO_NULL else None
        sigma_default = "0" if kind is FrameKind.PARTIALLY_NULL else None
        return cls(kind=kind,
                   kappa=_as_component(kappa, kappa_default),
                   tau=_as_component(tau),
                   sigma=_as_component(sigma, sigma_default),
                   s_min=s_min, s_max=s_max, label=label)

    @property
    def domain(self) -> tuple[float, float]:
        return (self.s_min, self.s_max)

    @property
    def span(self) -> float:
        return self.s_max - self.s_min

    def grid(self, n: int = 1001) -> np.ndarray:
        return np.linspace(self.s_min, self.s_max, n)

    def _check_domain(self, s):
        slack = 1e-12 * (1.0 + self.span)
        s = np.asarray(s, dtype=float)
        if np.any(s < self.s_min - slack) or np.any(s > self.s_max + slack):
            bad = s[(s < self.s_min - slack) | (s > self.s_max + slack)]
            first = bad.ravel()[0] if bad.ndim else float(bad)
            raise OutOfDomainError(
                f"s = {first} outside domain [{self.s_min}, {self.s_max}]")

    def evaluate(self, s: float) -> tuple[float, float, float]:
        """(kappa, tau, sigma) at one in-domain parameter value."""
        self._check_domain(s)
        return (float(self.kappa(s)), float(self.tau(s)), float(self.sigma(s)))

    def evaluate_arrays(self, s) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        self._check_domain(s)
        s = np.asarray(s, dtype=float)
        return (np.broadcast_to(np.asarray(self.kappa(s)), s.shape),
                np.broadcast_to(np.asarray(self.tau(s)), s.shape),
                np.broadcast_to(np.asarray(self.sigma(s)), s.shape))

    def validate(self, samples: int = VALIDATION_SAMPLES) -> None:
        """Raise ProfileError when a family rule fails on a sample grid.

        A sigma that vanishes somewhere only logs a warning: nothing in
        the checks divides by sigma, and useful reference profiles (the
        quadratic sigma/tau family on a wide interval, for one) cross
        zero harmlessly.
        """
        s = self.grid(samples)
        kappa, tau, sigma = self.evaluate_arrays(s)
        if self.kind is FrameKind.PARTIALLY_NULL:
            _require_nonzero(kappa, "kappa", self.label)
            _require_nonzero(tau, "tau", self.label)
        else:
            dev = np.max(np.abs(kappa - 1.0))
            if dev > _ZERO_TOL:
                raise ProfileError(
                    f"pseudo null profile requires kappa = 1, max deviation {dev:.3g}"
                    + (f" (profile {self.label!r})" if self.label else ""))
            _require_nonzero(tau, "tau", self.label)
            scale = 1.0 + float(np.max(np.abs(sigma)))
            if np.min(np.abs(sigma)) < _ZERO_TOL * scale:
                log.warning("sigma vanishes somewhere on the domain%s",
                            f" (profile {self.label!r})" if self.label else "")

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "domain": [self.s_min, self.s_max],
            "kappa": _component_jsonable(self.kappa),
            "tau": _component_jsonable(self.tau),
            "sigma": _component_jsonable(self.sigma),
            "label": self.label,
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "CurvatureProfile":
        if not isinstance(obj, dict):
            raise ProfileError(f"profile JSON must be an object, got {type(obj)}")
        try:
            kind = FrameKind(obj["kind"])
            domain = obj["domain"]
        except (KeyError, ValueError) as exc:
            raise ProfileError(f"bad profile JSON: {exc}") from None
        if not (isinstance(domain, (list, tuple)) and len(domain) == 2):
            raise ProfileError(f"bad profile domain {domain!r}")
        return cls.create(kind,
                          kappa=obj.get("kappa"),
                          tau=obj.get("tau"),
                          sigma=obj.get("sigma"),
                          domain=domain,
                          label=obj.get("label", ""))


def eval_profile(p: CurvatureProfile, s: float) -> tuple[float, float, float]:
    return p.evaluate(s)


def load_profile(path) -> CurvatureProfile:
    with open(path, "r", encoding="utf-8") as fh:
        return CurvatureProfile.from_json_dict(json.load(fh))


def save_profile(p: CurvatureProfile, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(p.to_json_dict(), fh, sort_keys=True, indent=2)
        fh.write("\n")


def _require_nonzero(values: np.ndarray, name: str, label: str) -> None:
    scale = 1.0 + float(np.max(np.abs(values)))
    suffix = f" (profile {label!r})" if label else ""
    if np.min(np.abs(values)) < _ZERO_TOL * scale:
        raise ProfileError(f"{name} vanishes on the domain{suffix}")
    if np.any(values[1:] * values[:-1] < 0.0):
        raise ProfileError(f"{name} changes sign on the domain{suffix}")
