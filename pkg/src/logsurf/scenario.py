"""Scenario files: a surface lattice, a curve, its resolution and assertions.

Scenarios are JSON.  Rationals are written as integers or as strings
"p/q"; floating-point literals are rejected at parse time so that no
inexact number can reach the arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .errors import InputError
from .lattice import Divisor, SurfaceModel, to_rational
from .resolution import ResolutionDatum, make_datum

ASSERTION_FLAGS = ("kappa_nonneg", "nef", "big")
COMMANDS = ("zariski", "adjunction", "bmy", "bound", "p2")


@dataclass(frozen=True)
class PlaneData:
    d1: int
    d2: int
    d: int
    g: int
    m: int
    lambda0: Fraction | None = None


@dataclass(frozen=True)
class Scenario:
    name: str
    surface: SurfaceModel | None = None
    curve: Divisor | None = None
    datum: ResolutionDatum | None = None
    divisor: Divisor | None = None
    support: tuple[str, ...] | None = None
    alpha: Fraction | None = None
    assertions: frozenset[str] = frozenset()
    kd_representative: Divisor | None = None
    command: str | None = None
    bound_kind: str | None = None
    plane: PlaneData | None = None
    description: str = ""
    raw: Mapping[str, Any] = field(default_factory=dict, compare=False, repr=False)

    def asserts(self, flag: str) -> bool:
        return flag in self.assertions

    def require_surface(self) -> SurfaceModel:
        if self.surface is None:
            raise InputError(f"scenario {self.name!r} has no surface")
        return self.surface

    def require_curve(self) -> tuple[SurfaceModel, ResolutionDatum, Divisor]:
        model = self.require_surface()
        if self.curve is None or self.datum is None:
            raise InputError(f"scenario {self.name!r} has no curve")
        return model, self.datum, self.curve


def _reject_float(text: str) -> Any:
    raise InputError(f"floating-point literal {text} is not allowed; write a fraction string")


def _divisor(obj: Any, where: str) -> Divisor:
    if not isinstance(obj, Mapping):
        raise InputError(f"{where} must be an object mapping class names to coefficients")
    try:
        return Divisor({str(k): to_rational(v) for k, v in obj.items()})
    except (TypeError, ValueError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def _int(obj: Any, where: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, int):
        raise InputError(f"{where} must be an integer")
    return obj


def _surface(obj: Any) -> SurfaceModel:
    if not isinstance(obj, Mapping):
        raise InputError("surface must be an object")
    classes = obj.get("classes")
    matrix = obj.get("intersection")
    if not isinstance(classes, list) or not all(isinstance(c, str) for c in classes):
        raise InputError("surface.classes must be a list of names")
    if not isinstance(matrix, list) or not all(isinstance(r, list) for r in matrix):
        raise InputError("surface.intersection must be a list of rows")
    try:
        rows = tuple(tuple(to_rational(v) for v in r) for r in matrix)
    except (TypeError, ValueError) as exc:
        raise InputError(f"surface.intersection: {exc}") from exc
    boundary = obj.get("boundary", {})
    if not isinstance(boundary, Mapping):
        raise InputError("surface.boundary must map components to genera")
    return SurfaceModel(
        classes=tuple(classes),
        intersection=rows,
        canonical=_divisor(obj.get("canonical", {}), "surface.canonical"),
        euler_top=_int(obj.get("euler_top", 0), "surface.euler_top"),
        boundary={str(k): _int(v, f"genus of {k}") for k, v in boundary.items()},
    )


def _plane(obj: Any) -> PlaneData:
    if not isinstance(obj, Mapping):
        raise InputError("p2 must be an object")
    vals = {k: _int(obj.get(k), f"p2.{k}") for k in ("d1", "d2", "d", "g", "m")}
    lam0 = obj.get("lambda0")
    return PlaneData(**vals, lambda0=None if lam0 is None else to_rational(lam0))


def scenario_from_dict(obj: Mapping[str, Any], name: str = "scenario") -> Scenario:
    if not isinstance(obj, Mapping):
        raise InputError("scenario must be a JSON object")
    name = str(obj.get("name", name))
    surface = _surface(obj["surface"]) if "surface" in obj else None

    curve = datum = None
    if "curve" in obj:
        c = obj["curve"]
        if not isinstance(c, Mapping) or "class" not in c:
            raise InputError("curve needs a class")
        curve = _divisor(c["class"], "curve.class")
        genus = _int(c.get("genus", 0), "curve.genus")
        if genus < 0:
            raise InputError("curve.genus must be >= 0")
        res = obj.get("resolution", {})
        centers = res.get("centers", []) if isinstance(res, Mapping) else None
        if not isinstance(centers, list):
            raise InputError("resolution.centers must be a list")
        try:
            datum = make_datum(centers, genus)
        except (TypeError, AttributeError) as exc:
            raise InputError(f"resolution: {exc}") from exc
        if surface is not None:
            surface.check_divisor(curve)

    divisor = _divisor(obj["divisor"], "divisor") if "divisor" in obj else None
    if divisor is not None and surface is not None:
        surface.check_divisor(divisor)
    support = obj.get("support")
    if support is not None:
        if not isinstance(support, list) or not all(isinstance(s, str) for s in support):
            raise InputError("support must be a list of class names")
        support = tuple(support)

    alpha = obj.get("alpha")
    if alpha is not None:
        try:
            alpha = to_rational(alpha)
        except (TypeError, ValueError) as exc:
            raise InputError(f"alpha: {exc}") from exc

    assertions_obj = obj.get("assertions", {})
    if not isinstance(assertions_obj, Mapping):
        raise InputError("assertions must be an object")
    flags = set()
    for key, value in assertions_obj.items():
        if key == "kd_representative":
            continue
        if key not in ASSERTION_FLAGS:
            raise InputError(f"unknown assertion {key!r}")
        if not isinstance(value, bool):
            raise InputError(f"assertion {key} must be true or false")
        if value:
            flags.add(key)
    rep = assertions_obj.get("kd_representative")
    if rep is not None:
        rep = _divisor(rep, "assertions.kd_representative")

    command = obj.get("command")
    if command is not None and command not in COMMANDS:
        raise InputError(f"unknown command {command!r}")
    return Scenario(
        name=name,
        surface=surface,
        curve=curve,
        datum=datum,
        divisor=divisor,
        support=support,
        alpha=alpha,
        assertions=frozenset(flags),
        kd_representative=rep,
        command=command,
        bound_kind=obj.get("bound"),
        plane=_plane(obj["p2"]) if "p2" in obj else None,
        description=str(obj.get("description", "")),
        raw=dict(obj),
    )


def loads(text: str, name: str = "scenario") -> Scenario:
    try:
        obj = json.loads(text, parse_float=_reject_float, parse_constant=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    return scenario_from_dict(obj, name)


def load(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return loads(text, name=path.stem)
