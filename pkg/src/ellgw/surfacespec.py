"""Surface description files.

A minimal elliptic surface with p_g > 0 enters the generating functions only
through c_pi = chi(O_X) - 2*chi(O_C) and the multiplicities of its multiple
fibers.  Files are UTF-8 JSON::

    {"c_pi": 1, "multiplicities": [2, 3], "labels": ["A", "B"]}
    {"chi_X": 3, "base_genus": 0, "multiplicities": []}
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

__all__ = [
    "SurfaceSpec",
    "SpecError",
    "SpecParseError",
    "SpecValidationError",
    "SpecIOError",
    "spec_from_dict",
    "load_spec",
    "dump_spec",
]


class SpecError(Exception):
    """Base class for surface-spec problems."""


class SpecIOError(SpecError):
    pass


class SpecParseError(SpecError):
    pass


class SpecValidationError(SpecError):
    pass


@dataclass(frozen=True)
class SurfaceSpec:
    c_pi: int
    fibers: tuple = ()
    chi_X: Optional[int] = field(default=None, compare=False)
    base_genus: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        fibers = tuple((str(label), int(m)) for label, m in self.fibers)
        for label, m in fibers:
            if m < 2:
                raise SpecValidationError(f"fiber {label!r}: multiplicity must be >= 2, got {m}")
        object.__setattr__(self, "fibers", fibers)

    @classmethod
    def of(cls, c_pi: int, multiplicities=()) -> "SurfaceSpec":
        return cls(c_pi, tuple((f"F{i + 1}", m) for i, m in enumerate(multiplicities)))

    @property
    def multiplicities(self) -> tuple:
        return tuple(m for _, m in self.fibers)

    @property
    def labels(self) -> tuple:
        return tuple(label for label, _ in self.fibers)

    def to_dict(self) -> dict:
        out = {}
        if self.chi_X is not None:
            out["chi_X"] = self.chi_X
            out["base_genus"] = self.base_genus
        else:
            out["c_pi"] = self.c_pi
        out["multiplicities"] = list(self.multiplicities)
        out["labels"] = list(self.labels)
        return out


def _int_field(obj: dict, key: str) -> int:
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecValidationError(f"{key}: expected an integer, got {v!r}")
    return v


def spec_from_dict(obj) -> SurfaceSpec:
    if not isinstance(obj, dict):
        raise SpecValidationError("top level: expected a JSON object")
    known = {"c_pi", "chi_X", "base_genus", "multiplicities", "labels"}
    extra = sorted(set(obj) - known)
    if extra:
        raise SpecValidationError(f"top level: unknown keys {extra}")

    has_chi = "chi_X" in obj or "base_genus" in obj
    if has_chi and not ("chi_X" in obj and "base_genus" in obj):
        raise SpecValidationError("chi_X and base_genus must be given together")
    if not has_chi and "c_pi" not in obj:
        raise SpecValidationError("need either c_pi or chi_X + base_genus")

    chi_X = base_genus = None
    if has_chi:
        chi_X = _int_field(obj, "chi_X")
        base_genus = _int_field(obj, "base_genus")
        if base_genus < 0:
            raise SpecValidationError(f"base_genus: must be >= 0, got {base_genus}")
        c_pi = chi_X - 2 * (1 - base_genus)
        if "c_pi" in obj and _int_field(obj, "c_pi") != c_pi:
            raise SpecValidationError(
                f"c_pi: given {obj['c_pi']} but chi_X - 2*(1 - base_genus) = {c_pi}"
            )
    else:
        c_pi = _int_field(obj, "c_pi")

    mults = obj.get("multiplicities", [])
    if not isinstance(mults, list):
        raise SpecValidationError("multiplicities: expected a list")
    for i, m in enumerate(mults):
        if isinstance(m, bool) or not isinstance(m, int):
            raise SpecValidationError(f"multiplicities[{i}]: expected an integer, got {m!r}")
        if m < 2:
            raise SpecValidationError(f"multiplicities[{i}]: must be >= 2, got {m}")

    labels = obj.get("labels")
    if labels is None:
        labels = [f"F{i + 1}" for i in range(len(mults))]
    elif not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise SpecValidationError("labels: expected a list of strings")
    elif len(labels) != len(mults):
        raise SpecValidationError(
            f"labels: {len(labels)} labels for {len(mults)} multiplicities"
        )

    return SurfaceSpec(c_pi, tuple(zip(labels, mults)), chi_X, base_genus)


def load_spec(path) -> SurfaceSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise SpecIOError(f"{path}: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    try:
        return spec_from_dict(obj)
    except SpecValidationError as exc:
        raise SpecValidationError(f"{path}: {exc}") from exc


def dump_spec(spec: SurfaceSpec) -> str:
    return json.dumps(spec.to_dict(), indent=2, ensure_ascii=False) + "\n"
