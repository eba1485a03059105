"""Check records shared by the verification routines and the CLI."""
from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    value: float
    tol: float
    passed: bool = field(init=False)
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        self.passed = bool(math.isfinite(self.value) and self.value <= self.tol)

    def to_json(self) -> dict:
        return {"name": self.name, "residual": _round(self.value), "tol": self.tol,
                "pass": self.passed, **({"detail": clean(self.detail)} if self.detail else {})}


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, value: float, tol: float, **detail) -> Check:
        c = Check(name, float(value), tol, detail)
        self.checks.append(c)
        return c

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def worst(self) -> float:
        return max((c.value for c in self.checks), default=0.0)

    def to_json(self) -> dict:
        return {"title": self.title, "pass": self.passed, "meta": clean(self.meta),
                "checks": [c.to_json() for c in self.checks]}


def _round(x: float) -> float:
    # 12 significant digits keeps reports stable across BLAS summation order
    return float(f"{x:.12g}")


def clean(obj):
    """Recursively round floats so that serialized reports are reproducible."""
    if isinstance(obj, float):
        return _round(obj) if math.isfinite(obj) else str(obj)
    if isinstance(obj, dict):
        return {str(k): clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean(v) for v in obj]
    return obj
