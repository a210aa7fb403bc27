"""Check reports: an (lhs, rhs) pair plus the relation they must satisfy."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

RELATIONS = ("ge", "le", "eq", "finite")


def _clean(x):
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if hasattr(x, "item"):
        return _clean(x.item())
    return x


@dataclass(frozen=True)
class InequalityReport:
    """Outcome of one numerical check.

    ``relation`` reads as ``lhs <relation> rhs`` with slack ``tol * |rhs|``;
    ``eq`` means relative agreement within ``tol``.  ``passed`` is recomputed
    on every access, never stored.
    """

    name: str
    lhs: float
    rhs: float
    relation: str = "ge"
    tol: float = 0.0
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.relation not in RELATIONS:
            raise ValueError(f"relation must be one of {RELATIONS}")
        object.__setattr__(self, "lhs", float(self.lhs))
        object.__setattr__(self, "rhs", float(self.rhs))

    @property
    def ratio(self) -> float | None:
        if self.rhs == 0.0 or not math.isfinite(self.rhs):
            return None
        return self.lhs / self.rhs

    @property
    def passed(self) -> bool:
        lhs, rhs, slack = self.lhs, self.rhs, self.tol * abs(self.rhs)
        if not math.isfinite(lhs):
            return False
        if self.relation == "finite":
            return True
        if self.relation == "ge":
            return lhs >= rhs - slack
        if self.relation == "le":
            return lhs <= rhs + slack
        return abs(lhs - rhs) <= slack

    def to_dict(self) -> dict[str, Any]:
        return _clean(
            {
                "name": self.name,
                "lhs": self.lhs,
                "rhs": self.rhs,
                "ratio": self.ratio,
                "relation": self.relation,
                "tol": self.tol,
                "pass": self.passed,
                "meta": dict(self.meta),
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)
