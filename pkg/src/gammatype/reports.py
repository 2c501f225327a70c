"""Result records shared by the evaluation and scanning modules."""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass, field


class Certificate(str, enum.Enum):
    GRID_WITNESS = "GridWitness"
    RIGOROUS_NEGATIVE = "RigorousNegative"


@dataclass
class ScanReport:
    """Minimum of a function over a logarithmic grid on ``(0, t_max]``."""

    min_value: float
    argmin: float
    grid: dict
    certified: Certificate
    est_error: float = 0.0
    points: list = field(default_factory=list, repr=False)
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "min_value": self.min_value,
            "argmin": self.argmin,
            "grid": dict(self.grid),
            "certified": self.certified.value,
            "est_error": self.est_error,
            "diagnostics": dict(self.diagnostics),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "value", "est_error"])
        for t, v, e in self.points:
            w.writerow([repr(float(t)), repr(float(v)), repr(float(e))])
        return buf.getvalue()
