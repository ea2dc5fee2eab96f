"""
Bound reports, run reports and their JSON/CSV export.

Every inequality check produces a BoundReport. Reports are assembled into a
plain dictionary with a deterministic ``results`` section and written
atomically (temporary file in the target directory, then ``os.replace``).
"""

import json
import logging
import math
import os
import tempfile
from dataclasses import dataclass, field, fields, is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

import numpy as np
import pandas as pd

from .config import BOUND_TOLERANCE


@dataclass
class BoundReport:
    """
    A named inequality instance.

    For a plain inequality ``lhs <= rhs`` leave ``middle`` unset. For a sandwich
    ``lhs <= middle <= rhs`` both halves must hold within ``tolerance``.
    """

    name: str
    lhs: float
    rhs: float
    middle: Optional[float] = None
    tolerance: float = BOUND_TOLERANCE
    witness: str = ""
    notes: List[str] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    holds: bool = field(init=False)

    def __post_init__(self):
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        if self.middle is not None:
            self.middle = float(self.middle)
        values = [self.lhs, self.rhs] + ([self.middle] if self.middle is not None else [])
        if any(math.isnan(v) for v in values):
            self.holds = False
        elif self.middle is None:
            self.holds = self.lhs <= self.rhs + self.tolerance
        else:
            self.holds = (self.lhs <= self.middle + self.tolerance
                          and self.middle <= self.rhs + self.tolerance)
        if not self.holds:
            logging.warning(f"Bound '{self.name}' violated: {self.describe()}")

    def describe(self) -> str:
        if self.middle is None:
            return f"{self.lhs!r} <= {self.rhs!r}"
        return f"{self.lhs!r} <= {self.middle!r} <= {self.rhs!r}"

    def to_dict(self) -> Dict[str, Any]:
        return to_jsonable({
            "name": self.name,
            "lhs": self.lhs,
            "middle": self.middle,
            "rhs": self.rhs,
            "holds": self.holds,
            "tolerance": self.tolerance,
            "witness": self.witness,
            "notes": list(self.notes),
            "details": self.details,
        })

    def to_row(self) -> Dict[str, Any]:
        """Flat record for tabular export."""
        return {
            "name": self.name,
            "lhs": self.lhs,
            "middle": self.middle,
            "rhs": self.rhs,
            "holds": self.holds,
            "tolerance": self.tolerance,
            "witness": self.witness,
            "notes": "; ".join(self.notes),
        }


def one_based(indices: Iterable[int]) -> List[int]:
    """Sorted 1-based copy of a set of 0-based indices, for humans."""
    return [int(i) + 1 for i in sorted(indices)]


def describe_sets(blocks: Iterable[Iterable[int]]) -> str:
    return " | ".join("{" + ",".join(str(v) for v in one_based(b)) + "}" for b in blocks)


def to_jsonable(obj: Any) -> Any:
    """Convert numpy scalars/arrays, sets, fractions, enums and dataclasses to JSON types."""
    if isinstance(obj, dict):
        return {str(key): to_jsonable(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(value) for value in obj]
    if isinstance(obj, (set, frozenset)):
        return [to_jsonable(value) for value in sorted(obj)]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(value) for value in obj.tolist()]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return float(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in fields(obj)}
    return obj


def build_report(command: str, argv: List[str], input_digest: str, config: Dict[str, Any],
                 results: Dict[str, Any], status: str, wall_time: float) -> Dict[str, Any]:
    """
    Assemble a self-contained run report.

    Only ``results`` is guaranteed byte-identical across runs with the same
    input and seed; ``wall_time`` sits outside it.
    """
    return {
        "command": command,
        "argv": list(argv),
        "input_sha256": input_digest,
        "config": to_jsonable(config),
        "status": status,
        "results": to_jsonable(results),
        "wall_time_seconds": round(float(wall_time), 6),
    }


def _float_text(value: float) -> str:
    if not math.isfinite(value):
        raise ValueError(f"Out of range float values are not JSON compliant: {value!r}")
    text = format(value, ".17g")
    return text if "." in text or "e" in text else text + ".0"


class ReportEncoder(json.JSONEncoder):
    """JSON encoder writing every float with 17 significant digits."""

    def iterencode(self, o, _one_shot=False):
        markers = {} if self.check_circular else None
        encoder = json.encoder.encode_basestring_ascii if self.ensure_ascii else json.encoder.encode_basestring
        indent = " " * self.indent if isinstance(self.indent, int) else self.indent
        return json.encoder._make_iterencode(
            markers, self.default, encoder, indent, _float_text, self.key_separator,
            self.item_separator, self.sort_keys, self.skipkeys, _one_shot,
        )(o, 0)


def serialize_report(report: Dict[str, Any]) -> str:
    return json.dumps(report, cls=ReportEncoder, indent=2, ensure_ascii=False) + "\n"


def _atomic_write(path: str, writer):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            writer(handle)
        os.replace(tmp_path, path)
    except Exception:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def write_report(report: Dict[str, Any], path: str):
    """Write a report as JSON, atomically."""
    text = serialize_report(report)
    _atomic_write(path, lambda handle: handle.write(text))
    logging.info(f"Report saved to {path}")


def bounds_frame(bounds: Iterable[BoundReport]) -> pd.DataFrame:
    rows = [bound.to_row() for bound in bounds]
    columns = ["name", "lhs", "middle", "rhs", "holds", "tolerance", "witness", "notes"]
    return pd.DataFrame(rows, columns=columns)


def export_bounds_csv(bounds: Iterable[BoundReport], path: str):
    """Write bound reports as a CSV table, atomically."""
    df = bounds_frame(bounds)
    _atomic_write(path, lambda handle: df.to_csv(handle, index=False))
    logging.info(f"Exported {len(df)} bound records to {path}")
