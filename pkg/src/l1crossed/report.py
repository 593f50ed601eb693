"""Check results, verification reports, and their JSON/CSV serialization.

Floats are written with Python's shortest round-trip ``repr`` (what ``json``
does by default), so identical numbers always serialize to identical bytes.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__

CSV_HEADER = ("sample_index", "eigenvalue_re", "eigenvalue_im", "method")

PASS, FAIL, INCONCLUSIVE, EVIDENCE = "pass", "fail", "inconclusive", "evidence"


@dataclass
class CheckResult:
    """Outcome of one named check.

    ``spectra`` holds ``(sample_index, eigenvalues, method)`` triples for the
    optional CSV dump; it is not part of the JSON report.
    """

    check: str
    status: str
    witnesses: dict = field(default_factory=dict)
    spectra: list = field(default_factory=list, repr=False)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return {"check": self.check, "status": self.status, "witnesses": _plain(self.witnesses)}


@dataclass
class VerificationReport:
    config: dict
    results: list[CheckResult]
    seed: int
    timing_ms: Optional[float] = None

    @property
    def exit_code(self) -> int:
        """0 iff every check that is not evidence passed."""
        return 0 if all(r.status in (PASS, EVIDENCE) for r in self.results) else 1

    def to_dict(self) -> dict:
        out = {
            "version": __version__,
            "seed": self.seed,
            "config": self.config,
            "results": [r.to_dict() for r in self.results],
        }
        if self.timing_ms is not None:
            out["timing_ms"] = self.timing_ms
        return out


def _plain(obj):
    """Convert numpy scalars/arrays and complex numbers into JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (complex, np.complexfloating)):
        return [_plain(float(obj.real)), _plain(float(obj.imag))]
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        if math.isnan(x) or math.isinf(x):
            return str(x)
        return x
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


def report_json(report: VerificationReport) -> str:
    return json.dumps(report.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"


def spectra_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for result in report.results:
        for index, eigenvalues, method in result.spectra:
            for lam in eigenvalues:
                writer.writerow([index, repr(float(lam.real)), repr(float(lam.imag)), method])
    return buf.getvalue()


def emit_report(report: VerificationReport, path, csv_path=None) -> None:
    Path(path).write_text(report_json(report), encoding="utf-8")
    if csv_path is not None:
        Path(csv_path).write_text(spectra_csv(report), encoding="utf-8")
