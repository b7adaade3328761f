"""Deterministic verification reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


def jsonable(v):
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    return v


@dataclass
class Report:
    check: str
    witnesses: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def status(self):
        return "pass" if not self.witnesses else "fail"

    @property
    def ok(self):
        return not self.witnesses

    def __len__(self):
        return len(self.witnesses)

    def sort(self):
        self.witnesses.sort(key=lambda w: json.dumps(jsonable(w), sort_keys=True))
        return self

    def to_dict(self):
        return {
            "check": self.check,
            "status": self.status,
            "witnesses": jsonable(self.witnesses),
            "counts": jsonable(self.counts),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def merge(check, reports):
    """Combine sub-reports, prefixing counts with each sub-check name."""
    out = Report(check)
    for r in reports:
        out.witnesses.extend(dict(w, check=w.get("check", r.check)) for w in r.witnesses)
        for k, v in r.counts.items():
            out.counts[f"{r.check}.{k}"] = v
    return out.sort()
