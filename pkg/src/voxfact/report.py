"""Structured pass/fail reports for axiom and model checks."""
from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckReport:
    axiom: str
    passed: bool
    max_err: float = 0.0
    tol: float = 0.0
    witness: dict = field(default_factory=dict)
    truncation: dict = field(default_factory=dict)

    def to_obj(self):
        return {"axiom": self.axiom, "pass": self.passed,
                "max_err": self.max_err, "tol": self.tol,
                "witness": self.witness, "truncation": self.truncation}

    def to_json(self, **kw):
        return json.dumps(self.to_obj(), sort_keys=True, **kw)

    @classmethod
    def from_obj(cls, obj):
        return cls(axiom=obj["axiom"], passed=obj["pass"],
                   max_err=obj.get("max_err", 0.0), tol=obj.get("tol", 0.0),
                   witness=obj.get("witness", {}),
                   truncation=obj.get("truncation", {}))
