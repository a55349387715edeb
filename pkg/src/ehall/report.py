"""Verification reports shared by the relation suites."""

from __future__ import annotations

from dataclasses import dataclass, field

from .fock import matrices_equal, first_difference


@dataclass
class Report:
    relation: str
    parameters: dict
    degrees: int
    entries: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    def add(self, identity, params, ok, witness=None):
        self.entries.append({"identity": identity, "params": params, "status": "pass" if ok else "fail",
                             "witness": witness})

    @property
    def ok(self):
        return all(e["status"] == "pass" for e in self.entries)

    @property
    def status(self):
        return "pass" if self.ok else "fail"

    def witness(self):
        for e in self.entries:
            if e["status"] == "fail":
                return {"identity": e["identity"], "params": e["params"], "difference": e["witness"]}
        return None

    def to_json(self):
        out = {
            "relation": self.relation,
            "parameters": self.parameters,
            "degrees": self.degrees,
            "status": self.status,
            "witness": self.witness(),
            "checked": len(self.entries),
        }
        out.update(self.extra)
        return out


def compare(report, identity, params, lhs, rhs, degree, start=0):
    """Record whether lhs and rhs agree on all source degrees start..degree."""
    for n in range(start, degree + 1):
        if not matrices_equal(lhs, rhs, n):
            d = first_difference(lhs, rhs, n)
            report.add(identity, params, False, {"degree": n, "entry": d})
            return False
    report.add(identity, params, True)
    return True
