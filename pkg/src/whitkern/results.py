from dataclasses import dataclass, field


@dataclass
class CheckResult:
    """One identity or property check: both sides, residual and tolerance."""
    name: str
    params: dict
    lhs: float
    rhs: float
    residual: float
    tol: float
    extra: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(self.residual <= self.tol)

    def row(self):
        return {"identity": self.name, **{f"p_{k}": v for k, v in self.params.items()},
                "lhs": self.lhs, "rhs": self.rhs, "residual": self.residual,
                "tol": self.tol, "pass": self.passed}


def rel_err(a, b):
    a, b = float(a), float(b)
    return abs(a - b) / max(abs(a), abs(b), 1e-300)
