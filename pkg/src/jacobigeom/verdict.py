"""Pass/fail values shared by all verifiers."""


class Check:
    """One identity check: id, short statement, outcome, certificate level."""

    __slots__ = ("id", "statement", "passed", "level", "residual", "points")

    def __init__(self, id, statement, passed, level="symbolic", residual="", points=None):
        self.id = id
        self.statement = statement
        self.passed = bool(passed)
        self.level = level
        self.residual = residual if not passed else ""
        self.points = points or []

    def to_dict(self):
        d = {"id": self.id, "statement": self.statement,
             "verdict": "pass" if self.passed else "fail", "level": self.level}
        if self.residual:
            d["residual"] = self.residual
        if self.points:
            d["points"] = [[str(c) for c in p] for p in self.points]
        return d

    def __repr__(self):
        return "Check(%s: %s)" % (self.id, "pass" if self.passed else "fail")


class Verdict:
    """Ordered list of checks; passes iff every check passes."""

    def __init__(self, name, checks=None, data=None):
        self.name = name
        self.checks = list(checks or [])
        self.data = dict(data or {})

    def add(self, id, statement, passed, level="symbolic", residual="", points=None):
        c = Check(id, statement, passed, level, residual, points)
        self.checks.append(c)
        return c

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.statement, c.passed, c.level,
                                     c.residual, c.points))
        return self

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def level(self):
        return "pointwise" if any(c.level == "pointwise" for c in self.checks) else "symbolic"

    def to_dict(self):
        return {"name": self.name, "verdict": "pass" if self.passed else "fail",
                "level": self.level(), "checks": [c.to_dict() for c in self.checks]}

    def __repr__(self):
        return "Verdict(%s: %s, %d checks)" % (self.name, "pass" if self.passed else "fail",
                                                len(self.checks))


def zero_check(verdict, id, statement, residual):
    """Record that ``residual`` (ExpPoly or tensor) vanishes identically."""
    ok = residual.is_zero()
    verdict.add(id, statement, ok, "symbolic", "" if ok else str(residual))
    return ok
