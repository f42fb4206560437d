from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class Check:
    """One inequality or residual check: passes iff margin >= -tolerance.

    For an upper bound lhs <= rhs the margin is rhs - lhs. Ungated checks are
    informational (observed ratios, fitted constants) and never fail a run.
    """

    name: str
    anchor: str
    lhs: float
    rhs: float
    tolerance: float = 0.0
    gated: bool = True
    note: str = ''

    @property
    def margin(self):
        return float(self.rhs) - float(self.lhs)

    @property
    def passed(self):
        return self.margin >= -self.tolerance

    @classmethod
    def bound(cls, name, anchor, lhs, rhs, tolerance=0.0, **kwargs):
        return cls(name, anchor, float(lhs), float(rhs), float(tolerance), **kwargs)

    @classmethod
    def residual(cls, name, anchor, value, tolerance, **kwargs):
        """A residual that must stay at or below `tolerance`."""
        return cls(name, anchor, float(value), 0.0, float(tolerance), **kwargs)

    def as_dict(self):
        return {
            'name': self.name,
            'anchor': self.anchor,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'margin': self.margin,
            'tolerance': self.tolerance,
            'pass': self.passed,
            'gated': self.gated,
            'note': self.note,
        }


@dataclass
class CheckLedger:
    """Ordered collection of checks produced by one operation, plus named scalar findings."""

    title: str
    checks: list = field(default_factory=list)
    values: dict = field(default_factory=dict)

    def add(self, check):
        self.checks.append(check)
        return check

    def extend(self, checks):
        self.checks.extend(checks)

    def record(self, key, value):
        self.values[key] = value

    @property
    def passed(self):
        return all(c.passed for c in self.checks if c.gated)

    def failures(self):
        return [c for c in self.checks if c.gated and not c.passed]

    def find(self, name) -> Optional[Check]:
        return next((c for c in self.checks if c.name == name), None)

    def as_dict(self):
        return {
            'title': self.title,
            'pass': self.passed,
            'values': self.values,
            'checks': [c.as_dict() for c in self.checks],
        }


SUITE_ORDER = ('degree', 'half', 'small', 'vmo', 'kernel', 'sweep', 'r1', 'theorem3', 'norms')


@dataclass(frozen=True)
class SuiteConfig:
    """Validated suite selection; build it through core.forms.SuiteConfigForm."""

    suites: tuple
    seed: int = 0
    grid: int = 1024
    bandwidth: Optional[int] = None
    s: float = 0.25
    input: Optional[str] = None
    out: Optional[str] = None
    workers: Optional[int] = None

    @property
    def ordered_suites(self):
        return [name for name in SUITE_ORDER if name in self.suites]

    def environment(self):
        # worker count stays out so reports do not depend on it
        return {
            'suites': self.ordered_suites,
            'seed': self.seed,
            'grid': self.grid,
            'bandwidth': self.bandwidth if self.bandwidth is not None else self.grid // 2 - 1,
            's': self.s,
            'input': self.input,
        }


@dataclass
class VerificationReport:
    config: SuiteConfig
    ledgers: list = field(default_factory=list)
    artefacts: dict = field(default_factory=dict)

    def checks(self):
        """(suite title, check) pairs in report order."""
        return [(ledger.title, check) for ledger in self.ledgers for check in ledger.checks]

    @property
    def passed(self):
        return all(ledger.passed for ledger in self.ledgers)

    def summary(self):
        checks = [check for _, check in self.checks()]
        gated = [c for c in checks if c.gated]
        return {
            'total': len(checks),
            'gated': len(gated),
            'informational': len(checks) - len(gated),
            'passed': sum(1 for c in gated if c.passed),
            'failed': sum(1 for c in gated if not c.passed),
            'pass': self.passed,
        }

    def as_dict(self):
        return {
            'environment': self.config.environment(),
            'summary': self.summary(),
            'artefacts': self.artefacts,
            'suites': [ledger.as_dict() for ledger in self.ledgers],
        }
