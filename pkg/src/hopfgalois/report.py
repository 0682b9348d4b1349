"""Pass/fail records produced by the verifiers."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator


@dataclass
class Check:
    id: str
    passed: bool
    witness: tuple | None = None
    detail: str = ""
    elapsed: float | None = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    flags: dict = field(default_factory=dict)

    def add(self, check_id: str, witness=None, detail: str = "", passed: bool | None = None) -> Check:
        """Record a check; it passes iff no witness is given (unless overridden)."""
        if passed is None:
            passed = witness is None
        if not passed and witness is None:
            witness = ()
        c = Check(check_id, passed, None if witness is None else tuple(witness), detail)
        self.checks.append(c)
        return c

    @contextmanager
    def timed(self) -> Iterator[None]:
        start = len(self.checks)
        t0 = time.perf_counter()
        yield
        dt = time.perf_counter() - t0
        for c in self.checks[start:]:
            c.elapsed = dt

    def extend(self, other: "Report", prefix: str = "") -> "Report":
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.passed, c.witness, c.detail, c.elapsed))
        for k, v in other.flags.items():
            self.flags[prefix + k] = v
        return self

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, check_id: str) -> Check:
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def __contains__(self, check_id: str) -> bool:
        return any(c.id == check_id for c in self.checks)

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)
