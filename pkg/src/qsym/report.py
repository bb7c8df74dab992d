"""Per-check report records shared by every verification suite."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

PASS, FAIL = "pass", "fail"


@dataclass
class VerificationReport:
    """Outcome of one check at one parameter point.

    ``detail`` is None on pass; on failure it names the first differing
    monomial and renders both coefficients.  ``flags`` holds informational
    findings (printed typos, reading notes) that never change ``status``.
    """

    suite: str
    id: str
    params: dict
    status: str
    detail: dict | None = None
    flags: list = field(default_factory=list)
    millis: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def sort_key(self) -> tuple:
        params = tuple((k, tuple(v) if isinstance(v, list) else v) for k, v in sorted(self.params.items()))
        return (self.suite, self.id, params)

    def to_dict(self, timing: bool = False) -> dict:
        return {
            "suite": self.suite,
            "params": {"id": self.id, **self.params},
            "status": self.status,
            "detail": self.detail,
            "flags": self.flags,
            "millis": round(self.millis, 3) if timing else None,
        }


class Clock:
    """Wall time of a with-block in milliseconds."""

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.millis = (time.perf_counter() - self.start) * 1000.0
