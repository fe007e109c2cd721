"""Check/report containers shared by every verification suite, plus the
thread-pool helper honoring BRAIDHOPF_THREADS.

Reports are deterministic: callers add checks in a fixed order and no
timestamps live here (the CLI keeps timing in a separate subtree).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from .tensorcat import mor_diff


class Check:
    __slots__ = ("name", "passed", "detail")

    def __init__(self, name, passed, detail=""):
        self.name = name
        self.passed = bool(passed)
        self.detail = detail

    def to_json(self):
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out

    def __repr__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


class Report:
    def __init__(self, name):
        self.name = name
        self.checks = []
        self.subreports = []

    def add(self, name, passed, detail=""):
        self.checks.append(Check(name, passed, detail))
        return self.checks[-1]

    def add_eq(self, name, lhs, rhs):
        """Record exact equality of two morphisms, with the first differing
        entry spelled out on failure."""
        if lhs == rhs:
            return self.add(name, True)
        diff = mor_diff(lhs, rhs)
        if diff == (-1, -1, None, None):
            detail = (
                f"boundary mismatch: {lhs.cod.dim}x{lhs.dom.dim} vs "
                f"{rhs.cod.dim}x{rhs.dom.dim}"
            )
        else:
            r, c, va, vb = diff
            fmt = lhs.dom.field.format_scalar
            detail = f"first difference at row {r}, col {c}: {fmt(va)} vs {fmt(vb)}"
        return self.add(name, False, detail)

    def extend(self, subreport):
        self.subreports.append(subreport)
        return subreport

    @property
    def passed(self):
        return all(c.passed for c in self.checks) and all(
            s.passed for s in self.subreports
        )

    def failures(self):
        out = [c for c in self.checks if not c.passed]
        for s in self.subreports:
            out.extend(s.failures())
        return out

    def lines(self, indent=0):
        pad = "  " * indent
        out = [f"{pad}[{'PASS' if self.passed else 'FAIL'}] {self.name}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            suffix = f": {c.detail}" if c.detail else ""
            out.append(f"{pad}  {mark} {c.name}{suffix}")
        for s in self.subreports:
            out.extend(s.lines(indent + 1))
        return out

    def to_json(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "subreports": [s.to_json() for s in self.subreports],
        }

    def __repr__(self):
        return "\n".join(self.lines())


def thread_count():
    raw = os.environ.get("BRAIDHOPF_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """Order-preserving map, threaded when BRAIDHOPF_THREADS > 1."""
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
