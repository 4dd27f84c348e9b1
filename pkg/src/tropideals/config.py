"""Enumeration guards for combinatorial routines.

Exceeding a guard is a loud error, never a silent truncation.  Defaults can
be overridden with the TROPIDEALS_AXIOM_GUARD / TROPIDEALS_CIRCUIT_GUARD
environment variables.
"""

import os


class GuardExceeded(RuntimeError):
    """A desk-scale enumeration guard was exceeded."""

    def __init__(self, guard: str, limit: int, actual: int):
        self.guard = guard
        self.limit = limit
        self.actual = actual
        super().__init__(f"guard {guard!r} exceeded: size {actual} > limit {limit}")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    return int(raw)


def axiom_guard() -> int:
    return _env_int("TROPIDEALS_AXIOM_GUARD", 16)


def circuit_guard() -> int:
    return _env_int("TROPIDEALS_CIRCUIT_GUARD", 20)


def check_guard(name: str, actual: int, limit: int) -> None:
    if actual > limit:
        raise GuardExceeded(name, limit, actual)
