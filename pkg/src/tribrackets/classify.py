"""Membership tests for the families of tribrackets with trivial invariants.

Every check is exhaustive.  A failed check carries the lexicographically
smallest counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _kernels
from .alexander import AlexanderSpec
from .core import FiniteTribracket, Flavor, Position
from .errors import BoundError, FlavorError

MAX_ORDER = 32


class Check(NamedTuple):
    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def _first(mask):
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return Check(True)
    return Check(False, tuple(int(v) for v in hits[0]))


def _bounded(X):
    if X.order > MAX_ORDER:
        raise BoundError(f"exhaustive checks refuse order {X.order} > {MAX_ORDER}")


def is_involutory(X: FiniteTribracket, position) -> Check:
    """Whether every slice map in ``position`` is an involution.

    The slice maps are ``a -> op(a, x, y)``, ``op(x, a, y)`` and
    ``op(x, y, a)``.  The witness is ``(x, y, a)`` with the map applied
    twice not returning ``a``.
    """
    _bounded(X)
    position = Position(position)
    T = X.table
    n = X.order
    x, y, a = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    if position is Position.LEFT:
        once = T[a, x, y]
        twice = T[once, x, y]
    elif position is Position.CENTER:
        once = T[x, a, y]
        twice = T[x, once, y]
    else:
        once = T[x, y, a]
        twice = T[x, y, once]
    return _first(twice != a)


def is_late_commutative(X: FiniteTribracket) -> Check:
    """``op(x, y, z) == op(x, z, y)`` for all triples; witness ``(x, y, z)``."""
    if X.flavor is not Flavor.HORIZONTAL:
        raise FlavorError("late-commutativity is defined for horizontal tribrackets")
    _bounded(X)
    return _first(X.table != X.table.transpose(0, 2, 1))


def is_delta(X: FiniteTribracket) -> Check:
    """The delta identity ``[y,[x,y,z],[x,w,y]] = [z,[x,z,w],[x,y,z]] = [w,[x,w,y],[x,z,w]]``.

    Witness is the smallest ``(x, y, z, w)`` breaking either equality.
    """
    if X.flavor is not Flavor.HORIZONTAL:
        raise FlavorError("the delta condition is checked on horizontal tribrackets")
    _bounded(X)
    w = _kernels.delta_witness(X.flat, X.order)
    return Check(True) if w is None else Check(False, tuple(w))


def is_delta_alexander(n: int, t: int, s: int) -> bool:
    """Closed form for Alexander tribrackets: ``2st == t^2 + s^2 (mod n)``."""
    spec = AlexanderSpec(n, t, s)
    t, s = spec.t, spec.s
    return (2 * t * s - t * t - s * s) % n == 0


@dataclass(frozen=True)
class ClassificationReport:
    flavor: Flavor
    left_involutory: bool
    center_involutory: bool
    right_involutory: bool
    late_commutative: bool | None     # None for vertical input
    delta: bool | None
    witnesses: dict = field(default_factory=dict)

    @property
    def fully_involutory(self):
        return self.left_involutory and self.center_involutory and self.right_involutory

    def flags(self):
        return {
            "left_involutory": self.left_involutory,
            "center_involutory": self.center_involutory,
            "right_involutory": self.right_involutory,
            "fully_involutory": self.fully_involutory,
            "late_commutative": self.late_commutative,
            "delta": self.delta,
        }

    def to_dict(self):
        return {
            "flavor": self.flavor.value,
            "flags": self.flags(),
            "witnesses": {k: list(v) for k, v in sorted(self.witnesses.items())},
        }


def classify(X: FiniteTribracket) -> ClassificationReport:
    checks = {
        "left_involutory": is_involutory(X, Position.LEFT),
        "center_involutory": is_involutory(X, Position.CENTER),
        "right_involutory": is_involutory(X, Position.RIGHT),
    }
    if X.flavor is Flavor.HORIZONTAL:
        checks["late_commutative"] = is_late_commutative(X)
        checks["delta"] = is_delta(X)
    witnesses = {k: c.witness for k, c in checks.items() if not c.holds}
    get = lambda k: checks[k].holds if k in checks else None  # noqa: E731
    return ClassificationReport(
        flavor=X.flavor,
        left_involutory=get("left_involutory"),
        center_involutory=get("center_involutory"),
        right_involutory=get("right_involutory"),
        late_commutative=get("late_commutative"),
        delta=get("delta"),
        witnesses=witnesses,
    )
