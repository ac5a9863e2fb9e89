"""Exhaustive enumeration of small tribrackets.

Cells of the operation tensor are filled in lexicographic order.  Three
bitmask tables track which values each axis-parallel line still admits,
which enforces the Latin-cube property as the tensor is built.  The
second axiom is nested (inner results choose outer cells), so each
identity instance waits on a pending list for the first cell it cannot
yet read; assigning that cell re-evaluates it and either settles it,
refutes the assignment, or moves it to the next missing cell.  A log
undoes those moves on backtrack.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .classify import classify
from .core import FiniteTribracket, Flavor
from .errors import BoundError, StructureError

FLAG_NAMES = (
    "left_involutory",
    "center_involutory",
    "right_involutory",
    "fully_involutory",
    "late_commutative",
    "delta",
)


@dataclass(frozen=True)
class SearchConfig:
    order: int
    flavor: Flavor = Flavor.HORIZONTAL
    flags: frozenset = field(default_factory=frozenset)
    canonical_only: bool = False
    max_order: int = 4

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be at least 1")
        object.__setattr__(self, "flavor", Flavor.parse(self.flavor))
        object.__setattr__(self, "flags", frozenset(self.flags))
        unknown = self.flags - set(FLAG_NAMES)
        if unknown:
            raise ValueError(f"unknown flags: {sorted(unknown)}")


# Identity instances are lists of expressions that must agree.  An
# expression is a variable index (into the quadruple) or ("op", e1, e2, e3).


def _op(a, b, c):
    return ("op", a, b, c)


X_, Y_, Z_, W_ = range(4)

_HORIZONTAL = [
    [
        _op(Y_, _op(X_, Y_, Z_), _op(X_, Y_, W_)),
        _op(Z_, _op(X_, Y_, Z_), _op(X_, Z_, W_)),
        _op(W_, _op(X_, Y_, W_), _op(X_, Z_, W_)),
    ]
]

_xyz = _op(X_, Y_, Z_)
_yzw = _op(Y_, Z_, W_)
_VERTICAL = [
    [_op(X_, _xyz, _op(_xyz, Z_, W_)), _op(X_, Y_, _yzw)],
    [_op(_xyz, Z_, W_), _op(_op(X_, Y_, _yzw), _yzw, W_)],
]


class _Blocked(Exception):
    pass


def _evaluate(expr, quad, T, n):
    """Value of ``expr``, or raise ``_Blocked(cell)`` at the first unknown cell."""
    if isinstance(expr, int):
        return quad[expr]
    _, e1, e2, e3 = expr
    a = _evaluate(e1, quad, T, n)
    b = _evaluate(e2, quad, T, n)
    c = _evaluate(e3, quad, T, n)
    cell = (a * n + b) * n + c
    v = T[cell]
    if v < 0:
        raise _Blocked(cell)
    return v


def _check(identity, quad, T, n):
    """``None`` if settled true, ``False`` if refuted, else the cell it waits on."""
    known = []
    waiting = None
    for expr in identity:
        try:
            known.append(_evaluate(expr, quad, T, n))
        except _Blocked as blk:
            cell = blk.args[0]
            if waiting is None or cell < waiting:
                waiting = cell
    if any(v != known[0] for v in known):
        return False
    return None if waiting is None else waiting


class _Search:
    def __init__(self, n, flavor):
        self.n = n
        self.identities = _HORIZONTAL if flavor is Flavor.HORIZONTAL else _VERTICAL
        self.flavor = flavor

    def run(self, first_value=None):
        n = self.n
        size = n**3
        full = (1 << n) - 1
        T = [-1] * size
        line_k = [0] * (n * n)    # (i, j): values used along k
        line_j = [0] * (n * n)    # (i, k)
        line_i = [0] * (n * n)    # (j, k)
        pending = [[] for _ in range(size)]
        for quad in itertools.product(range(n), repeat=4):
            for identity in self.identities:
                state = _check(identity, quad, T, n)
                pending[state].append((identity, quad))

        def assign(cell):
            """Re-evaluate waiters; return moved entries, or None on refutation."""
            moved = []
            for identity, quad in pending[cell]:
                state = _check(identity, quad, T, n)
                if state is False:
                    for c in moved:
                        pending[c].pop()
                    return None
                if state is not None:
                    pending[state].append((identity, quad))
                    moved.append(state)
            return moved

        def rec(cell):
            if cell == size:
                yield tuple(T)
                return
            i, rem = divmod(cell, n * n)
            j, k = divmod(rem, n)
            used = line_k[i * n + j] | line_j[i * n + k] | line_i[j * n + k]
            avail = full & ~used
            values = range(n) if not (cell == 0 and first_value is not None) else (first_value,)
            for v in values:
                bit = 1 << v
                if not avail & bit:
                    continue
                T[cell] = v
                moved = assign(cell)
                if moved is not None:
                    line_k[i * n + j] |= bit
                    line_j[i * n + k] |= bit
                    line_i[j * n + k] |= bit
                    yield from rec(cell + 1)
                    line_k[i * n + j] &= ~bit
                    line_j[i * n + k] &= ~bit
                    line_i[j * n + k] &= ~bit
                    for c in reversed(moved):
                        pending[c].pop()
                T[cell] = -1

        yield from rec(0)


def relabel(X: FiniteTribracket, perm) -> np.ndarray:
    """Table of the image of ``X`` under the element bijection ``perm``."""
    p = np.asarray(perm)
    out = np.empty_like(X.table)
    out[np.ix_(p, p, p)] = p[X.table]
    return out


def is_canonical(X: FiniteTribracket) -> bool:
    """Whether ``X`` is the lexicographically least table in its isomorphism class."""
    ref = X.table.ravel()
    for perm in itertools.permutations(range(X.order)):
        img = relabel(X, perm).ravel()
        diff = np.nonzero(img != ref)[0]
        if len(diff) and img[diff[0]] < ref[diff[0]]:
            return False
    return True


def is_isomorphic(X: FiniteTribracket, Y: FiniteTribracket) -> bool:
    if X.order != Y.order:
        raise StructureError(f"orders differ: {X.order} vs {Y.order}")
    if X.order > 8:
        raise BoundError("isomorphism test is exhaustive and limited to order 8")
    if X.flavor is not Y.flavor:
        return False
    return any(
        np.array_equal(relabel(X, perm), Y.table)
        for perm in itertools.permutations(range(X.order))
    )


def _emit(cfg, tensor):
    n = cfg.order
    X = FiniteTribracket(np.array(tensor).reshape(n, n, n), cfg.flavor, validate=False)
    if cfg.flags:
        flags = classify(X).flags()
        if not all(flags[f] for f in cfg.flags):
            return None
    if cfg.canonical_only and not is_canonical(X):
        return None
    return X


def _run_branch(args):
    cfg, v = args
    out = []
    for tensor in _Search(cfg.order, cfg.flavor).run(first_value=v):
        if _emit(cfg, tensor) is not None:
            out.append(tensor)
    return out


def enumerate_tribrackets(cfg: SearchConfig, jobs: int = 1):
    """Yield the tribrackets matching ``cfg`` in lexicographic tensor order."""
    if cfg.order > cfg.max_order:
        raise BoundError(f"exhaustive search refuses order {cfg.order} > bound {cfg.max_order}")
    n = cfg.order
    if jobs > 1 and n > 1:
        # one subtree per value of the first cell; merged in value order
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for tensors in pool.map(_run_branch, [(cfg, v) for v in range(n)]):
                for t in tensors:
                    yield FiniteTribracket(np.array(t).reshape(n, n, n), cfg.flavor, validate=False)
        return
    for tensor in _Search(n, cfg.flavor).run():
        X = _emit(cfg, tensor)
        if X is not None:
            yield X
