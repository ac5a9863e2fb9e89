"""Counting region colorings of a diagram by a finite tribracket.

Colorings are found along an elimination plan: each step colors one
region, either freely or forced by a crossing whose other three roles
are already colored (through the operation or one of its inverses).
Crossings not used for forcing are checked as soon as all their regions
are known.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import _kernels, _pykernels
from .alexander import AlexanderSpec, alexander_tribracket, count_colorings_linear
from .core import FiniteTribracket, Flavor
from .diagram import RegionDiagram, link_sort_key, link_diagram
from .errors import FlavorError

FREE, FORCE_D, FORCE_C, FORCE_B, FORCE_A = range(5)

# role index forced -> (kind, source roles)
_FORCING = {3: (FORCE_D, (0, 1, 2)), 2: (FORCE_C, (0, 1, 3)), 1: (FORCE_B, (0, 2, 3)), 0: (FORCE_A, (1, 2, 3))}


@dataclass(frozen=True)
class Step:
    kind: int
    region: int
    sources: tuple[int, int, int]
    checks: tuple[tuple[int, int, int, int], ...]

    def as_tuple(self):
        p, q, r = self.sources
        return (self.kind, self.region, p, q, r, self.checks)


def elimination_plan(diagram: RegionDiagram) -> tuple[Step, ...]:
    """Deterministic plan coloring every region of ``diagram``."""
    crossings = [x.roles for x in diagram.crossings]
    known = set()
    used = [False] * len(crossings)
    steps = []
    while len(known) < diagram.region_count:
        step = None
        for ci, roles in enumerate(crossings):
            if used[ci]:
                continue
            unknown = [k for k, r in enumerate(roles) if r not in known]
            if len(unknown) == 1:
                k = unknown[0]
                kind, src = _FORCING[k]
                used[ci] = True
                step = (kind, roles[k], tuple(roles[i] for i in src))
                break
        if step is None:
            # branch on the region touching the most pending crossings
            weight = {}
            for ci, roles in enumerate(crossings):
                if not used[ci]:
                    for r in set(roles) - known:
                        weight[r] = weight.get(r, 0) + 1
            free = [r for r in range(diagram.region_count) if r not in known]
            region = max(free, key=lambda r: (weight.get(r, 0), -r))
            step = (FREE, region, (0, 0, 0))
        kind, region, src = step
        known.add(region)
        checks = []
        for ci, roles in enumerate(crossings):
            if not used[ci] and all(r in known for r in roles):
                used[ci] = True
                checks.append(roles)
        steps.append(Step(kind, region, src, tuple(checks)))
    return tuple(steps)


def _require_horizontal(X):
    if X.flavor is not Flavor.HORIZONTAL:
        raise FlavorError("colorings are counted with horizontal tribrackets; convert first")
    if X._inv is None:
        raise FlavorError("table is not a Latin cube")


def count_colorings_backtracking(diagram: RegionDiagram, X: FiniteTribracket) -> int:
    """Exact number of colorings of ``diagram`` by ``X``."""
    _require_horizontal(X)
    plan = [s.as_tuple() for s in elimination_plan(diagram)]
    free = sum(1 for s in plan if s[0] == FREE)
    rinv, cinv, linv = (tuple(t.ravel().tolist()) for t in X._inv)
    kernel = _kernels.count_plan
    if X.order ** free >= 2**63:
        kernel = _pykernels.count_plan   # unbounded integers
    return int(kernel(X.flat, rinv, cinv, linv, X.order, plan))


def iter_colorings(diagram: RegionDiagram, X: FiniteTribracket):
    """Colorings as tuples indexed by region, in lex order of the free choices."""
    _require_horizontal(X)
    n = X.order
    plan = elimination_plan(diagram)
    tables = (None, X.table, *X._inv)
    val = [0] * diagram.region_count

    def rec(i):
        if i == len(plan):
            yield tuple(val)
            return
        step = plan[i]
        if step.kind == FREE:
            choices = range(n)
        else:
            p, q, r = step.sources
            choices = (int(tables[step.kind][val[p], val[q], val[r]]),)
        for v in choices:
            val[step.region] = v
            if all(X.op(val[a], val[b], val[c]) == val[d] for a, b, c, d in step.checks):
                yield from rec(i + 1)

    return rec(0)


def enumerate_colorings(diagram: RegionDiagram, X: FiniteTribracket, limit: int | None = None):
    out = []
    for coloring in iter_colorings(diagram, X):
        if limit is not None and len(out) >= limit:
            break
        out.append(coloring)
    return out


@dataclass(frozen=True)
class InvariantRecord:
    link: str
    tribracket: str
    count: int


def tribracket_id(trib) -> str:
    if isinstance(trib, AlexanderSpec):
        return trib.label
    return trib.name or f"T{trib.order}"


def count_colorings(diagram: RegionDiagram, trib) -> int:
    """Linear algebra for Alexander specs, backtracking otherwise."""
    if isinstance(trib, AlexanderSpec):
        return count_colorings_linear(diagram, trib)
    return count_colorings_backtracking(diagram, trib)


def _task(args):
    name, diagram, trib = args
    return InvariantRecord(name, tribracket_id(trib), count_colorings(diagram, trib))


def invariant_table(links, tribrackets, jobs: int = 1) -> list[InvariantRecord]:
    """Counts for every (link, tribracket) pair.

    ``links`` holds table names or ``(name, RegionDiagram)`` pairs;
    ``tribrackets`` holds :class:`AlexanderSpec` or horizontal
    :class:`FiniteTribracket` values.  Records are ordered by link, then
    by the position of the tribracket in ``tribrackets``.
    """
    diagrams = []
    for item in links:
        if isinstance(item, str):
            diagrams.append((item, link_diagram(item)))
        else:
            diagrams.append(tuple(item))
    tribs = list(tribrackets)
    for t in tribs:
        if isinstance(t, FiniteTribracket):
            _require_horizontal(t)
    order = sorted(range(len(diagrams)), key=lambda i: (link_sort_key(diagrams[i][0]), i))
    tasks = [(diagrams[i][0], diagrams[i][1], t) for i in order for t in tribs]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    return [_task(t) for t in tasks]


def alexander_or_table(trib) -> FiniteTribracket:
    return alexander_tribracket(trib) if isinstance(trib, AlexanderSpec) else trib
