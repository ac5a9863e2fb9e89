"""Planar diagram codes and the region structure of their complements.

A PD crossing ``X[i, j, k, l]`` lists the four edge labels around the
crossing counterclockwise, starting from the incoming under-strand, so the
under-strand runs ``i -> k`` and the over-strand joins ``j`` and ``l``.

Corner ``p`` of a crossing is the gap between slots ``p`` and ``p + 1``.
Faces are traced by corner walking: from corner ``(X, p)`` follow the edge
in slot ``p + 1`` to its far end ``(Y, q)``; the next corner is ``(Y, q)``.

Crossing roles.  A relation ``d = [a, b, c]`` is attached to each
crossing.  ``a`` is the corner lying to the left of both strands and ``d``
the corner to the right of both.  At a positive crossing ``b`` is the
corner between the two incoming arms and ``c`` the corner between the two
outgoing arms; at a negative crossing they swap.  In slot terms this is
corners ``(2, 3, 1, 0)`` for positive and ``(3, 2, 0, 1)`` for negative
crossings.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .errors import EmbeddingError, ParseError, UnderdeterminedError, UnknownLinkError

_ROLE_CORNERS = {1: (2, 3, 1, 0), -1: (3, 2, 0, 1)}


@dataclass(frozen=True)
class PDCode:
    crossings: tuple[tuple[int, int, int, int], ...]
    name: str | None = None
    loops: int = 0      # split crossingless circles

    def __len__(self):
        return len(self.crossings)

    def __str__(self):
        return "PD[" + ", ".join("X[%d,%d,%d,%d]" % x for x in self.crossings) + "]"


@dataclass(frozen=True)
class Crossing:
    a: int
    b: int
    c: int
    d: int
    sign: int

    @property
    def roles(self):
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class RegionDiagram:
    region_count: int
    component_count: int
    crossings: tuple[Crossing, ...]
    name: str | None = None
    corners: tuple[tuple[int, int, int, int], ...] = field(default=(), repr=False)
    split_count: int = 1

    @property
    def crossing_count(self):
        return len(self.crossings)


@dataclass(frozen=True)
class LinkTableEntry:
    name: str
    pd: PDCode
    component_count: int
    source: str = ""


# -- parsing -----------------------------------------------------------------

_NUM = re.compile(r"-?\d+")


def _line_col(text, pos):
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _parse_crossings(text):
    """Crossings and the (line, column) where each one starts."""
    stripped = text.strip()
    if not stripped:
        return [], []
    if stripped.startswith("PD") or stripped.startswith("X"):
        return _parse_bracket(text)
    if stripped.startswith("["):
        return _parse_nested(text)
    return _parse_lines(text)


def _parse_bracket(text):
    """Knot Atlas syntax ``PD[X[1,4,2,5], ...]``."""
    start = text.index(text.strip()[0])
    pos = start
    body_end = len(text)
    if text.startswith("PD", pos):
        pos += 2
        m = re.compile(r"\s*\[").match(text, pos)
        if not m:
            raise ParseError("expected '[' after PD", *_line_col(text, pos))
        pos = m.end()
        close = text.rfind("]")
        if close < pos:
            raise ParseError("unterminated PD[...]", *_line_col(text, len(text)))
        if text[close + 1:].strip():
            raise ParseError("trailing text after PD[...]", *_line_col(text, close + 1))
        body_end = close
    item = re.compile(r"\s*X\s*\[\s*([^\]]*)\]\s*(,)?")
    out, where = [], []
    while pos < body_end:
        if not text[pos:body_end].strip():
            break
        m = item.match(text, pos)
        if not m or m.end() > body_end + 1:
            raise ParseError("expected X[i,j,k,l]", *_line_col(text, pos))
        fields = [f.strip() for f in m.group(1).split(",")]
        if len(fields) != 4 or not all(_NUM.fullmatch(f) for f in fields):
            raise ParseError("crossing needs four integer labels", *_line_col(text, m.start(1)))
        out.append(tuple(int(f) for f in fields))
        where.append(_line_col(text, m.start() + len(m.group(0)) - len(m.group(0).lstrip())))
        pos = m.end()
        if m.group(2) is None and text[pos:body_end].strip():
            raise ParseError("expected ',' between crossings", *_line_col(text, pos))
    return out, where


def _parse_nested(text):
    """KnotInfo-style ``[[1,5,2,4],[3,1,4,6],...]``."""
    body = text.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ParseError("unbalanced brackets", *_line_col(text, len(text)))
    out, where = [], []
    offset = text.index(body) + (1 if body.count("[") > 1 else 0)
    for m in re.finditer(r"\[([^\[\]]*)\]", body[1:-1] if body.count("[") > 1 else body):
        fields = [f.strip() for f in m.group(1).split(",") if f.strip()]
        if len(fields) != 4 or not all(_NUM.fullmatch(f) for f in fields):
            raise ParseError("crossing needs four integer labels", *_line_col(text, offset + m.start()))
        out.append(tuple(int(f) for f in fields))
        where.append(_line_col(text, offset + m.start()))
    return out, where


def _parse_lines(text):
    """One crossing per line: ``1 4 2 5`` (commas allowed)."""
    out, where = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        fields = content.replace(",", " ").split()
        for f in fields:
            if not _NUM.fullmatch(f):
                raise ParseError(f"bad edge label {f!r}", lineno, line.index(f) + 1)
        if len(fields) != 4:
            raise ParseError(f"expected 4 labels, got {len(fields)}", lineno, 1)
        out.append(tuple(int(f) for f in fields))
        where.append((lineno, len(line) - len(line.lstrip()) + 1))
    return out, where


def validate_pd(crossings, where=None):
    """Every edge label must occur exactly twice; errors point at a crossing."""
    counts = {}
    first = {}
    for ci, x in enumerate(crossings):
        for e in x:
            if e < 0:
                raise ParseError(f"edge label {e} must be non-negative", *(where[ci] if where else ()))
            counts[e] = counts.get(e, 0) + 1
            if counts[e] == 3:
                first[e] = ci
            first.setdefault(e, ci)
    bad = sorted(e for e, c in counts.items() if c != 2)
    if bad:
        e = bad[0]
        loc = where[first[e]] if where else ()
        raise ParseError(f"edge label {e} occurs {counts[e]} time(s), expected exactly 2", *loc)


def parse_pd(text: str, name: str | None = None, loops: int | None = None) -> PDCode:
    """Parse Knot Atlas ``PD[X[...], ...]`` syntax or one quadruple per line.

    An empty crossing list describes crossingless circles: one unless
    ``loops`` says otherwise.
    """
    crossings, where = _parse_crossings(text)
    validate_pd(crossings, where)
    if loops is None:
        loops = 0 if crossings else 1
    return PDCode(tuple(crossings), name=name, loops=loops)


# -- regions -----------------------------------------------------------------


def _slot_ends(crossings):
    ends = {}
    for ci, x in enumerate(crossings):
        for p, e in enumerate(x):
            ends.setdefault(e, []).append((ci, p))
    return ends


def _strand_components(crossings, ends):
    """Edges grouped into link components (sorted label lists)."""
    parent = {e: e for e in ends}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    for i, j, k, l in crossings:
        parent[find(i)] = find(k)
        parent[find(j)] = find(l)
    groups = {}
    for e in ends:
        groups.setdefault(find(e), []).append(e)
    return sorted((sorted(g) for g in groups.values()), key=lambda g: g[0])


def _incoming(crossings, ends, components):
    """Map slot -> True if the edge there enters the crossing."""
    other_end = {}
    for u, v in ends.values():
        other_end[u] = v
        other_end[v] = u
    enters = {}

    def propagate(seeds):
        stack = list(seeds)
        while stack:
            slot = stack.pop()
            # far end of the same edge has the opposite direction
            nxt = [other_end[slot]]
            ci, p = slot
            if p in (1, 3):
                nxt.append((ci, 4 - p))
            for far in nxt:
                if far not in enters:
                    enters[far] = not enters[slot]
                    stack.append(far)

    for ci in range(len(crossings)):
        enters[(ci, 0)] = True
        enters[(ci, 2)] = False
    propagate(list(enters))
    # components that only pass over: labels increase along the orientation,
    # and for two-edge components the smaller label enters the first crossing
    for comp in components:
        labels = set(comp)
        if all(s in enters for e in comp for s in ends[e]):
            continue
        succ = {e: min((f for f in labels if f > e), default=min(labels)) for e in labels}
        ci = min(c for e in comp for c, _ in ends[e])
        j, l = crossings[ci][1], crossings[ci][3]
        if len(labels) > 2:
            slot3_in = succ[l] == j
        else:
            slot3_in = l < j
        enters[(ci, 3)] = slot3_in
        enters[(ci, 1)] = not slot3_in
        propagate([(ci, 3), (ci, 1)])
    return enters


def _pieces(crossings, ends):
    """Connected pieces of the diagram as sorted crossing-index lists."""
    parent = list(range(len(crossings)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for (c1, _), (c2, _) in ends.values():
        parent[find(c1)] = find(c2)
    groups = {}
    for ci in range(len(crossings)):
        groups.setdefault(find(ci), []).append(ci)
    return sorted(groups.values(), key=lambda g: g[0])


def regions(pd: PDCode) -> RegionDiagram:
    """Faces of the diagram and the role of each face at each crossing."""
    crossings = [tuple(x) for x in pd.crossings]
    validate_pd(crossings)
    ends = _slot_ends(crossings)
    components = _strand_components(crossings, ends)
    other_end = {}
    for u, v in ends.values():
        other_end[u] = v
        other_end[v] = u

    face = {}
    nfaces = 0
    for ci in range(len(crossings)):
        for p in range(4):
            if (ci, p) in face:
                continue
            cur = (ci, p)
            guard = 0
            while cur not in face:
                face[cur] = nfaces
                x, q = cur
                cur = other_end[(x, (q + 1) % 4)]
                guard += 1
                if guard > 4 * len(crossings):
                    raise EmbeddingError("face traversal did not close")
            if cur != (ci, p):
                raise EmbeddingError("face traversal closed on a foreign corner")
            nfaces += 1

    pieces = _pieces(crossings, ends)
    for piece in pieces:
        fs = {face[(ci, p)] for ci in piece for p in range(4)}
        if len(fs) != len(piece) + 2:
            raise EmbeddingError(
                f"piece with {len(piece)} crossings has {len(fs)} faces, expected "
                f"{len(piece) + 2}: rotation data is not planar"
            )

    # merge one face of each later piece into the outer face of the first
    merge = {}
    if pieces:
        outer = face[(pieces[0][0], 0)]
        for piece in pieces[1:]:
            merge[face[(piece[0], 0)]] = outer
    canon = {}
    corners = []
    for ci in range(len(crossings)):
        row = []
        for p in range(4):
            f = face[(ci, p)]
            f = merge.get(f, f)
            if f not in canon:
                canon[f] = len(canon)
            row.append(canon[f])
        corners.append(tuple(row))

    enters = _incoming(crossings, ends, components)
    records = []
    for ci in range(len(crossings)):
        sign = 1 if enters[(ci, 3)] else -1
        a, b, c, d = (corners[ci][k] for k in _ROLE_CORNERS[sign])
        records.append(Crossing(a, b, c, d, sign))

    region_count = len(canon)
    if region_count == 0:
        region_count = 1
    region_count += pd.loops
    split = len(pieces) + pd.loops
    return RegionDiagram(
        region_count=region_count,
        component_count=len(components) + pd.loops,
        crossings=tuple(records),
        name=pd.name,
        corners=tuple(corners),
        split_count=split,
    )


@dataclass(frozen=True)
class Relation:
    """Outcome of a crossing relation: a forced region value or a check."""

    region: int | None = None
    value: int | None = None
    satisfied: bool | None = None


def crossing_relation(X, crossing: Crossing, coloring) -> Relation:
    """Apply ``d = X(a, b, c)`` at one crossing.

    ``coloring`` maps region index to a color or ``None``.  With every role
    colored the relation is checked; with exactly one role uncolored the
    missing color is forced through the operation or one of its inverses.
    """
    roles = crossing.roles
    vals = [coloring[r] for r in roles]
    missing = [i for i, v in enumerate(vals) if v is None]
    if not missing:
        a, b, c, d = vals
        return Relation(satisfied=X(a, b, c) == d)
    if len(missing) > 1:
        raise UnderdeterminedError(f"{len(missing)} of 4 crossing roles uncolored")
    a, b, c, d = vals
    k = missing[0]
    if k == 3:
        v = X(a, b, c)
    elif k == 2:
        v = int(X.right_table[a, b, d])
    elif k == 1:
        v = int(X.center_table[a, c, d])
    else:
        v = int(X.left_table[b, c, d])
    return Relation(region=roles[k], value=v)


# -- braid closures (fixture construction) ------------------------------------


def pd_from_braid(word, strands: int | None = None, name: str | None = None) -> PDCode:
    """PD code of the closure of a braid word.

    ``word`` lists generators as signed integers: ``i`` for sigma_i, in which
    the strand coming from position i passes over, and ``-i`` for its
    inverse.  Strands run upward; labels are renumbered consecutively
    along each component so that they increase with the orientation.
    """
    word = [int(g) for g in word]
    if strands is None:
        strands = max((abs(g) for g in word), default=0) + 1
    next_label = strands
    cur = list(range(strands))
    raw = []
    succ = {}
    for g in word:
        i = abs(g) - 1
        if g == 0 or i + 1 >= strands:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        l_in, r_in = cur[i], cur[i + 1]
        l_out, r_out = next_label, next_label + 1
        next_label += 2
        if g > 0:
            raw.append([r_in, r_out, l_out, l_in])
        else:
            raw.append([l_in, r_in, r_out, l_out])
        succ[l_in] = r_out
        succ[r_in] = l_out
        cur[i], cur[i + 1] = l_out, r_out

    alias = {}
    loops = 0
    for p in range(strands):
        if cur[p] == p:
            loops += 1
        else:
            alias[cur[p]] = p

    def canon(e):
        while e in alias:
            e = alias[e]
        return e

    crossings = [[canon(e) for e in x] for x in raw]
    succ = {canon(e): canon(f) for e, f in succ.items()}
    relabel = {}
    for start in sorted(succ):
        if start in relabel:
            continue
        e = start
        while e not in relabel:
            relabel[e] = len(relabel) + 1
            e = succ[e]
    crossings = tuple(tuple(relabel[e] for e in x) for x in crossings)
    return PDCode(crossings, name=name, loops=loops)


# -- link table ----------------------------------------------------------------


def data_dir() -> Path:
    """Root of bundled data; ``TRIBRACKETS_DATA`` overrides it."""
    override = os.environ.get("TRIBRACKETS_DATA")
    if override:
        return Path(override)
    return Path(str(resources.files("tribrackets") / "data"))


def parse_link_file(text: str, filename: str = "<link>") -> LinkTableEntry:
    """Read the ``key: value`` link format; ``pd:`` runs to end of file."""
    meta = {}
    lines = text.splitlines()
    pd_text = None
    pd_line = 0
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        key, sep, value = stripped.partition(":")
        if not sep:
            raise ParseError(f"{filename}: expected 'key: value'", lineno, 1)
        key = key.strip().lower()
        if key == "pd":
            pd_text = "\n".join([value] + lines[lineno:])
            pd_line = lineno
            break
        meta[key] = value.strip()
    if pd_text is None:
        raise ParseError(f"{filename}: missing 'pd:' entry")
    if "name" not in meta:
        raise ParseError(f"{filename}: missing 'name:' entry")
    try:
        loops = int(meta.get("loops", "0"))
        components = int(meta["components"]) if "components" in meta else None
    except ValueError:
        raise ParseError(f"{filename}: components/loops must be integers") from None
    try:
        crossings, where = _parse_crossings(pd_text)
        validate_pd(crossings, where)
    except ParseError as exc:
        line = (exc.line or 1) + pd_line - 1
        column = exc.column
        if column is not None and (exc.line or 1) == 1:
            column += len("pd:")   # first pd line starts after the key
        raise ParseError(f"{filename}: {str(exc).split(' (line')[0]}", line, column) from None
    if not crossings and loops == 0:
        loops = components or 1
    pd = PDCode(tuple(crossings), name=meta["name"], loops=loops)
    found = len(_strand_components(crossings, _slot_ends(crossings))) + loops
    if components is None:
        components = found
    elif components != found:
        raise ParseError(f"{filename}: declares {components} components, PD has {found}")
    return LinkTableEntry(meta["name"], pd, components, meta.get("source", ""))


def format_link_file(entry: LinkTableEntry) -> str:
    lines = [f"name: {entry.name}", f"components: {entry.component_count}"]
    if entry.pd.loops:
        lines.append(f"loops: {entry.pd.loops}")
    if entry.source:
        lines.append(f"source: {entry.source}")
    lines.append(f"pd: {entry.pd}")
    return "\n".join(lines) + "\n"


def link_sort_key(name):
    # U first, then knots by crossing number, then links
    m = re.fullmatch(r"(\d+)_(\d+)", name)
    if m:
        return (1, int(m.group(1)), int(m.group(2)), name)
    m = re.fullmatch(r"L(\d+)([an])(\d+)", name)
    if m:
        return (2, int(m.group(1)), m.group(2), int(m.group(3)))
    m = re.fullmatch(r"U(\d+)", name)
    if m:
        return (0, int(m.group(1)), 0, name)
    return (3, 0, 0, name)


@lru_cache(maxsize=None)
def _load_table(root: str):
    table = {}
    for path in sorted(Path(root, "links").glob("*.txt")):
        entry = parse_link_file(path.read_text(), path.name)
        if entry.name in table:
            raise ParseError(f"duplicate link name {entry.name!r} in {path.name}")
        table[entry.name] = entry
    return table


def link_table() -> dict[str, LinkTableEntry]:
    table = _load_table(str(data_dir()))
    return {k: table[k] for k in sorted(table, key=link_sort_key)}


def link_names(group: str = "all") -> list[str]:
    """Names in a group: ``all``, ``all7`` (prime links), ``knots``, ``unlinks``."""
    names = list(link_table())
    if group == "all":
        return names
    if group == "all7":
        return [n for n in names if n.startswith("L")]
    if group == "knots":
        return [n for n in names if "_" in n]
    if group == "unlinks":
        return [n for n in names if n.startswith("U")]
    raise UnknownLinkError(group)


def resolve_links(spec: str) -> list[str]:
    """Comma-separated names and/or group names, in order, without repeats."""
    out = []
    table = link_table()
    for part in (p.strip() for p in spec.split(",")):
        if not part:
            continue
        if part in ("all", "all7", "knots", "unlinks"):
            items = link_names(part)
        elif part in table:
            items = [part]
        else:
            raise UnknownLinkError(part)
        out.extend(i for i in items if i not in out)
    return out


def load_link(name: str) -> LinkTableEntry:
    try:
        return link_table()[name]
    except KeyError:
        raise UnknownLinkError(name) from None


def link_diagram(name: str) -> RegionDiagram:
    return regions(load_link(name).pd)


def load_pd_file(path) -> PDCode:
    """A link file (``name:``/``pd:`` keys) or a bare PD code."""
    path = Path(path)
    text = path.read_text()
    if re.search(r"^\s*pd\s*:", text, re.MULTILINE | re.IGNORECASE):
        return parse_link_file(text, path.name).pd
    return parse_pd(text, name=path.stem)
