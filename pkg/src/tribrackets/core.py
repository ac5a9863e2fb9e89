"""Finite tribrackets as explicit operation tables.

A tribracket of order ``n`` lives on ``{0, ..., n-1}``.  ``table[i, j, k]``
is the value of the ternary operation on ``(i, j, k)``.  The text tensor
format is 1-indexed (each of the ``n`` matrices is ``table[i]``, rows ``j``,
columns ``k``) and is converted on load and save.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .errors import AxiomError, FlavorError, StructureError


class Flavor(str, enum.Enum):
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise StructureError(f"unknown flavor {value!r}") from None

    def flipped(self):
        return Flavor.VERTICAL if self is Flavor.HORIZONTAL else Flavor.HORIZONTAL


class Axiom(str, enum.Enum):
    INVERTIBILITY = "invertibility"
    HORIZONTAL2 = "horizontal2"
    VERTICAL2A = "vertical2a"
    VERTICAL2B = "vertical2b"


class Position(str, enum.Enum):
    LEFT = "left"
    CENTER = "center"
    RIGHT = "right"


@dataclass(frozen=True, order=True)
class AxiomViolation:
    """One failure of a tribracket axiom.

    For ``INVERTIBILITY`` the witness is a triple ``(x, y, z)`` such that
    ``z`` is missing from the line through ``(x, y)`` in ``position``: e.g.
    ``RIGHT`` means no ``u`` solves ``op(x, y, u) = z``.  For the second
    axioms the witness is the quadruple ``(x, y, z, w)``.
    """

    axiom: Axiom
    witness: tuple
    position: Position | None = None

    def replay(self, X: FiniteTribracket) -> bool:
        """True if the witness still breaks the axiom in ``X``."""
        T = X.table
        n = X.order
        if self.axiom is Axiom.INVERTIBILITY:
            x, y, z = self.witness
            if self.position is Position.RIGHT:
                line = T[x, y, :]
            elif self.position is Position.CENTER:
                line = T[x, :, y]
            else:
                line = T[:, x, y]
            return z not in set(int(v) for v in line) and 0 <= z < n
        x, y, z, w = self.witness
        op = X.op
        if self.axiom is Axiom.HORIZONTAL2:
            lhs = op(y, op(x, y, z), op(x, y, w))
            mid = op(z, op(x, y, z), op(x, z, w))
            rhs = op(w, op(x, y, w), op(x, z, w))
            return not (lhs == mid == rhs)
        if self.axiom is Axiom.VERTICAL2A:
            xyz = op(x, y, z)
            return op(x, xyz, op(xyz, z, w)) != op(x, y, op(y, z, w))
        xyz = op(x, y, z)
        yzw = op(y, z, w)
        return op(xyz, z, w) != op(op(x, y, yzw), yzw, w)


def _line_inverse(table, axis):
    """Inverse lookup tables, or None when some line is not a permutation."""
    n = table.shape[0]
    inv = np.full((n, n, n), -1, dtype=np.int64)
    idx = np.arange(n)
    for x in range(n):
        for y in range(n):
            if axis == 2:
                line = table[x, y, :]
            elif axis == 1:
                line = table[x, :, y]
            else:
                line = table[:, x, y]
            if len(set(line.tolist())) != n:
                return None
            inv[x, y, line] = idx
    return inv


class FiniteTribracket:
    """An order-``n`` ternary operation table with a flavor tag.

    Construction checks shape and entry range.  With ``validate=True``
    (the default) the table must satisfy the axioms of its flavor, else
    :class:`AxiomError` is raised; ``validate=False`` admits any table so
    that :func:`verify` can report on it.  Inverse tables are built
    eagerly whenever every line is a permutation.
    """

    __slots__ = ("order", "flavor", "table", "flat", "_inv", "name")

    def __init__(self, table, flavor=Flavor.HORIZONTAL, *, validate=True, name=None):
        arr = np.asarray(table)
        if arr.ndim != 3 or len(set(arr.shape)) != 1 or arr.shape[0] == 0:
            raise StructureError(f"table must be n x n x n with n >= 1, got shape {arr.shape}")
        if not np.issubdtype(arr.dtype, np.integer):
            raise StructureError("table entries must be integers")
        n = arr.shape[0]
        if arr.min() < 0 or arr.max() >= n:
            raise StructureError(f"table entries must lie in 0..{n - 1}")
        arr = arr.astype(np.int64)
        arr.flags.writeable = False
        self.order = n
        self.flavor = Flavor.parse(flavor)
        self.table = arr
        self.flat = tuple(arr.ravel().tolist())
        self.name = name
        inv = []
        for axis in (2, 1, 0):
            t = _line_inverse(arr, axis)
            if t is None:
                inv = None
                break
            t.flags.writeable = False
            inv.append(t)
        self._inv = inv
        if validate:
            bad = verify(self, limit=1)
            if bad:
                raise AxiomError(f"not a {self.flavor.value} tribracket: {bad[0]}", bad)

    def op(self, x, y, z):
        return self.flat[(x * self.order + y) * self.order + z]

    __call__ = op

    @property
    def is_latin(self):
        return self._inv is not None

    def _inverse(self, k):
        if self._inv is None:
            raise AxiomError("operation is not invertible in every position")
        return self._inv[k]

    @property
    def right_table(self):
        """``right_table[x, y, z] = u`` with ``op(x, y, u) = z``."""
        return self._inverse(0)

    @property
    def center_table(self):
        """``center_table[x, y, z] = v`` with ``op(x, v, y) = z``."""
        return self._inverse(1)

    @property
    def left_table(self):
        """``left_table[x, y, z] = w`` with ``op(w, x, y) = z``."""
        return self._inverse(2)

    def with_flavor(self, flavor):
        return FiniteTribracket(self.table, flavor, validate=False, name=self.name)

    def __eq__(self, other):
        if not isinstance(other, FiniteTribracket):
            return NotImplemented
        return self.flavor is other.flavor and self.flat == other.flat

    def __hash__(self):
        return hash((self.flavor, self.flat))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FiniteTribracket{label} order={self.order} {self.flavor.value}>"

    def __reduce__(self):
        return (_rebuild, (self.table.tolist(), self.flavor.value, self.name))


def _rebuild(table, flavor, name):
    return FiniteTribracket(table, flavor, validate=False, name=name)


def right_inverse(X: FiniteTribracket, x, y, z):
    """The unique ``u`` with ``X(x, y, u) == z``."""
    return int(X.right_table[x, y, z])


def center_inverse(X: FiniteTribracket, x, y, z):
    """The unique ``v`` with ``X(x, v, y) == z``."""
    return int(X.center_table[x, y, z])


def left_inverse(X: FiniteTribracket, x, y, z):
    """The unique ``w`` with ``X(w, x, y) == z``."""
    return int(X.left_table[x, y, z])


def _invertibility_violations(T, limit):
    n = T.shape[0]
    out = []
    full = set(range(n))
    for position, getter in (
        (Position.LEFT, lambda x, y: T[:, x, y]),
        (Position.CENTER, lambda x, y: T[x, :, y]),
        (Position.RIGHT, lambda x, y: T[x, y, :]),
    ):
        for x, y in itertools.product(range(n), repeat=2):
            for z in sorted(full - set(getter(x, y).tolist())):
                out.append(AxiomViolation(Axiom.INVERTIBILITY, (x, y, z), position))
    out.sort(key=lambda v: (v.witness, v.position.value))
    return out[:limit]


def verify(X: FiniteTribracket, limit: int = 100) -> list[AxiomViolation]:
    """Every violation of axiom (i) and of the flavor's second axiom.

    The scan is exhaustive over all ``n**3`` triples and ``n**4``
    quadruples.  Violations are sorted by axiom, then witness.  At most
    ``limit`` are reported for axiom (i) and at most ``limit`` for the
    second axiom (both vertical equations share one cap).
    """
    n = X.order
    found = _invertibility_violations(X.table, limit)
    if X.flavor is Flavor.HORIZONTAL:
        for q in _kernels.horizontal_violations(X.flat, n, limit):
            found.append(AxiomViolation(Axiom.HORIZONTAL2, tuple(q)))
    else:
        vert = []
        for eq, *q in _kernels.vertical_violations(X.flat, n, limit):
            axiom = Axiom.VERTICAL2A if eq == 0 else Axiom.VERTICAL2B
            vert.append(AxiomViolation(axiom, tuple(q)))
        found += sorted(vert, key=lambda v: (v.axiom.value, v.witness))
    return found


def is_tribracket(X: FiniteTribracket) -> bool:
    return not verify(X, limit=1)


def _dual(X: FiniteTribracket, expect: Flavor) -> FiniteTribracket:
    if X.flavor is not expect:
        raise FlavorError(f"expected a {expect.value} tribracket, got {X.flavor.value}")
    if not X.is_latin:
        raise AxiomError("duality needs axiom (i): some line is not a permutation")
    return FiniteTribracket(X.right_table, expect.flipped(), validate=False, name=X.name)


def horizontal_to_vertical(X: FiniteTribracket) -> FiniteTribracket:
    """The vertical operation with ``z = <x, y, [x, y, z]>``."""
    return _dual(X, Flavor.HORIZONTAL)


def vertical_to_horizontal(X: FiniteTribracket) -> FiniteTribracket:
    """The horizontal operation with ``z = [x, y, <x, y, z>]``."""
    return _dual(X, Flavor.VERTICAL)


# -- constructors -----------------------------------------------------------


def cyclic_group(n):
    """Cayley table of Z_n."""
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group(k):
    """Cayley table of S_k, elements ordered lexicographically as tuples."""
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i))
    return [[index[tuple(p[q[i]] for i in range(k))] for q in perms] for p in perms]


def dehn_tribracket(mul, name=None) -> FiniteTribracket:
    """Horizontal tribracket ``[x, y, z] = y x^-1 z`` of a finite group.

    ``mul`` is the Cayley table, ``mul[a][b] = ab``.
    """
    n = len(mul)
    e = next(a for a in range(n) if all(mul[a][b] == b for b in range(n)))
    inv = [next(b for b in range(n) if mul[a][b] == e) for a in range(n)]
    table = np.empty((n, n, n), dtype=np.int64)
    for x, y, z in itertools.product(range(n), repeat=3):
        table[x, y, z] = mul[mul[y][inv[x]]][z]
    return FiniteTribracket(table, Flavor.HORIZONTAL, name=name)


# -- tensor file format -----------------------------------------------------


def tensor_to_dict(X: FiniteTribracket) -> dict:
    return {
        "order": X.order,
        "flavor": X.flavor.value,
        "tensor": (X.table + 1).tolist(),
    }


def tensor_from_dict(doc, *, validate=True, name=None) -> FiniteTribracket:
    try:
        order = int(doc["order"])
        flavor = Flavor.parse(doc.get("flavor", "horizontal"))
        tensor = doc["tensor"]
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"malformed tensor document: {exc}") from None
    arr = np.asarray(tensor)
    if arr.shape != (order, order, order):
        raise StructureError(f"tensor shape {arr.shape} does not match order {order}")
    return FiniteTribracket(arr - 1, flavor, validate=validate, name=name)


def dumps_tensor(X: FiniteTribracket) -> str:
    """Canonical text form: one matrix per line, 1-indexed entries."""
    lines = [
        "{",
        f'  "order": {X.order},',
        f'  "flavor": "{X.flavor.value}",',
        '  "tensor": [',
    ]
    mats = (X.table + 1).tolist()
    for i, m in enumerate(mats):
        sep = "," if i + 1 < len(mats) else ""
        lines.append("    " + json.dumps(m) + sep)
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def dumps_tensor_line(X: FiniteTribracket) -> str:
    """Single-line form used when streaming tensors."""
    return json.dumps(tensor_to_dict(X))


def loads_tensor(text, *, validate=True, name=None) -> FiniteTribracket:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureError(f"tensor file is not valid JSON: {exc}") from None
    return tensor_from_dict(doc, validate=validate, name=name)


def load_tensor(path, *, validate=True) -> FiniteTribracket:
    path = Path(path)
    return loads_tensor(path.read_text(), validate=validate, name=path.stem)


def save_tensor(X: FiniteTribracket, path):
    Path(path).write_text(dumps_tensor(X))
