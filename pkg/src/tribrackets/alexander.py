"""Alexander tribrackets ``[x, y, z] = t*y + s*z - t*s*x`` over Z_n.

Also builds the Laurent-polynomial presentation matrix of a diagram (one
row per crossing, one column per region) and counts colorings by linear
algebra: specialize at ``(n, t, s)``, take the Smith normal form of the
integer lift, and reduce the invariant factors modulo ``n``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from math import gcd

import numpy as np

from .core import FiniteTribracket, Flavor
from .errors import InvalidSpecError, ParseError
from .snf import count_kernel_mod


@dataclass(frozen=True, order=True)
class AlexanderSpec:
    modulus: int
    t: int
    s: int

    def __post_init__(self):
        n, t, s = self.modulus, self.t, self.s
        if n < 1:
            raise InvalidSpecError(f"modulus must be positive, got {n}")
        if gcd(t % n, n) != 1 or gcd(s % n, n) != 1:
            raise InvalidSpecError(f"t={t} and s={s} must be units mod {n}")
        # normalized representatives keep equality meaningful
        object.__setattr__(self, "t", t % n)
        object.__setattr__(self, "s", s % n)

    @classmethod
    def parse(cls, text: str) -> AlexanderSpec:
        """Parse ``"n,t,s"``."""
        try:
            n, t, s = (int(part) for part in text.split(","))
        except ValueError:
            raise InvalidSpecError(f"expected n,t,s, got {text!r}") from None
        return cls(n, t, s)

    @property
    def label(self):
        return f"A({self.modulus},{self.t},{self.s})"

    def __str__(self):
        return self.label


def unit_pairs(n):
    """All specs ``(n, t, s)`` with ``t, s`` units mod ``n``, in order."""
    units = [u for u in range(n) if gcd(u, n) == 1] if n > 1 else [0]
    return [AlexanderSpec(n, t, s) for t in units for s in units]


def alexander_tribracket(spec: AlexanderSpec) -> FiniteTribracket:
    n, t, s = spec.modulus, spec.t, spec.s
    i, j, k = np.meshgrid(range(n), range(n), range(n), indexing="ij")
    table = (t * j + s * k - t * s * i) % n
    return FiniteTribracket(table, Flavor.HORIZONTAL, name=spec.label)


# -- Laurent polynomials in t, s -------------------------------------------


class LaurentPoly:
    """Integer Laurent polynomial ``sum c * t**a * s**b``; keys ``(a, b)``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in dict(terms or {}).items():
            if c:
                clean[(int(key[0]), int(key[1]))] = int(c)
        self.terms = clean

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c, a=0, b=0):
        return cls({(a, b): c})

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            return self.terms == _coerce(other).terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self, t, s, n=None):
        """Value at ``(t, s)``; modulo ``n`` when given (negative powers use inverses)."""
        total = 0
        for (a, b), c in self.terms.items():
            if n is None:
                if a < 0 or b < 0:
                    raise ValueError("negative exponent needs a modulus")
                total += c * t**a * s**b
            else:
                total += c * pow(t, a, n) * pow(s, b, n)
        return total % n if n is not None else total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        # display order: constants first, then by total degree
        for (a, b) in sorted(self.terms, key=lambda k: (k[0] + k[1], -k[1], k)):
            c = self.terms[(a, b)]
            mono = _power("s", b) + _power("t", a)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += sign + body
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def to_json(self):
        return [[a, b, c] for (a, b), c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, items):
        return cls({(a, b): c for a, b, c in items})

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Inverse of ``str``: e.g. ``"st"``, ``"-t"``, ``"2s^2t^-1-1"``."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls()
        pos = 0
        out = cls()
        term = re.compile(r"([+-]?)(\d*)((?:[st](?:\^-?\d+)?)*)")
        while pos < len(text):
            m = term.match(text, pos)
            if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
                raise ParseError(f"cannot parse Laurent polynomial {text!r}", column=pos + 1)
            sign = -1 if m.group(1) == "-" else 1
            coef = int(m.group(2)) if m.group(2) else 1
            a = b = 0
            for var, exp in re.findall(r"([st])(?:\^(-?\d+))?", m.group(3)):
                e = int(exp) if exp else 1
                if var == "t":
                    a += e
                else:
                    b += e
            out = out + cls.monomial(sign * coef, a, b)
            pos = m.end()
        return out


def _power(var, e):
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


def _coerce(value):
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, int):
        return LaurentPoly.const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a Laurent polynomial")


ONE = LaurentPoly.const(1)
T = LaurentPoly.monomial(1, 1, 0)
S = LaurentPoly.monomial(1, 0, 1)
TS = T * S


@dataclass(frozen=True)
class LaurentMatrix:
    entries: tuple[tuple[LaurentPoly, ...], ...]
    column_labels: tuple[int, ...]

    @property
    def shape(self):
        return (len(self.entries), len(self.column_labels))

    def to_text(self):
        """One line per row, entries separated by tabs."""
        return "".join("\t".join(str(e) for e in row) + "\n" for row in self.entries)

    def to_json(self):
        return json.dumps(
            {
                "rows": len(self.entries),
                "cols": len(self.column_labels),
                "columns": list(self.column_labels),
                "entries": [[e.to_json() for e in row] for row in self.entries],
            }
        )

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        entries = tuple(tuple(LaurentPoly.from_json(e) for e in row) for row in doc["entries"])
        return cls(entries, tuple(doc["columns"]))


def presentation_matrix(diagram) -> LaurentMatrix:
    """Rows ``d - t*b - s*c + t*s*a`` per crossing; repeated regions accumulate."""
    cols = diagram.region_count
    rows = []
    for x in diagram.crossings:
        row = [LaurentPoly() for _ in range(cols)]
        row[x.d] = row[x.d] + ONE
        row[x.a] = row[x.a] + TS
        row[x.b] = row[x.b] - T
        row[x.c] = row[x.c] - S
        rows.append(tuple(row))
    return LaurentMatrix(tuple(rows), tuple(range(cols)))


def specialize(M: LaurentMatrix, spec: AlexanderSpec) -> list[list[int]]:
    n = spec.modulus
    return [[e.evaluate(spec.t, spec.s, n) for e in row] for row in M.entries]


def count_colorings_linear(diagram, spec: AlexanderSpec) -> int:
    """Solutions of the specialized homogeneous system over the region variables."""
    A = specialize(presentation_matrix(diagram), spec)
    return count_kernel_mod(A, spec.modulus, diagram.region_count)
