"""Smith normal form over the integers, and solution counting mod n."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class SnfResult:
    diagonal: tuple[int, ...]   # nonzero invariant factors d1 | d2 | ...

    @property
    def rank(self):
        return len(self.diagonal)


def smith_normal_form(A) -> SnfResult:
    """Invariant factors of an integer matrix.

    ``A`` is a sequence of rows.  Works on a copy with Python integers, so
    there is no overflow.  Unimodular transforms are not tracked.
    """
    M = [[int(v) for v in row] for row in A]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if M[i][j] and (pivot is None or abs(M[i][j]) < abs(M[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        while True:
            p = M[t][t]
            done = True
            # clear column t
            for i in range(t + 1, rows):
                if M[i][t]:
                    q = M[i][t] // p
                    if q:
                        Mi, Mt = M[i], M[t]
                        for j in range(t, cols):
                            Mi[j] -= q * Mt[j]
                    if M[i][t]:
                        M[t], M[i] = M[i], M[t]
                        done = False
                        break
            if not done:
                continue
            # clear row t
            for j in range(t + 1, cols):
                if M[t][j]:
                    q = M[t][j] // p
                    if q:
                        for row in M[t:]:
                            row[j] -= q * row[t]
                    if M[t][j]:
                        for row in M:
                            row[t], row[j] = row[j], row[t]
                        done = False
                        break
            if not done:
                continue
            # pivot must divide the remaining block
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            Mt, Mb = M[t], M[bad]
            for j in range(t, cols):
                Mt[j] += Mb[j]
        diag.append(abs(M[t][t]))
        t += 1
    return SnfResult(tuple(diag))


def count_kernel_mod(A, n: int, cols: int | None = None) -> int:
    """Number of x in (Z/n)^cols with A x = 0 mod n."""
    if cols is None:
        cols = len(A[0]) if len(A) else 0
    if not len(A):
        return n ** cols
    snf = smith_normal_form(A)
    count = n ** (cols - snf.rank)
    for d in snf.diagonal:
        count *= gcd(d, n)
    return count
