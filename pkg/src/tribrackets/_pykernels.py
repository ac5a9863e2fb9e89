"""Pure-Python implementations of the hot loops.

Every function here has a twin with an identical signature in
``_ckernels.pyx``.  Tables are flat sequences indexed as
``op[(x * n + y) * n + z]``.
"""


def horizontal_violations(op, n, limit):
    """Quadruples (x, y, z, w) breaking the horizontal second axiom, in lex order."""
    out = []
    nn = n * n
    for x in range(n):
        for y in range(n):
            xy = (x * n + y) * n
            for z in range(n):
                xyz = op[xy + z]
                xz = (x * n + z) * n
                for w in range(n):
                    xyw = op[xy + w]
                    xzw = op[xz + w]
                    lhs = op[y * nn + xyz * n + xyw]
                    mid = op[z * nn + xyz * n + xzw]
                    rhs = op[w * nn + xyw * n + xzw]
                    if lhs != mid or mid != rhs:
                        out.append((x, y, z, w))
                        if len(out) >= limit:
                            return out
    return out


def vertical_violations(op, n, limit):
    """(equation, x, y, z, w) for each failure of the two vertical equations."""
    out = []
    nn = n * n
    for x in range(n):
        for y in range(n):
            for z in range(n):
                xyz = op[(x * n + y) * n + z]
                for w in range(n):
                    yzw = op[(y * n + z) * n + w]
                    q = op[(xyz * n + z) * n + w]
                    # <x,<x,y,z>,<<x,y,z>,z,w>> = <x,y,<y,z,w>>
                    if op[(x * n + xyz) * n + q] != op[(x * n + y) * n + yzw]:
                        out.append((0, x, y, z, w))
                        if len(out) >= limit:
                            return out
                    # <<x,y,z>,z,w> = <<x,y,<y,z,w>>,<y,z,w>,w>
                    r = op[(x * n + y) * n + yzw]
                    if q != op[(r * n + yzw) * n + w]:
                        out.append((1, x, y, z, w))
                        if len(out) >= limit:
                            return out
    return out


def delta_witness(op, n):
    """Lexicographically smallest quadruple breaking the delta identity, or None."""
    nn = n * n
    for x in range(n):
        for y in range(n):
            for z in range(n):
                xyz = op[(x * n + y) * n + z]
                for w in range(n):
                    xwy = op[(x * n + w) * n + y]
                    xzw = op[(x * n + z) * n + w]
                    first = op[y * nn + xyz * n + xwy]
                    second = op[z * nn + xzw * n + xyz]
                    third = op[w * nn + xwy * n + xzw]
                    if first != second or second != third:
                        return (x, y, z, w)
    return None


def count_plan(op, rinv, cinv, linv, n, plan):
    """Count region colorings along a precomputed elimination plan.

    ``plan`` is a sequence of steps ``(kind, region, p, q, r, checks)``.
    ``kind`` 0 is a free region; 1..4 force the region through the
    operation or one of its inverses from the already-colored regions
    ``p, q, r``.  ``checks`` lists crossings ``(a, b, c, d)`` whose last
    region becomes known at this step.
    """
    steps = len(plan)
    if steps == 0:
        return 1
    nregions = 1 + max(step[1] for step in plan)
    val = [0] * nregions
    tables = (None, op, rinv, cinv, linv)
    # trailing free steps with no checks contribute a factor n each
    tail = steps
    while tail > 0 and plan[tail - 1][0] == 0 and not plan[tail - 1][5]:
        tail -= 1
    mult = n ** (steps - tail)

    def rec(i):
        if i == tail:
            return mult
        kind, region, p, q, r, checks = plan[i]
        if kind == 0:
            choices = range(n)
        else:
            choices = (tables[kind][(val[p] * n + val[q]) * n + val[r]],)
        total = 0
        for v in choices:
            val[region] = v
            ok = True
            for a, b, c, d in checks:
                if op[(val[a] * n + val[b]) * n + val[c]] != val[d]:
                    ok = False
                    break
            if ok:
                total += rec(i + 1)
        return total

    return rec(0)
