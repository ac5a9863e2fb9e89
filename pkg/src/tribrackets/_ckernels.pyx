# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_pykernels``; same signatures, same results."""

from libc.stdlib cimport malloc, free


cdef int* _as_array(seq, Py_ssize_t size) except NULL:
    cdef int* buf = <int*> malloc(max(size, 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(size):
        buf[i] = seq[i]
    return buf


def horizontal_violations(op, int n, int limit):
    cdef Py_ssize_t size = <Py_ssize_t> n * n * n
    cdef int* t = _as_array(op, size)
    cdef int x, y, z, w, xy, xz, xyz, xyw, xzw, lhs, mid, rhs
    cdef int nn = n * n
    out = []
    try:
        for x in range(n):
            for y in range(n):
                xy = (x * n + y) * n
                for z in range(n):
                    xyz = t[xy + z]
                    xz = (x * n + z) * n
                    for w in range(n):
                        xyw = t[xy + w]
                        xzw = t[xz + w]
                        lhs = t[y * nn + xyz * n + xyw]
                        mid = t[z * nn + xyz * n + xzw]
                        rhs = t[w * nn + xyw * n + xzw]
                        if lhs != mid or mid != rhs:
                            out.append((x, y, z, w))
                            if len(out) >= limit:
                                return out
        return out
    finally:
        free(t)


def vertical_violations(op, int n, int limit):
    cdef Py_ssize_t size = <Py_ssize_t> n * n * n
    cdef int* t = _as_array(op, size)
    cdef int x, y, z, w, xyz, yzw, q, r
    out = []
    try:
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    xyz = t[(x * n + y) * n + z]
                    for w in range(n):
                        yzw = t[(y * n + z) * n + w]
                        q = t[(xyz * n + z) * n + w]
                        r = t[(x * n + y) * n + yzw]
                        if t[(x * n + xyz) * n + q] != r:
                            out.append((0, x, y, z, w))
                            if len(out) >= limit:
                                return out
                        if q != t[(r * n + yzw) * n + w]:
                            out.append((1, x, y, z, w))
                            if len(out) >= limit:
                                return out
        return out
    finally:
        free(t)


def delta_witness(op, int n):
    cdef Py_ssize_t size = <Py_ssize_t> n * n * n
    cdef int* t = _as_array(op, size)
    cdef int x, y, z, w, xyz, xwy, xzw, first, second, third
    cdef int nn = n * n
    try:
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    xyz = t[(x * n + y) * n + z]
                    for w in range(n):
                        xwy = t[(x * n + w) * n + y]
                        xzw = t[(x * n + z) * n + w]
                        first = t[y * nn + xyz * n + xwy]
                        second = t[z * nn + xzw * n + xyz]
                        third = t[w * nn + xwy * n + xzw]
                        if first != second or second != third:
                            return (x, y, z, w)
        return None
    finally:
        free(t)


def count_plan(op, rinv, cinv, linv, int n, plan):
    cdef Py_ssize_t size = <Py_ssize_t> n * n * n
    cdef int steps = len(plan)
    if steps == 0:
        return 1
    cdef int nregions = 1 + max(step[1] for step in plan)
    cdef int nchecks = sum(len(step[5]) for step in plan)

    cdef int* tabs[5]
    tabs[0] = NULL
    tabs[1] = _as_array(op, size)
    tabs[2] = _as_array(rinv, size)
    tabs[3] = _as_array(cinv, size)
    tabs[4] = _as_array(linv, size)
    cdef int* kind = <int*> malloc(steps * sizeof(int))
    cdef int* region = <int*> malloc(steps * sizeof(int))
    cdef int* args = <int*> malloc(3 * steps * sizeof(int))
    cdef int* cstart = <int*> malloc((steps + 1) * sizeof(int))
    cdef int* chk = <int*> malloc(4 * max(nchecks, 1) * sizeof(int))
    cdef int* state = <int*> malloc((steps + 1) * sizeof(int))
    cdef int* val = <int*> malloc(nregions * sizeof(int))

    cdef int i, j, k, v, depth, ok
    cdef int* t = tabs[1]
    cdef unsigned long long total = 0
    cdef unsigned long long mult = 1
    cdef int tail = steps
    try:
        k = 0
        for i in range(steps):
            step = plan[i]
            kind[i] = step[0]
            region[i] = step[1]
            args[3 * i] = step[2]
            args[3 * i + 1] = step[3]
            args[3 * i + 2] = step[4]
            cstart[i] = k
            for check in step[5]:
                for j in range(4):
                    chk[4 * k + j] = check[j]
                k += 1
        cstart[steps] = k
        # trailing free steps with no checks contribute a factor n each
        while tail > 0 and kind[tail - 1] == 0 and cstart[tail - 1] == cstart[tail]:
            tail -= 1
            mult *= n

        depth = 0
        state[0] = 0
        while depth >= 0:
            if depth == tail:
                total += mult
                depth -= 1
                continue
            if kind[depth] == 0:
                v = state[depth]
                if v == n:
                    depth -= 1
                    continue
                state[depth] = v + 1
            else:
                if state[depth]:
                    depth -= 1
                    continue
                state[depth] = 1
                v = tabs[kind[depth]][(val[args[3 * depth]] * n
                                       + val[args[3 * depth + 1]]) * n
                                      + val[args[3 * depth + 2]]]
            val[region[depth]] = v
            ok = 1
            for j in range(cstart[depth], cstart[depth + 1]):
                if t[(val[chk[4 * j]] * n + val[chk[4 * j + 1]]) * n
                     + val[chk[4 * j + 2]]] != val[chk[4 * j + 3]]:
                    ok = 0
                    break
            if ok:
                depth += 1
                state[depth] = 0
        return total
    finally:
        for i in range(1, 5):
            free(tabs[i])
        free(kind)
        free(region)
        free(args)
        free(cstart)
        free(chk)
        free(state)
        free(val)
