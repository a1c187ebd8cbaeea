# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for meander component counting and census enumeration.

Contract is identical to ``partindex._pykernels``.
"""

from libc.stdlib cimport malloc, calloc, free


cdef void _fill_partners(long *partner, const long *parts, long nparts, long n) noexcept nogil:
    cdef long k, start = 0, lo, hi
    for k in range(n):
        partner[k] = -1
    for k in range(nparts):
        lo = start
        hi = start + parts[k] - 1
        while lo < hi:
            partner[lo] = hi
            partner[hi] = lo
            lo += 1
            hi -= 1
        start += parts[k]


cdef void _components(const long *top, const long *bottom, long n, char *seen,
                      long *cycles, long *paths) noexcept nogil:
    cdef long v, cur, nxt, c = 0, p = 0
    cdef bint use_top
    for v in range(n):
        seen[v] = 0
    for v in range(n):
        if seen[v] or (top[v] >= 0 and bottom[v] >= 0):
            continue
        p += 1
        seen[v] = 1
        use_top = top[v] >= 0
        cur = v
        while True:
            nxt = top[cur] if use_top else bottom[cur]
            if nxt < 0:
                break
            seen[nxt] = 1
            cur = nxt
            use_top = not use_top
    for v in range(n):
        if seen[v]:
            continue
        c += 1
        cur = v
        use_top = True
        while not seen[cur]:
            seen[cur] = 1
            cur = top[cur] if use_top else bottom[cur]
            use_top = not use_top
    cycles[0] = c
    paths[0] = p


def block_partners(parts, long n):
    """Partner array (0-based, -1 = unpaired) for consecutive blocks of ``parts``."""
    cdef long nparts = len(parts)
    cdef long *buf = <long *> malloc(sizeof(long) * (nparts + 1))
    cdef long *partner = <long *> malloc(sizeof(long) * (n + 1))
    cdef long k
    try:
        for k in range(nparts):
            buf[k] = parts[k]
        _fill_partners(partner, buf, nparts, n)
        return [partner[k] for k in range(n)]
    finally:
        free(buf)
        free(partner)


def components(top, bottom):
    """Return (cycles, paths) of the multigraph given by two partner arrays."""
    cdef long n = len(top)
    cdef long *t = <long *> malloc(sizeof(long) * (n + 1))
    cdef long *b = <long *> malloc(sizeof(long) * (n + 1))
    cdef char *seen = <char *> malloc(n + 1)
    cdef long k, c = 0, p = 0
    try:
        for k in range(n):
            t[k] = top[k]
            b[k] = bottom[k]
        _components(t, b, n, seen, &c, &p)
        return c, p
    finally:
        free(t)
        free(b)
        free(seen)


def index_census(long n, bytes allowed, bint distinct, mus, long stride):
    """See ``partindex._pykernels.index_census``."""
    if n < 1:
        raise ValueError("index_census needs n >= 1")
    cdef long size = n + 1
    cdef long nmu = len(mus)
    cdef long nallowed = 0
    cdef long k, m, p, j, op, c, pth, ind, depth = 0, remaining = n, i = 0
    cdef long long total = 0, checked = 0
    cdef long *allowed_desc = <long *> malloc(sizeof(long) * size)
    cdef long *parts = <long *> malloc(sizeof(long) * size)
    cdef long *idx = <long *> malloc(sizeof(long) * size)
    cdef long *top = <long *> malloc(sizeof(long) * size)
    cdef long *bottoms = <long *> malloc(sizeof(long) * size * (nmu + 1))
    cdef long *mu_ops = <long *> calloc(nmu + 1, sizeof(long))
    cdef long *mubuf = <long *> malloc(sizeof(long) * size)
    cdef char *seen = <char *> malloc(size)
    cdef long long *op_hist = <long long *> calloc(size, sizeof(long long))
    cdef long long *joint = <long long *> calloc(size * size * (nmu + 1), sizeof(long long))
    cdef long long *cycles_tot = <long long *> calloc(nmu + 1, sizeof(long long))
    cdef long long *path_bad = <long long *> calloc(nmu + 1, sizeof(long long))
    cdef bint found
    cdef const unsigned char *mask = allowed
    try:
        if len(allowed) < size:
            raise ValueError("allowed mask shorter than n + 1")
        for p in range(n, 0, -1):
            if mask[p]:
                allowed_desc[nallowed] = p
                nallowed += 1
        for m in range(nmu):
            mu = mus[m]
            if sum(mu) != n:
                raise ValueError(f"mu {tuple(mu)} does not have weight {n}")
            for k in range(len(mu)):
                mubuf[k] = mu[k]
                mu_ops[m] += mu[k] & 1
            _fill_partners(bottoms + m * size, mubuf, len(mu), n)

        with nogil:
            while True:
                while remaining > 0:
                    while i < nallowed and allowed_desc[i] > remaining:
                        i += 1
                    if i == nallowed:
                        break
                    parts[depth] = allowed_desc[i]
                    idx[depth] = i
                    depth += 1
                    remaining -= allowed_desc[i]
                    if distinct:
                        i += 1
                if remaining == 0:
                    op = 0
                    for k in range(depth):
                        op += parts[k] & 1
                    op_hist[op] += 1
                    if stride > 0 and total % stride == 0:
                        checked += 1
                        _fill_partners(top, parts, depth, n)
                        for m in range(nmu):
                            _components(top, bottoms + m * size, n, seen, &c, &pth)
                            ind = 2 * c + pth - 1
                            joint[m * size * size + op * size + ind] += 1
                            cycles_tot[m] += c
                            if 2 * pth != op + mu_ops[m]:
                                path_bad[m] += 1
                    total += 1
                found = False
                while depth > 0:
                    depth -= 1
                    p = parts[depth]
                    j = idx[depth]
                    remaining += p
                    if j + 1 < nallowed:
                        i = j + 1
                        found = True
                        break
                if not found:
                    break

        return (
            [op_hist[k] for k in range(size)],
            [[joint[m * size * size + k] for k in range(size * size)] for m in range(nmu)],
            [cycles_tot[m] for m in range(nmu)],
            [path_bad[m] for m in range(nmu)],
            checked,
            total,
        )
    finally:
        free(allowed_desc)
        free(parts)
        free(idx)
        free(top)
        free(bottoms)
        free(mu_ops)
        free(mubuf)
        free(seen)
        free(op_hist)
        free(joint)
        free(cycles_tot)
        free(path_bad)
