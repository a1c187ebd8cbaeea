"""Pure-Python kernels; same contract as the compiled ``_ckernels``."""

from __future__ import annotations


def block_partners(parts, n):
    """Partner array (0-based, -1 = unpaired) for consecutive blocks of ``parts``."""
    partner = [-1] * n
    start = 0
    for size in parts:
        lo, hi = start, start + size - 1
        while lo < hi:
            partner[lo] = hi
            partner[hi] = lo
            lo += 1
            hi -= 1
        start += size
    return partner


def components(top, bottom):
    """Return (cycles, paths) of the multigraph given by two partner arrays."""
    n = len(top)
    seen = [False] * n
    cycles = 0
    paths = 0
    # paths: start at every vertex of degree <= 1
    for v in range(n):
        if seen[v] or (top[v] >= 0 and bottom[v] >= 0):
            continue
        paths += 1
        seen[v] = True
        # leave along whichever side exists, then alternate
        use_top = top[v] >= 0
        cur = v
        while True:
            nxt = top[cur] if use_top else bottom[cur]
            if nxt < 0:
                break
            seen[nxt] = True
            cur = nxt
            use_top = not use_top
    for v in range(n):
        if seen[v]:
            continue
        cycles += 1
        cur = v
        use_top = True
        while not seen[cur]:
            seen[cur] = True
            cur = top[cur] if use_top else bottom[cur]
            use_top = not use_top
    return cycles, paths


def index_census(n, allowed, distinct, mus, stride):
    """Enumerate partitions of ``n`` with admissible parts and tally statistics.

    allowed: bytes of length n+1 (allowed[p] != 0 iff part p may occur).
    mus: list of compositions of n; each checked partition is paired with each.
    stride: 0 = no graphs; k = build graphs for partitions whose ordinal
        (in decreasing lexicographic order) is divisible by k.

    Returns (op_hist, joint, cycles, path_violations, checked, total) where
    joint[m][op * (n + 1) + index] counts checked partitions by odd-part count
    and graph index against mus[m].
    """
    if n < 1:
        raise ValueError("index_census needs n >= 1")
    size = n + 1
    mu_bottoms = [block_partners(mu, n) for mu in mus]
    mu_ops = [sum(p & 1 for p in mu) for mu in mus]
    nmu = len(mus)
    op_hist = [0] * size
    joint = [[0] * (size * size) for _ in range(nmu)]
    cycles_tot = [0] * nmu
    path_bad = [0] * nmu
    checked = 0
    total = 0

    allowed_desc = [p for p in range(n, 0, -1) if allowed[p]]
    nallowed = len(allowed_desc)
    parts = []
    idx = []
    remaining = n
    i = 0
    while True:
        while remaining > 0:
            while i < nallowed and allowed_desc[i] > remaining:
                i += 1
            if i == nallowed:
                break
            parts.append(allowed_desc[i])
            idx.append(i)
            remaining -= allowed_desc[i]
            if distinct:
                i += 1
        if remaining == 0:
            op = 0
            for p in parts:
                op += p & 1
            op_hist[op] += 1
            if stride and total % stride == 0:
                checked += 1
                top = block_partners(parts, n)
                for m in range(nmu):
                    c, pth = components(top, mu_bottoms[m])
                    ind = 2 * c + pth - 1
                    joint[m][op * size + ind] += 1
                    cycles_tot[m] += c
                    if 2 * pth != op + mu_ops[m]:
                        path_bad[m] += 1
            total += 1
        while parts:
            p = parts.pop()
            j = idx.pop()
            remaining += p
            if j + 1 < nallowed:
                i = j + 1
                break
        else:
            break
    return op_hist, joint, cycles_tot, path_bad, checked, total
