import itertools
import random

import pytest


def brute_partitions(n):
    """All partitions of n as sorted-descending tuples, via compositions."""
    if n == 0:
        return {()}
    out = set()
    # every composition of n corresponds to a subset of the n-1 cut points
    for cuts in itertools.product((0, 1), repeat=n - 1):
        parts, run = [], 1
        for c in cuts:
            if c:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        out.add(tuple(sorted(parts, reverse=True)))
    return out


def union_find_components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    return len({find(v) for v in range(n)})


def brute_meander(lam, mu):
    """(cycles, paths) from an explicit multigraph edge list.

    Each component is a cycle iff it has as many edges as vertices.
    """
    n = sum(lam)
    edges = []
    for parts in (lam, mu):
        start = 0
        for size in parts:
            for j in range(size // 2):
                edges.append((start + j, start + size - 1 - j))
            start += size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    vcount, ecount = {}, {}
    for v in range(n):
        r = find(v)
        vcount[r] = vcount.get(r, 0) + 1
    for a, _ in edges:
        r = find(a)
        ecount[r] = ecount.get(r, 0) + 1
    cycles = sum(1 for r in vcount if ecount.get(r, 0) == vcount[r])
    return cycles, len(vcount) - cycles


def random_composition(rng, n):
    parts, left = [], n
    while left:
        p = rng.randint(1, left)
        parts.append(p)
        left -= p
    return tuple(parts)


@pytest.fixture
def rng():
    return random.Random(20240517)
