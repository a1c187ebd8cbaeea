"""Compare the compiled and pure-Python kernels on the census hot loop.

Usage: python benchmarks/bench_kernels.py [--max-n 30] [--repeat 3]
"""

import argparse
import random
import timeit

from partindex import _pykernels
from partindex.partitions import PartitionClass

try:
    from partindex import _ckernels
except ImportError:
    _ckernels = None


def census_case(n, stride):
    cls = PartitionClass.all()
    return (n, cls.allowed_mask(n), False, [[n], [1] * n], stride)


def component_cases(count, max_n, seed=7):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        pair = []
        for _ in range(2):
            parts, left = [], n
            while left:
                p = rng.randint(1, left)
                parts.append(p)
                left -= p
            pair.append(_pykernels.block_partners(parts, n))
        out.append(tuple(pair))
    return out


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=30, help="largest n for index_census")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.insert(0, ("cython", _ckernels))
    else:
        print("compiled kernels not built; timing the pure-Python backend only")

    print(f"{'workload':<34}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    rows = []
    for n in range(10, args.max_n + 1, 10):
        for stride in (0, 1):
            case = census_case(n, stride)
            label = f"index_census n={n} stride={stride}"
            rows.append((label, [best(lambda m=mod: m.index_census(*case), args.repeat) for _, mod in backends]))
    pairs = component_cases(10_000, 50)
    rows.append((
        "components x 10^4, n <= 50",
        [best(lambda m=mod: [m.components(t, b) for t, b in pairs], args.repeat) for _, mod in backends],
    ))
    for label, times in rows:
        speed = f"{times[-1] / times[0]:>9.1f}x" if len(times) > 1 else ""
        print(f"{label:<34}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times) + speed)


if __name__ == "__main__":
    main()
