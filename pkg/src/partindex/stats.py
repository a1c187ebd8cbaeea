"""Index statistics of partitions by exhaustive enumeration.

Everything here is computed from partition enumeration and meander graphs;
this module never touches the series code, so it can serve as the
brute-force side of every generating-function identity.
"""

from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import kernels
from .meander import count_components, build_meander, seaweed_index
from .partitions import (
    ClassTag,
    Partition,
    PartitionClass,
    enumerate_partitions,
    frequency_vector,
)

__all__ = [
    "ConsistencyError",
    "StatRecord",
    "CnkTable",
    "ind",
    "cind",
    "census",
    "census_range",
    "e_ind",
    "signed_e_ind",
    "cnk_row",
    "cnk_table",
    "remark_equivalence",
    "SAMPLE_STRIDE",
]

# graph-check every 100th partition when using the parity formula
SAMPLE_STRIDE = 100


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""


def _as_partition(lam) -> Partition:
    return lam if isinstance(lam, Partition) else Partition(tuple(lam))


def ind(lam) -> int:
    """Index of the seaweed of type lam/(n); -1 for the empty partition."""
    lam = _as_partition(lam)
    n = lam.weight
    return seaweed_index(lam, (n,) if n else ())


def cind(lam) -> int:
    """Index of the seaweed of type lam/1^n, checked against (op + n)/2 - 1."""
    lam = _as_partition(lam)
    n = lam.weight
    graph = seaweed_index(lam, (1,) * n)
    if n == 0:
        return graph
    closed = (lam.op_count + n) // 2 - 1
    if graph != closed:
        raise ConsistencyError(f"cind{lam.parts}: graph gives {graph}, closed form gives {closed}")
    return graph


@dataclass(frozen=True)
class StatRecord:
    """Parity census of one class at weight n.

    ``op_residue[r]`` counts partitions whose number of odd parts is r mod 4.
    """

    n: int
    e: int
    o: int
    ebar: int
    obar: int
    op_residue: tuple[int, int, int, int]
    cls: str = field(default="P", compare=False)

    @property
    def total(self) -> int:
        return self.e + self.o

    @property
    def diff(self) -> int:
        return self.o - self.e

    @property
    def diff_bar(self) -> int:
        return self.obar - self.ebar

    def row(self) -> dict:
        r = self.op_residue
        return {
            "n": self.n, "e": self.e, "o": self.o, "ebar": self.ebar, "obar": self.obar,
            "op0": r[0], "op1": r[1], "op2": r[2], "op3": r[3],
        }


CENSUS_COLUMNS = ("n", "e", "o", "ebar", "obar", "op0", "op1", "op2", "op3")


def _empty_record(cls: PartitionClass) -> StatRecord:
    # the empty partition: ind = cind = -1 (odd), op = 0
    return StatRecord(0, 0, 1, 0, 1, (1, 0, 0, 0), cls.label)


def census(cls: PartitionClass, n: int, method: str = "sample") -> StatRecord:
    """Classify every partition of n in ``cls`` by ind/cind parity and op mod 4.

    method="sample": parities from the odd-part counts alone, with
        every 100th partition also run through full meander graphs; any
        disagreement raises ConsistencyError.
    method="graph": parities read off the meander of every partition.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if method not in ("sample", "graph"):
        raise ValueError(f"unknown census method {method!r}")
    if n == 0:
        return _empty_record(cls)
    mus = ((n,), (1,) * n)
    stride = 1 if method == "graph" else SAMPLE_STRIDE
    tally = kernels.index_census(n, cls.allowed_mask(n), cls.distinct_parts, mus, stride)
    residue = [0, 0, 0, 0]
    for op, cnt in enumerate(tally.op_hist):
        residue[op % 4] += cnt
    for m, mu in enumerate(mus):
        if tally.path_violations[m]:
            raise ConsistencyError(f"path count formula failed for {tally.path_violations[m]} partitions of {n} against {mu[:3]}...")

    def parities_from_graph(m):
        even = odd = 0
        for ind_val, cnt in enumerate(tally.index_hist(m)):
            if ind_val % 2:
                odd += cnt
            else:
                even += cnt
        return even, odd

    def parities_from_formula(m, rows):
        mu_op = sum(p & 1 for p in mus[m])
        even = odd = 0
        for op, cnt in enumerate(rows):
            if ((op + mu_op) // 2 - 1) % 2:
                odd += cnt
            else:
                even += cnt
        return even, odd

    if method == "graph":
        e, o = parities_from_graph(0)
        ebar, obar = parities_from_graph(1)
    else:
        for m in range(2):
            # sampled partitions: per-op graph parities must match the formula
            mu_op = sum(p & 1 for p in mus[m])
            for op, row in enumerate(tally.joint[m]):
                want = ((op + mu_op) // 2 - 1) % 2
                bad = sum(cnt for ind_val, cnt in enumerate(row) if ind_val % 2 != want)
                if bad:
                    raise ConsistencyError(
                        f"index parity formula disagrees with the meander for {bad} sampled "
                        f"partitions of {n} with {op} odd parts"
                    )
        e, o = parities_from_formula(0, tally.op_hist)
        ebar, obar = parities_from_formula(1, tally.op_hist)
    return StatRecord(n, e, o, ebar, obar, tuple(residue), cls.label)


def _census_job(args):
    cls, n, method = args
    return census(cls, n, method)


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("PARTINDEX_JOBS", "1")))
    except ValueError:
        return 1


def census_range(
    cls: PartitionClass, max_n: int, method: str = "sample", jobs: Optional[int] = None
) -> list[StatRecord]:
    """census(cls, n) for n = 0..max_n; worker count never changes the result."""
    jobs = jobs or _default_jobs()
    todo = [(cls, n, method) for n in range(max_n + 1)]
    # user predicates are usually lambdas and cannot be sent to workers
    if jobs <= 1 or cls.tag in (ClassTag.PREDICATE, ClassTag.NO_ONES) and cls.predicate is not None:
        return [_census_job(t) for t in todo]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_census_job, todo))


def e_ind(n: int) -> int:
    """Odd-index minus even-index count over partitions of n into odd parts."""
    rec = census(PartitionClass.odd_parts(), n, method="graph")
    return rec.o - rec.e


def signed_e_ind(n: int) -> int:
    return (-1) ** ((n + 1) // 2) * e_ind(n)


# -- c_n(k) ---------------------------------------------------------------------


def cnk_row(n: int) -> list[int]:
    """c_n(k) for k = 0..n//2: partitions of n with graph cind = n - k - 1."""
    if n == 0:
        return [1]
    tally = kernels.index_census(n, PartitionClass.all().allowed_mask(n), False, ((1,) * n,), 1)
    if tally.cycles[0]:
        raise ConsistencyError(f"meanders against 1^{n} contain {tally.cycles[0]} cycles")
    row = [0] * (n // 2 + 1)
    for ind_val, cnt in enumerate(tally.index_hist(0)):
        if cnt:
            k = n - 1 - ind_val
            if not 0 <= k <= n // 2:
                raise ConsistencyError(f"cind value {ind_val} out of range for n = {n}")
            row[k] += cnt
    return row


def _half_weight(lam: Partition) -> int:
    # sum_i i * (f_{2i} + f_{2i+1})
    return sum((size // 2) * mult for size, mult in frequency_vector(lam).items())


@dataclass(frozen=True)
class CnkTable:
    """c[n][k] for n <= 3 max_k, c_tilde[n][k] likewise, and the limits c(k)."""

    max_k: int
    c: tuple[tuple[int, ...], ...]
    c_tilde: tuple[tuple[int, ...], ...]
    limit: tuple[int, ...]

    @property
    def max_n(self) -> int:
        return 3 * self.max_k

    def rows(self) -> list[dict]:
        out = []
        for n in range(self.max_n + 1):
            for k in range(self.max_k + 1):
                out.append({"n": n, "k": k, "c": self.c[n][k], "ctilde": self.c_tilde[n][k]})
        return out


CNK_COLUMNS = ("n", "k", "c", "ctilde")


def cnk_table(max_k: int) -> CnkTable:
    if max_k < 0:
        raise ValueError(f"max_k must be nonnegative, got {max_k}")
    max_n = 3 * max_k
    c = []
    ct = []
    no_ones = PartitionClass.no_ones()
    for n in range(max_n + 1):
        row = cnk_row(n)
        c.append(tuple((row + [0] * (max_k + 1))[: max_k + 1]))
        trow = [0] * (max_k + 1)
        for lam in enumerate_partitions(n, no_ones):
            k = _half_weight(lam)
            if k <= max_k:
                trow[k] += 1
        ct.append(tuple(trow))
    limit = tuple(c[3 * k][k] for k in range(max_k + 1))
    for k in range(max_k + 1):
        s = sum(ct[n][k] for n in range(max_n + 1))
        if s != limit[k]:
            raise ConsistencyError(f"sum_n c~_n({k}) = {s} but c_{3 * k}({k}) = {limit[k]}")
    return CnkTable(max_k, tuple(c), tuple(ct), limit)


# -- remark ---------------------------------------------------------------------


def _remark_mu(n: int, variant: str) -> tuple[int, ...]:
    if variant == "case1":
        return (2,) * (n // 2) + (1,) * (n % 2)
    if variant == "case2":
        return (4,) * (n // 4) + (1,) * (n % 4)
    raise ValueError(f"unknown variant {variant!r}; expected 'case1' or 'case2'")


def remark_equivalence(n: int, variant: str, *, mu: Optional[Sequence[int]] = None) -> bool:
    """Check ind_mu = ind_n (case1) or ind_mu = ind_{1^n} (case2) mod 2 for every λ ⊢ n.

    ``mu`` defaults to 2^(n//2) 1^(n%2) for case1 and 4^(n//4) 1^(n%4) for case2.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    default = _remark_mu(n, variant)
    mu = default if mu is None else tuple(mu)
    ref = (n,) if variant == "case1" else (1,) * n
    for lam in enumerate_partitions(n):
        a = count_components(build_meander(lam, mu))
        b = count_components(build_meander(lam, ref))
        if (2 * a.cycles + a.paths - 1 - (2 * b.cycles + b.paths - 1)) % 2:
            return False
    return True


# -- serialization ----------------------------------------------------------------


def _csv(columns: Sequence[str], rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def records_to_csv(records: Sequence[StatRecord]) -> str:
    return _csv(CENSUS_COLUMNS, [r.row() for r in records])


def records_to_json(records: Sequence[StatRecord]) -> str:
    return json.dumps([r.row() for r in records], indent=1) + "\n"


def cnk_to_csv(table: CnkTable) -> str:
    return _csv(CNK_COLUMNS, table.rows())


def cnk_to_json(table: CnkTable) -> str:
    return json.dumps(table.rows(), indent=1) + "\n"
