"""Hot-loop kernels, compiled when available.

The Cython extension ``_ckernels`` is used if it was built; otherwise the
pure-Python ``_pykernels`` is used.  Setting ``PARTINDEX_PURE=1`` forces the
pure-Python path.  Both backends return identical results.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

from . import _pykernels

if os.environ.get("PARTINDEX_PURE", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"


def block_partners(parts: Sequence[int], n: int) -> list[int]:
    return _impl.block_partners(list(parts), n)


def components(top: Sequence[int], bottom: Sequence[int]) -> tuple[int, int]:
    return _impl.components(list(top), list(bottom))


@dataclass(frozen=True)
class CensusTally:
    """Raw counts from one pass over the partitions of ``n``.

    ``joint[m][op][ind]`` counts the graph-checked partitions with ``op`` odd
    parts whose meander against ``mus[m]`` has index ``ind``.
    """

    n: int
    mus: tuple[tuple[int, ...], ...]
    op_hist: tuple[int, ...]
    joint: tuple[tuple[tuple[int, ...], ...], ...]
    cycles: tuple[int, ...]
    path_violations: tuple[int, ...]
    checked: int
    total: int

    def index_hist(self, m: int) -> list[int]:
        return [sum(row[ind] for row in self.joint[m]) for ind in range(self.n + 1)]


def index_census(
    n: int,
    allowed: bytes,
    distinct: bool,
    mus: Sequence[Sequence[int]] = (),
    stride: int = 0,
) -> CensusTally:
    if n < 1:
        raise ValueError(f"index_census needs n >= 1, got {n}")
    if stride < 0:
        raise ValueError(f"stride must be nonnegative, got {stride}")
    mus = tuple(tuple(int(p) for p in mu) for mu in mus)
    for mu in mus:
        if sum(mu) != n:
            raise ValueError(f"mu {mu} does not have weight {n}")
    op_hist, joint, cycles, bad, checked, total = _impl.index_census(
        n, bytes(allowed), bool(distinct), [list(mu) for mu in mus], stride
    )
    size = n + 1
    joint_t = tuple(
        tuple(tuple(flat[op * size : (op + 1) * size]) for op in range(size)) for flat in joint
    )
    return CensusTally(
        n=n,
        mus=mus,
        op_hist=tuple(op_hist),
        joint=joint_t,
        cycles=tuple(cycles),
        path_violations=tuple(bad),
        checked=checked,
        total=total,
    )
