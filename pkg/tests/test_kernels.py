import os
import subprocess
import sys

import pytest

from partindex import _pykernels, kernels
from partindex.partitions import PartitionClass, enumerate_partitions

from conftest import random_composition

try:
    from partindex import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_ext = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


@needs_ext
def test_compiled_backend_selected_by_default():
    assert kernels.BACKEND == "cython"


def test_env_var_forces_pure_python():
    code = "from partindex import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, PARTINDEX_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
def test_components_agree(rng):
    for _ in range(2000):
        n = rng.randint(1, 40)
        lam, mu = random_composition(rng, n), random_composition(rng, n)
        top = _pykernels.block_partners(lam, n)
        bottom = _pykernels.block_partners(mu, n)
        assert _ckernels.block_partners(list(lam), n) == top
        assert _ckernels.components(top, bottom) == _pykernels.components(top, bottom)


CASES = [
    (PartitionClass.all(), 1),
    (PartitionClass.all(), 3),
    (PartitionClass.distinct(), 1),
    (PartitionClass.odd_parts(), 1),
    (PartitionClass.odd_mod_four_d(2), 2),
    (PartitionClass.no_ones(), 1),
]


@needs_ext
@pytest.mark.parametrize("cls,stride", CASES, ids=lambda x: str(x))
@pytest.mark.parametrize("n", [1, 2, 7, 16])
def test_index_census_agrees(cls, stride, n):
    mus = [[n], [1] * n, [2] * (n // 2) + [1] * (n % 2)]
    args = (n, cls.allowed_mask(n), cls.distinct_parts, mus, stride)
    assert _ckernels.index_census(*args) == _pykernels.index_census(*args)


@pytest.mark.parametrize("cls", [PartitionClass.all(), PartitionClass.distinct(), PartitionClass.odd_mod_four_d(1)], ids=str)
def test_kernel_enumeration_matches_python_stream(cls):
    for n in range(1, 18):
        tally = kernels.index_census(n, cls.allowed_mask(n), cls.distinct_parts)
        hist = [0] * (n + 1)
        for lam in enumerate_partitions(n, cls):
            hist[lam.op_count] += 1
        assert list(tally.op_hist) == hist
        assert tally.total == sum(hist)
        assert tally.checked == 0


def test_stride_samples_every_kth_partition():
    n = 20
    tally = kernels.index_census(n, PartitionClass.all().allowed_mask(n), False, [[n]], 100)
    assert tally.total == 627
    assert tally.checked == 7  # ordinals 0, 100, ..., 600


def test_index_census_rejects_bad_input():
    with pytest.raises(ValueError):
        kernels.index_census(0, b"\x00", False)
    with pytest.raises(ValueError):
        kernels.index_census(3, b"\x00\x01\x01\x01", False, [[2]])
    with pytest.raises(ValueError):
        kernels.index_census(3, b"\x00\x01\x01\x01", False, stride=-1)
