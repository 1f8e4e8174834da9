import pathlib

import numpy as np
import pytest

from tspectral import Tensor3

FIXTURE_DIR = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURE_DIR


@pytest.fixture
def a1():
    # 2x2x2 example with symmetric block-circulant matrix
    return Tensor3.from_slices([[[2, 1], [1, 3]], [[0, 1], [1, 0]]])


@pytest.fixture
def a2():
    return Tensor3.from_slices([[[2, 1], [1, 3]], [[1, 0], [0, 2]]])


@pytest.fixture
def b2():
    return Tensor3.from_slices([[[1, 0], [0, 1]], [[0, 1], [1, 0]]])


# Golden distance fixtures: the published frontal slices interleave the
# columns of two symmetric matrices; swapping the column and tube axes
# recovers the symmetric-slice tensors the reference value was computed on.
A3_SLICES = [
    [[1.1097627, 1.19273255], [0.13179527, 0.11751666]],
    [[0.13179527, 0.11751666], [1.10897664, 1.10577898]],
]
B3_SLICES = [
    [[2.08473096, 2.11360891], [0.10834813, 0.09966327]],
    [[0.10834813, 0.09966327], [2.1783546, 2.01742586]],
]

BW_GOLDEN_VALUE = 0.7054867277404278


@pytest.fixture
def a3():
    return Tensor3.from_slices(A3_SLICES)


@pytest.fixture
def b3():
    return Tensor3.from_slices(B3_SLICES)


def swap_column_tube_axes(t: Tensor3) -> Tensor3:
    return Tensor3(np.transpose(t.data, (0, 2, 1)))


@pytest.fixture
def a3_symmetric(a3):
    return swap_column_tube_axes(a3)


@pytest.fixture
def b3_symmetric(b3):
    return swap_column_tube_axes(b3)


def random_tensor(rng, m, n, p, complex_kind=False):
    data = rng.standard_normal((m, n, p))
    if complex_kind:
        data = data + 1j * rng.standard_normal((m, n, p))
    return Tensor3(data)


def random_hermitian(rng, n, p, complex_kind=False):
    from tspectral import conj_transpose

    m = random_tensor(rng, n, n, p, complex_kind)
    return (m + conj_transpose(m)) * 0.5


def random_psd_tensor(rng, n, p):
    from tspectral import conj_transpose, tprod_fft

    m = random_tensor(rng, n, n, p)
    return tprod_fft(m, conj_transpose(m))


def random_pd_tensor(rng, n, p, bump=0.5):
    from tspectral import identity

    return random_psd_tensor(rng, n, p) + bump * identity(n, p)
