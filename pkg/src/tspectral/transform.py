"""Fourier-domain tensor representation and the two t-product paths.

The DFT along tubes block-diagonalizes the block-circulant matrix: with
``F`` the unitary ``p x p`` DFT matrix,

    bcirc(A) == (F kron I)^H @ blkdiag(fourier slices) @ (F kron I)

so slice-wise matrix algebra on the Fourier slices is equivalent to dense
algebra on ``bcirc``.  The forward transform itself is unnormalized
(``numpy.fft.fft``) and the inverse carries the ``1/p`` factor, which makes
the Fourier slices equal to the diagonal blocks above.  ``tprod_dense`` is the literal fold/bcirc/unfold
definition and serves as the reference oracle; ``tprod_fft`` is the fast
path.  Callers pick the path explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Tensor3, bcirc, fold, unfold
from .errors import NumericError, ShapeError

__all__ = [
    "SpectralSlices",
    "to_fourier",
    "from_fourier",
    "tprod_dense",
    "tprod_fft",
    "tprod",
]

# Imaginary residue allowed when coercing an inverse DFT back to real kind.
REAL_COERCION_RTOL = 1e-8


@dataclass(frozen=True)
class SpectralSlices:
    """The p complex Fourier slices of a tensor, stored as (n1, n2, p)."""

    slices: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.slices, dtype=np.complex128)
        if arr.ndim != 3:
            raise ShapeError(f"spectral data must be 3-dimensional, got {arr.shape}")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "slices", arr)

    @property
    def n1(self) -> int:
        return self.slices.shape[0]

    @property
    def n2(self) -> int:
        return self.slices.shape[1]

    @property
    def p(self) -> int:
        return self.slices.shape[2]

    def slice_matrix(self, k: int) -> np.ndarray:
        """Copy of the k-th Fourier slice, 1-based."""
        return self.slices[:, :, k - 1].copy()


def to_fourier(t: Tensor3) -> SpectralSlices:
    """Unnormalized DFT along tubes; slice k is a diagonal block of bcirc."""
    return SpectralSlices(np.fft.fft(t.data, axis=2))


def from_fourier(s: SpectralSlices, kind: str | None = None) -> Tensor3:
    """Inverse DFT along tubes (the inverse carries the 1/p factor).

    Parameters
    ----------
    s : SpectralSlices
    kind : {"real", "complex", None}
        ``"real"`` demands a real result and raises
        :class:`~tspectral.errors.NumericError` when the imaginary residue
        exceeds ``1e-8 * (1 + max|entry|)``.  ``None`` coerces to real only
        when the residue is below that same threshold.
    """
    data = np.fft.ifft(s.slices, axis=2)
    resid = float(np.abs(data.imag).max()) if data.size else 0.0
    scale = 1.0 + (float(np.abs(data).max()) if data.size else 0.0)
    if kind == "complex":
        return Tensor3(data)
    if resid <= REAL_COERCION_RTOL * scale:
        return Tensor3(data.real.copy())
    if kind == "real":
        raise NumericError(
            f"imaginary residue {resid:.3e} exceeds {REAL_COERCION_RTOL * scale:.3e}; "
            "spectral slices are not conjugate-symmetric"
        )
    return Tensor3(data)


def _check_conformable(a: Tensor3, b: Tensor3) -> None:
    if a.n != b.m or a.p != b.p:
        raise ShapeError(
            f"t-product needs a.n == b.m and a.p == b.p, got {a.shape} * {b.shape}"
        )


def tprod_dense(a: Tensor3, b: Tensor3) -> Tensor3:
    """Reference t-product: fold(bcirc(a) @ unfold(b))."""
    _check_conformable(a, b)
    return fold(bcirc(a) @ unfold(b), a.p)


def tprod_fft(a: Tensor3, b: Tensor3) -> Tensor3:
    """Fast t-product via slice-wise products in the Fourier domain."""
    _check_conformable(a, b)
    ahat = np.fft.fft(a.data, axis=2)
    bhat = np.fft.fft(b.data, axis=2)
    chat = np.einsum("ijk,jlk->ilk", ahat, bhat)
    want_real = a.kind == "real" and b.kind == "real"
    return from_fourier(SpectralSlices(chat), kind="real" if want_real else "complex")


def tprod(a: Tensor3, b: Tensor3, path: str = "fft") -> Tensor3:
    """Dispatch to :func:`tprod_fft` or :func:`tprod_dense` by name."""
    if path == "fft":
        return tprod_fft(a, b)
    if path == "dense":
        return tprod_dense(a, b)
    raise ValueError(f"unknown t-product path {path!r}; use 'dense' or 'fft'")
