"""Tensor eigenvalues, t-SVD, Hermitian tensor functions and PSD structure.

All spectral data of a tensor lives in its block-circulant matrix.  The
fast path never forms that matrix: each Fourier slice is a diagonal block
of it, so eigenvalues, singular values and Hermitian functions are computed
slice by slice and mapped back with the inverse DFT.  The dense
block-circulant route is kept available as an oracle (``method="bcirc"``).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Tensor3, bcirc, frobenius_norm, conj_transpose, identity
from .errors import DomainError, NumericError, PreconditionError, ShapeError, SingularityError
from .transform import SpectralSlices, from_fourier, to_fourier, tprod_fft

__all__ = [
    "Spectrum",
    "EigFactors",
    "TSvdFactors",
    "HermitianCheck",
    "PsdCheck",
    "t_eigenvalues",
    "hermitian_eig",
    "t_svd",
    "t_function",
    "is_hermitian",
    "is_psd",
    "psd_factor",
    "random_psd",
]

HERMITIAN_RTOL = 1e-10
HERMITIAN_IMAG_ATOL = 1e-9


def psd_tolerance(lam_max: float) -> float:
    """Eigenvalue slack below zero still accepted as semidefinite."""
    return 1e-9 * max(1.0, abs(lam_max))


def pd_tolerance(lam_max: float) -> float:
    """Smallest eigenvalue still treated as strictly positive."""
    return 1e-12 * max(1.0, abs(lam_max))


@dataclass(frozen=True)
class Spectrum:
    """Multiset of tensor eigenvalues (the block-circulant spectrum).

    ``values`` is sorted by descending real part, then descending imaginary
    part, ties broken by ascending slice index.  ``provenance`` holds the
    1-based Fourier-slice index each value came from; it is ``None`` for the
    dense block-circulant method, which cannot attribute values to slices.
    Strictly speaking only the real elements are tensor eigenvalues in the
    eigenpair sense, but the full block-circulant spectrum is exposed since
    every trace identity runs over all of it.
    """

    values: np.ndarray
    provenance: np.ndarray | None = None

    def __post_init__(self):
        vals = np.asarray(self.values).copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if self.provenance is not None:
            prov = np.asarray(self.provenance, dtype=int).copy()
            if prov.shape != vals.shape:
                raise ShapeError("provenance must align with values")
            prov.setflags(write=False)
            object.__setattr__(self, "provenance", prov)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def is_real(self) -> bool:
        return self.values.dtype.kind != "c"

    @property
    def max(self):
        return self.values[0]

    @property
    def min(self):
        return self.values[-1]

    @property
    def spectral_radius(self) -> float:
        return float(np.abs(self.values).max())


@dataclass(frozen=True)
class EigFactors:
    """Unitary factorization A = Q * L * Q^H of a Hermitian tensor.

    ``L`` is f-diagonal; its Fourier-slice diagonals are the (real)
    eigenvalues, exposed as ``fourier_eigenvalues`` with shape (n, p) in
    descending order per slice.
    """

    q: Tensor3
    l: Tensor3
    fourier_eigenvalues: np.ndarray

    def __post_init__(self):
        ev = np.asarray(self.fourier_eigenvalues, dtype=np.float64).copy()
        ev.setflags(write=False)
        object.__setattr__(self, "fourier_eigenvalues", ev)


@dataclass(frozen=True)
class TSvdFactors:
    """t-SVD triple A = U * S * V^H with f-diagonal non-negative S."""

    u: Tensor3
    s: Tensor3
    v: Tensor3
    fourier_singular_values: np.ndarray

    def __post_init__(self):
        sv = np.asarray(self.fourier_singular_values, dtype=np.float64).copy()
        sv.setflags(write=False)
        object.__setattr__(self, "fourier_singular_values", sv)


@dataclass(frozen=True)
class HermitianCheck:
    ok: bool
    residual: float

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class PsdCheck:
    ok: bool
    min_eigenvalue: float

    def __bool__(self) -> bool:
        return self.ok


def is_hermitian(t: Tensor3) -> HermitianCheck:
    """Check A == A^H with relative Frobenius tolerance ``1e-10 * (1+|A|)``."""
    if t.m != t.n:
        raise ShapeError(f"hermitian check requires square slices, got {t.m}x{t.n}")
    resid = frobenius_norm(t - conj_transpose(t))
    return HermitianCheck(resid <= HERMITIAN_RTOL * (1.0 + frobenius_norm(t)), resid)


def _require_hermitian(t: Tensor3, op: str) -> None:
    chk = is_hermitian(t)
    if not chk.ok:
        raise PreconditionError(
            f"{op} requires a Hermitian tensor: residual {chk.residual:.3e} exceeds "
            f"{HERMITIAN_RTOL:.0e} * (1 + ||A||_F)"
        )


def _sorted_spectrum(values: np.ndarray, provenance: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # descending real, then descending imag, ties by ascending slice index
    order = np.lexsort((provenance, -values.imag, -values.real))
    return values[order], provenance[order]


def t_eigenvalues(t: Tensor3, method: str = "fourier") -> Spectrum:
    """All eigenvalues of ``bcirc(A)``, with Fourier-slice provenance.

    ``method="fourier"`` unions the spectra of the p Fourier slices;
    ``method="bcirc"`` decomposes the dense block-circulant matrix instead
    and is the slow cross-check.  For Hermitian input the values are real
    (imaginary parts below 1e-9 are zeroed; larger ones raise).
    """
    if t.m != t.n:
        raise ShapeError(f"eigenvalues require square slices, got {t.m}x{t.n}")
    hermitian = is_hermitian(t).ok

    if method == "fourier":
        slices = to_fourier(t).slices
        if hermitian:
            vals = np.concatenate(
                [np.linalg.eigvalsh(slices[:, :, k]) for k in range(t.p)]
            ).astype(np.complex128)
        else:
            vals = np.concatenate([np.linalg.eigvals(slices[:, :, k]) for k in range(t.p)])
        prov = np.repeat(np.arange(1, t.p + 1), t.n)
    elif method == "bcirc":
        mat = bcirc(t)
        if hermitian:
            vals = np.linalg.eigvalsh(mat).astype(np.complex128)
        else:
            vals = np.linalg.eigvals(mat)
        prov = np.zeros(len(vals), dtype=int)
    else:
        raise ValueError(f"unknown eigenvalue method {method!r}; use 'fourier' or 'bcirc'")

    if hermitian:
        worst = float(np.abs(vals.imag).max()) if len(vals) else 0.0
        if worst > HERMITIAN_IMAG_ATOL:
            raise NumericError(
                f"Hermitian tensor produced imaginary eigenvalue part {worst:.3e}"
            )
        vals = vals.real.astype(np.float64)

    vals, prov = _sorted_spectrum(np.atleast_1d(vals).astype(vals.dtype), prov)
    return Spectrum(vals, prov if method == "fourier" else None)


def _mirror_pairs(p: int):
    """Indices (k, p-k) with k < p-k; Fourier slices of a real tensor are
    conjugate across these pairs."""
    return [(k, p - k) for k in range(1, (p + 1) // 2)]


def hermitian_eig(t: Tensor3) -> EigFactors:
    """Slice-wise unitary eigendecomposition of a Hermitian tensor.

    Eigenvalues are sorted descending within each Fourier slice.  For real
    input the conjugate slice pairs share one decomposition so that the Q
    and L factors come back real.
    """
    _require_hermitian(t, "hermitian_eig")
    n, p = t.n, t.p
    shat = to_fourier(t).slices
    qhat = np.empty((n, n, p), dtype=np.complex128)
    w = np.empty((n, p), dtype=np.float64)

    def decompose(k: int):
        wk, vk = np.linalg.eigh(shat[:, :, k])
        w[:, k] = wk[::-1]
        qhat[:, :, k] = vk[:, ::-1]

    if t.kind == "real":
        decompose(0)
        if p % 2 == 0:
            decompose(p // 2)
        for k, mirror in _mirror_pairs(p):
            decompose(k)
            w[:, mirror] = w[:, k]
            qhat[:, :, mirror] = qhat[:, :, k].conj()
    else:
        for k in range(p):
            decompose(k)

    lhat = np.zeros((n, n, p), dtype=np.complex128)
    lhat[np.arange(n), np.arange(n), :] = w
    kind = "real" if t.kind == "real" else None
    q = from_fourier(SpectralSlices(qhat), kind=kind)
    l = from_fourier(SpectralSlices(lhat), kind=kind)
    return EigFactors(q, l, w)


def t_svd(t: Tensor3) -> TSvdFactors:
    """t-SVD via slice-wise singular value decompositions.

    Works for rectangular tensors; U is m x m x p, S is m x n x p with
    descending non-negative diagonal tubes in the Fourier domain, V is
    n x n x p.
    """
    m, n, p = t.shape
    shat = to_fourier(t).slices
    uhat = np.empty((m, m, p), dtype=np.complex128)
    vhat = np.empty((n, n, p), dtype=np.complex128)
    sv = np.zeros((min(m, n), p), dtype=np.float64)

    def decompose(k: int):
        uk, sk, vhk = np.linalg.svd(shat[:, :, k])
        uhat[:, :, k] = uk
        vhat[:, :, k] = vhk.conj().T
        sv[:, k] = sk

    if t.kind == "real":
        decompose(0)
        if p % 2 == 0:
            decompose(p // 2)
        for k, mirror in _mirror_pairs(p):
            decompose(k)
            uhat[:, :, mirror] = uhat[:, :, k].conj()
            vhat[:, :, mirror] = vhat[:, :, k].conj()
            sv[:, mirror] = sv[:, k]
    else:
        for k in range(p):
            decompose(k)

    smat = np.zeros((m, n, p), dtype=np.complex128)
    smat[np.arange(min(m, n)), np.arange(min(m, n)), :] = sv
    kind = "real" if t.kind == "real" else None
    return TSvdFactors(
        from_fourier(SpectralSlices(uhat), kind=kind),
        from_fourier(SpectralSlices(smat), kind=kind),
        from_fourier(SpectralSlices(vhat), kind=kind),
        sv,
    )


_FUNCTION_TAGS = ("sqrt", "log", "inv_sqrt", "pow")


def t_function(t: Tensor3, fn: str, exponent: float | None = None) -> Tensor3:
    """Apply a scalar function to a Hermitian tensor through its eigenvalues.

    Supported tags: ``sqrt`` (PSD input; roundoff-negative eigenvalues in
    [-tol, 0] are clamped to zero), ``log`` and ``inv_sqrt`` (positive
    definite input), ``pow`` with a float ``exponent`` (PSD input, positive
    definite when ``exponent < 0``).  The result is Hermitian by
    construction and real-kind whenever the input is real.
    """
    if fn not in _FUNCTION_TAGS:
        raise ValueError(f"unknown function tag {fn!r}; expected one of {_FUNCTION_TAGS}")
    if fn == "pow":
        if exponent is None:
            raise ValueError("t_function(..., 'pow') requires an exponent")
    elif exponent is not None:
        raise ValueError(f"exponent is only meaningful for 'pow', not {fn!r}")

    factors = hermitian_eig(t)
    w = factors.fourier_eigenvalues.copy()
    lam_max = float(w.max()) if w.size else 0.0
    psd_tol = psd_tolerance(lam_max)
    pd_tol = pd_tolerance(lam_max)

    needs_pd = fn in ("log", "inv_sqrt") or (fn == "pow" and exponent < 0)
    if needs_pd:
        if w.min() <= pd_tol:
            raise SingularityError(
                f"{fn} requires positive definite input; min eigenvalue {w.min():.3e} "
                f"<= tolerance {pd_tol:.3e}"
            )
    else:
        if w.min() < -psd_tol:
            raise DomainError(
                f"{fn} requires positive semidefinite input; min eigenvalue "
                f"{w.min():.3e} < -{psd_tol:.3e}"
            )
        np.clip(w, 0.0, None, out=w)

    if fn == "sqrt":
        fw = np.sqrt(w)
    elif fn == "log":
        fw = np.log(w)
    elif fn == "inv_sqrt":
        fw = 1.0 / np.sqrt(w)
    else:
        if exponent == 0:
            return identity(t.n, t.p)
        fw = np.power(w, float(exponent))

    qhat = to_fourier(factors.q).slices
    fhat = np.einsum("ijk,jk,ljk->ilk", qhat, fw, qhat.conj())
    kind = "real" if t.kind == "real" else None
    return from_fourier(SpectralSlices(fhat), kind=kind)


def is_psd(t: Tensor3) -> PsdCheck:
    """Positive semidefiniteness of a Hermitian tensor.

    True when the smallest block-circulant eigenvalue is at least
    ``-1e-9 * max(1, lambda_max)``.  Non-Hermitian input raises.
    """
    _require_hermitian(t, "is_psd")
    spec = t_eigenvalues(t)
    lam_min = float(spec.values.min())
    lam_max = float(spec.values.max())
    return PsdCheck(lam_min >= -psd_tolerance(lam_max), lam_min)


def psd_factor(t: Tensor3) -> Tensor3:
    """Factor a PSD tensor as A = M * M^H with M = Q * L^(1/2).

    The eigendecomposition doubles as the t-SVD here (U = V = Q, S = L), so
    the factor reproduces A exactly rather than only up to a unitary.
    """
    chk = is_psd(t)
    if not chk.ok:
        raise DomainError(
            f"psd_factor requires a PSD tensor; min eigenvalue {chk.min_eigenvalue:.3e}"
        )
    factors = hermitian_eig(t)
    w = np.clip(factors.fourier_eigenvalues, 0.0, None)
    qhat = to_fourier(factors.q).slices
    mhat = qhat * np.sqrt(w)[None, :, :]
    kind = "real" if t.kind == "real" else None
    return from_fourier(SpectralSlices(mhat), kind=kind)


def random_psd(n: int, p: int, seed: int) -> Tensor3:
    """Deterministic random PSD tensor M * M^T with M standard Gaussian."""
    if n < 1 or p < 1:
        raise ShapeError(f"random_psd requires n, p >= 1, got n={n}, p={p}")
    rng = np.random.default_rng(seed)
    m = Tensor3(rng.standard_normal((n, n, p)))
    return tprod_fft(m, conj_transpose(m))
