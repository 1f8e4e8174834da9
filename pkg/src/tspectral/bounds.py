"""Executable trace/eigenvalue bounds and extremal trace sums.

Each bound is returned as a :class:`BoundReport` carrying the lower bound,
the witnessed quantity, the upper bound, both slacks and a ``satisfied``
flag.  Sums over eigenvalues always run over the full block-circulant
spectrum of length ``N = n * p``: with the block-circulant trace convention
that is exactly the regime in which the slice-wise majorization argument
aggregates, and it is what makes the identities below close numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Tensor3, bcirc, conj_transpose, frobenius_norm, identity, trace, unfold
from .errors import DomainError, NumericError, PreconditionError, ShapeError
from .spectral import (
    HERMITIAN_IMAG_ATOL,
    hermitian_eig,
    is_hermitian,
    is_psd,
    t_eigenvalues,
)
from .transform import SpectralSlices, from_fourier, to_fourier, tprod_fft

__all__ = [
    "BoundReport",
    "SymmetrizedBounds",
    "KyFanResult",
    "rayleigh_value",
    "symmetrized_bounds",
    "vn_trace_bounds",
    "hermitian_trace_bounds",
    "sandwich_bounds",
    "extremal_ratio_bounds",
    "extremal_ratio_witness",
    "symmetric_relax_bounds",
    "ky_fan_sum",
]

REPORT_RTOL = 1e-8


@dataclass(frozen=True)
class BoundReport:
    """One verified inequality instance: lower <= value <= upper."""

    lower: float
    value: float
    upper: float
    slack_lower: float
    slack_upper: float
    satisfied: bool
    context: str

    @classmethod
    def build(cls, lower: float, value: float, upper: float, context: str) -> "BoundReport":
        tol = REPORT_RTOL * max(1.0, abs(value))
        return cls(
            lower=float(lower),
            value=float(value),
            upper=float(upper),
            slack_lower=float(value - lower),
            slack_upper=float(upper - value),
            satisfied=bool(lower - tol <= value <= upper + tol),
            context=context,
        )


@dataclass(frozen=True)
class SymmetrizedBounds:
    """Eigenvalue enclosure from the symmetrized block-circulant matrix."""

    mu_min: float
    mu_max: float
    rho_symmetrized: float
    rho_tensor: float
    eigen_reports: tuple[BoundReport, ...]
    radius_report: BoundReport

    @property
    def satisfied(self) -> bool:
        return self.radius_report.satisfied and all(r.satisfied for r in self.eigen_reports)


@dataclass(frozen=True)
class KyFanResult:
    value: float
    optimizer: Tensor3


def _real_trace(t: Tensor3) -> float:
    val = trace(t)
    return float(np.real(val))


def _hermitian_spectrum(t: Tensor3) -> np.ndarray:
    """Full real spectrum of a Hermitian tensor, descending, length n*p."""
    return np.asarray(t_eigenvalues(t).values, dtype=np.float64)


def _require_square(t: Tensor3, op: str) -> None:
    if t.m != t.n:
        raise ShapeError(f"{op} requires square slices, got {t.m}x{t.n}")


def _require_same_shape(a: Tensor3, b: Tensor3, op: str) -> None:
    if a.shape != b.shape:
        raise ShapeError(f"{op} requires equal shapes, got {a.shape} vs {b.shape}")


def _require_psd(t: Tensor3, op: str, name: str) -> None:
    chk = is_psd(t)
    if not chk.ok:
        raise PreconditionError(
            f"{op} requires {name} PSD; min eigenvalue {chk.min_eigenvalue:.3e}"
        )


def rayleigh_value(a: Tensor3, x: Tensor3) -> float:
    """Quadratic form of the symmetrized block-circulant matrix.

    ``x`` must be an n x 1 x p tensor whose unfolding is a unit vector; the
    returned value is ``y^H M y`` with ``M = (bcirc(a) + bcirc(a)^H) / 2``.
    For a unit eigentensor this recovers the associated eigenvalue.
    """
    _require_square(a, "rayleigh_value")
    if x.m != a.n or x.n != 1 or x.p != a.p:
        raise ShapeError(
            f"rayleigh_value needs x of shape ({a.n}, 1, {a.p}), got {x.shape}"
        )
    y = unfold(x).ravel()
    norm = float(np.linalg.norm(y))
    if abs(norm - 1.0) > 1e-10:
        raise PreconditionError(f"unfold(x) must be a unit vector; 2-norm is {norm!r}")
    mat = bcirc(a)
    sym = (mat + mat.conj().T) / 2.0
    return float(np.real(np.conj(y) @ sym @ y))


def symmetrized_bounds(a: Tensor3) -> SymmetrizedBounds:
    """Enclose every real tensor eigenvalue between the extreme eigenvalues
    of the symmetrized block-circulant matrix, and bound the spectral radius.

    Only the real block-circulant eigenvalues are tensor eigenvalues in the
    strict eigenpair sense (a real eigenvalue of a real matrix has a real
    eigenvector, which the Rayleigh argument requires), so both the
    per-eigenvalue reports and the tensor spectral radius run over the real
    part of the spectrum.  Complex block-circulant eigenvalues can lie
    outside the enclosure and are deliberately excluded.
    """
    _require_square(a, "symmetrized_bounds")
    mat = bcirc(a)
    sym = (mat + mat.conj().T) / 2.0
    mu = np.linalg.eigvalsh(sym)
    mu_min, mu_max = float(mu[0]), float(mu[-1])
    rho_sym = float(np.abs(mu).max())

    spec = t_eigenvalues(a)
    vals = np.asarray(spec.values, dtype=np.complex128)
    scale = float(np.abs(vals).max()) if len(vals) else 0.0
    real_vals = vals[np.abs(vals.imag) <= HERMITIAN_IMAG_ATOL * max(1.0, scale)].real
    rho_t = float(np.abs(real_vals).max()) if len(real_vals) else 0.0
    eigen_reports = tuple(
        BoundReport.build(mu_min, float(v), mu_max, "symmetrized-enclosure")
        for v in real_vals
    )
    radius_report = BoundReport.build(0.0, rho_t, rho_sym, "spectral-radius")
    return SymmetrizedBounds(mu_min, mu_max, rho_sym, rho_t, eigen_reports, radius_report)


def _vn_sums(lam_a: np.ndarray, lam_b: np.ndarray) -> tuple[float, float]:
    lower = float(np.dot(lam_a, lam_b[::-1]))
    upper = float(np.dot(lam_a, lam_b))
    return lower, upper


def vn_trace_bounds(a: Tensor3, b: Tensor3) -> BoundReport:
    """Trace-of-product bounds for PSD tensors.

    With both spectra sorted descending over all N = n*p values,

        sum_i lam_i(A) lam_{N-i+1}(B)  <=  tr(A*B)  <=  sum_i lam_i(A) lam_i(B).
    """
    _require_same_shape(a, b, "vn_trace_bounds")
    _require_psd(a, "vn_trace_bounds", "first operand")
    _require_psd(b, "vn_trace_bounds", "second operand")
    lam_a = _hermitian_spectrum(a)
    lam_b = _hermitian_spectrum(b)
    value = _real_trace(tprod_fft(a, b))
    lower, upper = _vn_sums(lam_a, lam_b)
    return BoundReport.build(lower, value, upper, "trace-product-psd")


def hermitian_trace_bounds(a: Tensor3, b: Tensor3) -> BoundReport:
    """Trace-of-product bounds for Hermitian tensors (PSD not required).

    Same sums as :func:`vn_trace_bounds`.  The reduction to the PSD case
    shifts both operands by ``alpha * I``; the expansion

        tr((A+aI)*(B+aI)) = tr(A*B) + a (tr A + tr B) + N a^2

    is verified numerically here and raises on disagreement.
    """
    _require_same_shape(a, b, "hermitian_trace_bounds")
    for t, name in ((a, "first operand"), (b, "second operand")):
        chk = is_hermitian(t)
        if not chk.ok:
            raise PreconditionError(
                f"hermitian_trace_bounds requires {name} Hermitian; residual {chk.residual:.3e}"
            )
    lam_a = _hermitian_spectrum(a)
    lam_b = _hermitian_spectrum(b)
    value = _real_trace(tprod_fft(a, b))
    lower, upper = _vn_sums(lam_a, lam_b)

    # shift-identity self-check at alpha = 1 + |most negative eigenvalue|
    big_n = a.n * a.p
    alpha = 1.0 + max(0.0, -float(lam_a[-1]), -float(lam_b[-1]))
    ident = identity(a.n, a.p)
    lhs = _real_trace(tprod_fft(a + alpha * ident, b + alpha * ident))
    rhs = value + alpha * (_real_trace(a) + _real_trace(b)) + big_n * alpha**2
    if abs(lhs - rhs) > 1e-9 * max(1.0, abs(lhs)):
        raise NumericError(
            f"shift identity violated: {lhs!r} vs {rhs!r} at alpha={alpha!r}"
        )
    return BoundReport.build(lower, value, upper, "trace-product-hermitian")


def sandwich_bounds(a: Tensor3, b: Tensor3) -> BoundReport:
    """Bounds on tr(A*B*A) for symmetric PSD tensors:

        lam_min(B) tr(A)^2 / N  <=  tr(A*B*A)  <=  lam_max(B) tr(A)^2.
    """
    _require_same_shape(a, b, "sandwich_bounds")
    _require_psd(a, "sandwich_bounds", "first operand")
    _require_psd(b, "sandwich_bounds", "second operand")
    lam_b = _hermitian_spectrum(b)
    tr_a = _real_trace(a)
    big_n = a.n * a.p
    value = _real_trace(tprod_fft(tprod_fft(a, b), a))
    lower = float(lam_b[-1]) * tr_a**2 / big_n
    upper = float(lam_b[0]) * tr_a**2
    return BoundReport.build(lower, value, upper, "sandwich-psd")


def extremal_ratio_bounds(a: Tensor3, b: Tensor3) -> BoundReport:
    """Tightest constant bounds on tr(A*B) / tr(B) over PSD B.

    For Hermitian A the ratio always lies in [lam_min(A), lam_max(A)], and
    both endpoints are attained (see :func:`extremal_ratio_witness`).
    """
    _require_same_shape(a, b, "extremal_ratio_bounds")
    chk = is_hermitian(a)
    if not chk.ok:
        raise PreconditionError(
            f"extremal_ratio_bounds requires Hermitian A; residual {chk.residual:.3e}"
        )
    _require_psd(b, "extremal_ratio_bounds", "B")
    tr_b = _real_trace(b)
    if tr_b <= 0.0:
        raise DomainError(f"extremal_ratio_bounds requires trace(B) > 0, got {tr_b!r}")
    lam_a = _hermitian_spectrum(a)
    value = _real_trace(tprod_fft(a, b)) / tr_b
    return BoundReport.build(float(lam_a[-1]), value, float(lam_a[0]), "extremal-ratio")


def extremal_ratio_witness(a: Tensor3, which: str = "max") -> Tensor3:
    """Construct a PSD tensor B achieving the extremal trace ratio for A.

    The witness concentrates a rank-one projector on the Fourier slice that
    carries the extreme eigenvalue of A (mirrored onto the conjugate slice
    when A is real, so the witness stays real).  By construction
    ``tr(A*B)/tr(B)`` equals the extreme eigenvalue.
    """
    if which not in ("max", "min"):
        raise ValueError(f"which must be 'max' or 'min', got {which!r}")
    factors = hermitian_eig(a)
    w = factors.fourier_eigenvalues  # (n, p), descending per slice
    if which == "max":
        row, col = np.unravel_index(np.argmax(w), w.shape)
    else:
        row, col = np.unravel_index(np.argmin(w), w.shape)
    qhat = to_fourier(factors.q).slices
    u = qhat[:, row, col]
    bhat = np.zeros((a.n, a.n, a.p), dtype=np.complex128)
    bhat[:, :, col] = np.outer(u, u.conj())
    mirror = (-col) % a.p
    if a.kind == "real" and mirror != col:
        bhat[:, :, mirror] = bhat[:, :, col].conj()
    kind = "real" if a.kind == "real" else None
    return from_fourier(SpectralSlices(bhat), kind=kind)


def symmetric_relax_bounds(a: Tensor3, b: Tensor3) -> BoundReport:
    """Recorded (not asserted) bounds on tr(A*B) for symmetric B and general
    real A, in terms of the symmetrized tensor (A + A^T)/2.

    The containment is empirical: the report's ``satisfied`` flag documents
    the outcome and callers are expected to aggregate rather than assert.
    """
    _require_same_shape(a, b, "symmetric_relax_bounds")
    if a.kind != "real" or b.kind != "real":
        raise PreconditionError("symmetric_relax_bounds is defined for real tensors")
    chk = is_hermitian(b)
    if not chk.ok:
        raise PreconditionError(
            f"symmetric_relax_bounds requires symmetric B; residual {chk.residual:.3e}"
        )
    a_bar = (a + conj_transpose(a)) * 0.5
    lam_bar = _hermitian_spectrum(a_bar)
    lam_b = _hermitian_spectrum(b)
    big_n = a.n * a.p
    tr_a = _real_trace(a)
    tr_b = _real_trace(b)
    lam1, lam_n = float(lam_bar[0]), float(lam_bar[-1])
    lam_n_b = float(lam_b[-1])
    value = _real_trace(tprod_fft(a, b))
    lower = lam_n * tr_b - lam_n_b * (big_n * lam_n - tr_a)
    upper = lam1 * tr_b - lam_n_b * (big_n * lam1 - tr_a)
    return BoundReport.build(lower, value, upper, "relaxed-symmetric")


def ky_fan_sum(h: Tensor3, k: int, which: str = "max") -> KyFanResult:
    """Extremal value of tr(U*H*U^H) over slice-wise partial isometries.

    For Hermitian H the maximum over k x n x p tensors U with U*U^H = I_k
    equals the sum over Fourier slices of each slice's top-k eigenvalues
    (bottom-k for ``which="min"``); for p = 1 this is the classical matrix
    statement.  The achieving U is assembled from the per-slice eigenvectors
    and is verified to be a partial isometry attaining the value.
    """
    if which not in ("max", "min"):
        raise ValueError(f"which must be 'max' or 'min', got {which!r}")
    chk = is_hermitian(h)
    if not chk.ok:
        raise PreconditionError(f"ky_fan_sum requires Hermitian H; residual {chk.residual:.3e}")
    if not 1 <= k <= h.n:
        raise DomainError(f"k must satisfy 1 <= k <= {h.n}, got {k}")

    factors = hermitian_eig(h)
    w = factors.fourier_eigenvalues  # descending per slice
    if which == "max":
        value = float(w[:k, :].sum())
        chosen = slice(0, k)
    else:
        value = float(w[h.n - k :, :].sum())
        chosen = slice(h.n - k, h.n)

    qhat = to_fourier(factors.q).slices
    uhat = np.transpose(qhat[:, chosen, :].conj(), (1, 0, 2))  # (k, n, p)
    kind = "real" if h.kind == "real" else None
    u = from_fourier(SpectralSlices(uhat), kind=kind)

    gram = tprod_fft(u, conj_transpose(u))
    resid = frobenius_norm(gram - identity(k, h.p))
    if resid > 1e-9 * (1.0 + frobenius_norm(gram)):
        raise NumericError(f"constructed optimizer is not a partial isometry: {resid:.3e}")
    achieved = _real_trace(tprod_fft(tprod_fft(u, h), conj_transpose(u)))
    if abs(achieved - value) > 1e-8 * max(1.0, abs(value)):
        raise NumericError(
            f"optimizer achieves {achieved!r} but extremal value is {value!r}"
        )
    return KyFanResult(value, u)
