import math

import numpy as np
import pytest

from tspectral import (
    DomainError,
    PreconditionError,
    SingularityError,
    Tensor3,
    dist_bures_wasserstein,
    dist_frobenius,
    dist_log_euclidean,
    frobenius_norm,
    geodesic,
    geodesic_trace_profile,
    identity,
    is_hermitian,
    is_psd,
    trace,
)
from conftest import random_pd_tensor, random_psd_tensor
from helpers_oracles import matrix_bures_wasserstein, random_spd_matrix


class TestFrobeniusDistance:
    def test_self_distance_zero(self, a2):
        assert dist_frobenius(a2, a2) == 0.0

    def test_identity_to_zero(self):
        assert dist_frobenius(identity(2, 2), Tensor3.zeros(2, 2, 2)) == pytest.approx(2.0)

    def test_matches_elementwise_oracle(self, a3, b3):
        diff = a3.data - b3.data
        expected = math.sqrt(2) * np.linalg.norm(diff.ravel())
        assert dist_frobenius(a3, b3) == pytest.approx(expected, rel=1e-12)

    def test_slice1_convention_rescales(self, a3, b3):
        full = dist_frobenius(a3, b3)
        assert dist_frobenius(a3, b3, convention="slice1") == pytest.approx(
            full / math.sqrt(2), rel=1e-12
        )

    def test_metric_axioms_sampled(self):
        rng = np.random.default_rng(269)
        for _ in range(10):
            a = random_psd_tensor(rng, 2, 3)
            b = random_psd_tensor(rng, 2, 3)
            c = random_psd_tensor(rng, 2, 3)
            assert dist_frobenius(a, b) == pytest.approx(dist_frobenius(b, a), rel=1e-12)
            assert dist_frobenius(a, c) <= dist_frobenius(a, b) + dist_frobenius(b, c) + 1e-12


class TestBuresWasserstein:
    def test_self_distance(self):
        rng = np.random.default_rng(271)
        a = random_psd_tensor(rng, 3, 2)
        assert dist_bures_wasserstein(a, a) <= 1e-6

    def test_scalar_closed_form(self):
        for c, d in ((2.0, 3.0), (0.25, 4.0), (1.0, 1.0), (0.0, 2.0)):
            n, p = 3, 4
            got = dist_bures_wasserstein(c * identity(n, p), d * identity(n, p))
            expected = abs(math.sqrt(c) - math.sqrt(d)) * math.sqrt(n * p)
            assert got == pytest.approx(expected, abs=1e-9)

    def test_p1_matches_matrix_oracle(self):
        rng = np.random.default_rng(277)
        for _ in range(10):
            x = random_spd_matrix(rng, 4)
            y = random_spd_matrix(rng, 4)
            got = dist_bures_wasserstein(Tensor3(x[:, :, None]), Tensor3(y[:, :, None]))
            assert got == pytest.approx(matrix_bures_wasserstein(x, y), abs=1e-9)

    def test_metric_axioms_sampled(self):
        rng = np.random.default_rng(281)
        for _ in range(20):
            n = int(rng.integers(1, 4))
            p = int(rng.integers(1, 4))
            a = random_psd_tensor(rng, n, p)
            b = random_psd_tensor(rng, n, p)
            c = random_psd_tensor(rng, n, p)
            dab = dist_bures_wasserstein(a, b)
            assert dab >= 0.0
            assert abs(dab - dist_bures_wasserstein(b, a)) <= 1e-8
            assert dist_bures_wasserstein(a, c) <= dab + dist_bures_wasserstein(b, c) + 1e-8

    def test_distinguishes_distinct(self):
        rng = np.random.default_rng(283)
        a = random_psd_tensor(rng, 3, 2)
        b = random_psd_tensor(rng, 3, 2)
        assert frobenius_norm(a - b) > 1e-3
        assert dist_bures_wasserstein(a, b) > 1e-6

    def test_slice1_convention(self):
        rng = np.random.default_rng(293)
        a = random_psd_tensor(rng, 2, 3)
        b = random_psd_tensor(rng, 2, 3)
        full = dist_bures_wasserstein(a, b)
        scaled = dist_bures_wasserstein(a, b, convention="slice1")
        assert scaled == pytest.approx(full / math.sqrt(3), rel=1e-10)

    def test_rejects_indefinite(self, a2):
        with pytest.raises(DomainError):
            dist_bures_wasserstein(a2, -1.0 * identity(2, 2))

    def test_rejects_non_hermitian(self, a3, b3):
        with pytest.raises(PreconditionError):
            dist_bures_wasserstein(a3, b3)

    def test_unknown_convention(self, a2, b2):
        with pytest.raises(ValueError):
            dist_bures_wasserstein(a2, b2, convention="other")


class TestLogEuclidean:
    def test_self_distance(self):
        rng = np.random.default_rng(307)
        a = random_pd_tensor(rng, 3, 2)
        assert dist_log_euclidean(a, a) == 0.0

    def test_scalar_closed_form(self):
        for c, d in ((2.0, 3.0), (0.5, 8.0)):
            n, p = 2, 3
            got = dist_log_euclidean(c * identity(n, p), d * identity(n, p))
            expected = abs(math.log(c) - math.log(d)) * math.sqrt(n * p)
            assert got == pytest.approx(expected, abs=1e-9)

    def test_symmetry(self):
        rng = np.random.default_rng(311)
        a = random_pd_tensor(rng, 3, 3)
        b = random_pd_tensor(rng, 3, 3)
        assert dist_log_euclidean(a, b) == pytest.approx(dist_log_euclidean(b, a), rel=1e-12)

    def test_triangle_inequality_sampled(self):
        rng = np.random.default_rng(313)
        for _ in range(10):
            a = random_pd_tensor(rng, 2, 2)
            b = random_pd_tensor(rng, 2, 2)
            c = random_pd_tensor(rng, 2, 2)
            assert dist_log_euclidean(a, c) <= (
                dist_log_euclidean(a, b) + dist_log_euclidean(b, c) + 1e-8
            )

    def test_rejects_singular(self, a2):
        # a2 has a zero eigenvalue
        with pytest.raises(SingularityError):
            dist_log_euclidean(a2, identity(2, 2))


class TestGeodesic:
    def test_endpoints(self):
        rng = np.random.default_rng(317)
        a = random_pd_tensor(rng, 3, 2)
        b = random_psd_tensor(rng, 3, 2)
        g0 = geodesic(a, b, 0.0)
        g1 = geodesic(a, b, 1.0)
        assert frobenius_norm(g0 - a) / frobenius_norm(a) <= 1e-8
        assert frobenius_norm(g1 - b) / frobenius_norm(b) <= 1e-8

    def test_constant_when_equal(self):
        rng = np.random.default_rng(331)
        a = random_pd_tensor(rng, 2, 3)
        for t in (0.25, 0.5, 0.75):
            g = geodesic(a, a, t)
            assert frobenius_norm(g - a) / frobenius_norm(a) <= 1e-9

    def test_scalar_closed_form(self):
        c, d = 2.0, 5.0
        for t in (0.0, 0.3, 0.5, 1.0):
            g = geodesic(c * identity(2, 2), d * identity(2, 2), t)
            expected = c ** (1 - t) * d**t * identity(2, 2)
            assert g.allclose(expected, rtol=1e-9, atol=1e-9)

    def test_result_is_psd_hermitian(self):
        rng = np.random.default_rng(337)
        a = random_pd_tensor(rng, 3, 2)
        b = random_psd_tensor(rng, 3, 2)
        g = geodesic(a, b, 0.6)
        assert is_hermitian(g).ok
        assert is_psd(g).ok

    def test_parameter_domain(self):
        rng = np.random.default_rng(347)
        a = random_pd_tensor(rng, 2, 2)
        with pytest.raises(DomainError):
            geodesic(a, a, -0.1)
        with pytest.raises(DomainError):
            geodesic(a, a, 1.1)

    def test_singular_start_rejected_then_regularized(self, a2):
        b = identity(2, 2)
        with pytest.raises(SingularityError):
            geodesic(a2, b, 0.5)  # a2 has a zero eigenvalue
        g = geodesic(a2, b, 0.5, regularize=1e-6)
        assert is_psd(g).ok

    def test_midpoint_consistency_reported(self):
        # additivity along the path is recorded, not hard-asserted
        rng = np.random.default_rng(349)
        worst = 0.0
        for _ in range(5):
            a = random_pd_tensor(rng, 2, 2)
            b = random_pd_tensor(rng, 2, 2)
            mid = geodesic(a, b, 0.5)
            gap = abs(
                dist_bures_wasserstein(a, mid)
                + dist_bures_wasserstein(mid, b)
                - dist_bures_wasserstein(a, b)
            )
            worst = max(worst, gap)
        print(f"geodesic midpoint additivity gap (max over 5 pairs): {worst:.3e}")


class TestGeodesicProfile:
    def test_constant_profile(self):
        rng = np.random.default_rng(353)
        a = random_pd_tensor(rng, 2, 2)
        prof = geodesic_trace_profile(a, a, 7)
        np.testing.assert_allclose(prof.traces, prof.traces[0] * np.ones(7), rtol=1e-9)

    def test_endpoints_match_traces(self):
        rng = np.random.default_rng(359)
        a = random_pd_tensor(rng, 3, 2)
        b = random_pd_tensor(rng, 3, 2)
        prof = geodesic_trace_profile(a, b, 5)
        assert prof.ts[0] == 0.0 and prof.ts[-1] == 1.0
        assert prof.traces[0] == pytest.approx(trace(a), rel=1e-6)
        assert prof.traces[-1] == pytest.approx(trace(b), rel=1e-6)

    def test_scalar_log_linear(self):
        c, d = 2.0, 8.0
        n, p = 2, 2
        prof = geodesic_trace_profile(c * identity(n, p), d * identity(n, p), 9)
        expected = n * p * c ** (1 - prof.ts) * d**prof.ts
        np.testing.assert_allclose(prof.traces, expected, rtol=1e-9)
        # log of the trace is linear in t for commuting scalar tensors
        logs = np.log(prof.traces)
        np.testing.assert_allclose(np.diff(logs), np.diff(logs)[0], rtol=1e-9)

    def test_keep_tensors(self):
        rng = np.random.default_rng(367)
        a = random_pd_tensor(rng, 2, 2)
        prof = geodesic_trace_profile(a, a, 3, keep_tensors=True)
        assert prof.tensors is not None and len(prof.tensors) == 3
        assert geodesic_trace_profile(a, a, 3).tensors is None

    def test_sample_count_validated(self):
        rng = np.random.default_rng(373)
        a = random_pd_tensor(rng, 2, 2)
        with pytest.raises(DomainError):
            geodesic_trace_profile(a, a, 1)
