import dataclasses
import math

import numpy as np
import pytest
from scipy import stats

from klconc.bounds import poisson_tail_radius
from klconc.distributions import add_t_estimate, uniform_pmf
from klconc.harness import (
    DistSpec,
    ExperimentConfig,
    RunningMoments,
    chi_square_gof,
    coupling_diagnostic,
    coupling_marginal_gof,
    expected_kl_check,
    poisson_tail_check,
    resolve_threads,
    run_kl_trials,
    sweep_std_vs_heuristic,
    verify_kl_tail_bound,
    verify_variance_lb,
    _kl_loss_samples,
)
from klconc.losses import kl_divergence
from klconc.sampling import derive_trial_rng, multinomial_counts


class TestDistSpec:
    def test_make_and_label(self):
        assert DistSpec.uniform(4).make().probs.tolist() == [0.25] * 4
        assert DistSpec.uniform(4).label() == "uniform(4)"
        assert DistSpec.zipf(3, 1.0).label() == "zipf(3,1)"
        assert DistSpec.twopoint(10, 0.99).label() == "twopoint(10,0.99)"

    def test_file_roundtrip(self, tmp_path):
        path = tmp_path / "w.txt"
        path.write_text("0.25\n0.75\n")
        spec = DistSpec.from_file(str(path))
        np.testing.assert_allclose(spec.make().probs, [0.25, 0.75])

    def test_validation(self):
        with pytest.raises(ValueError):
            DistSpec("gaussian", k=3)
        with pytest.raises(ValueError):
            DistSpec.uniform(0)
        with pytest.raises(ValueError):
            DistSpec("file")


class TestExperimentConfig:
    def test_validation(self):
        good = dict(dist=DistSpec.uniform(2), n=10, reps=5, master_seed=0)
        ExperimentConfig(**good)
        with pytest.raises(ValueError):
            ExperimentConfig(**{**good, "n": 0})
        with pytest.raises(ValueError):
            ExperimentConfig(**{**good, "reps": 0})
        with pytest.raises(ValueError):
            ExperimentConfig(**{**good, "t": -1.0})
        with pytest.raises(ValueError):
            ExperimentConfig(**{**good, "delta": 1.0})


class TestRunningMoments:
    def test_matches_numpy(self):
        rng = np.random.default_rng(1)
        x = rng.normal(size=10_001)
        mom = RunningMoments.from_array(x)
        assert mom.mean == pytest.approx(float(np.mean(x)), rel=1e-13)
        assert mom.variance == pytest.approx(float(np.var(x, ddof=1)), rel=1e-13)

    def test_merge_equals_whole(self):
        rng = np.random.default_rng(2)
        x = rng.exponential(size=7777)
        whole = RunningMoments.from_array(x)
        merged = RunningMoments()
        for lo in range(0, x.size, 500):
            merged.merge(RunningMoments.from_array(x[lo : lo + 500]))
        assert merged.count == whole.count
        assert merged.mean == pytest.approx(whole.mean, rel=1e-12)
        assert merged.variance == pytest.approx(whole.variance, rel=1e-12)

    def test_push_path(self):
        mom = RunningMoments()
        for v in (1.0, 2.0, 4.0):
            mom.push(v)
        assert mom.mean == pytest.approx(7 / 3)
        assert mom.variance == pytest.approx(np.var([1.0, 2.0, 4.0], ddof=1))


class TestResolveThreads:
    def test_explicit_wins(self, monkeypatch):
        monkeypatch.setenv("KLCONC_THREADS", "3")
        assert resolve_threads(2) == 2

    def test_env_fallback(self, monkeypatch):
        monkeypatch.setenv("KLCONC_THREADS", "3")
        assert resolve_threads(None) == 3

    def test_default_all_cores(self, monkeypatch):
        monkeypatch.delenv("KLCONC_THREADS", raising=False)
        assert resolve_threads(None) >= 1

    def test_invalid(self):
        with pytest.raises(ValueError):
            resolve_threads(0)


class TestRunKlTrials:
    def test_degenerate_alphabet(self):
        cfg = ExperimentConfig(dist=DistSpec.uniform(1), n=10, reps=10, master_seed=1)
        s = run_kl_trials(cfg)
        assert s.mean_kl == 0.0
        assert s.var_kl == 0.0
        assert s.quantiles == {0.5: 0.0, 0.9: 0.0, 0.99: 0.0}

    def test_thread_count_does_not_change_results(self):
        cfg = ExperimentConfig(dist=DistSpec.uniform(8), n=300, reps=5000, master_seed=99)
        runs = [run_kl_trials(cfg, threads=t) for t in (1, 2, 4)]
        ref = dataclasses.asdict(runs[0])
        for other in runs[1:]:
            got = dataclasses.asdict(other)
            for key in ref:
                if key == "wall_seconds":
                    continue
                assert got[key] == ref[key], key

    def test_variance_recompute_from_losses(self):
        cfg = ExperimentConfig(dist=DistSpec.uniform(6), n=200, reps=20_000, master_seed=5)
        s = run_kl_trials(cfg)
        losses = _kl_loss_samples(uniform_pmf(6), 200, 1.0, 5, 20_000, None)
        assert s.var_kl == pytest.approx(float(np.var(losses, ddof=1)), rel=1e-10)
        assert s.mean_kl == pytest.approx(float(np.mean(losses)), rel=1e-12)
        assert s.std_kl == pytest.approx(math.sqrt(s.var_kl))

    def test_quantiles_are_order_statistics(self):
        cfg = ExperimentConfig(dist=DistSpec.uniform(4), n=100, reps=1000, master_seed=8)
        s = run_kl_trials(cfg)
        losses = np.sort(_kl_loss_samples(uniform_pmf(4), 100, 1.0, 8, 1000, None))
        assert s.quantiles[0.5] == losses[499]
        assert s.quantiles[0.9] == losses[899]
        assert s.quantiles[0.99] == losses[989]
        assert s.quantiles[0.5] <= s.quantiles[0.9] <= s.quantiles[0.99]

    def test_exceedance_fields(self):
        cfg = ExperimentConfig(dist=DistSpec.uniform(4), n=100, reps=500, master_seed=3, delta=0.1)
        s = run_kl_trials(cfg)
        assert s.t_delta is not None and s.t_delta > 0
        assert 0 <= s.exceed_count <= s.reps
        none_cfg = dataclasses.replace(cfg, delta=None)
        s2 = run_kl_trials(none_cfg)
        assert s2.exceed_count is None and s2.t_delta is None

    def test_unsmoothed_losses_can_be_infinite(self):
        # t=0 with n < k guarantees empty symbols, hence infinite divergence
        cfg = ExperimentConfig(dist=DistSpec.uniform(4), n=1, reps=20, master_seed=2, t=0.0)
        s = run_kl_trials(cfg)
        assert s.mean_kl == math.inf

    def test_uniform_log_decomposition_per_trial(self):
        # KL(uniform || add-one) == -(1/k) sum log(N_i + 1) + log(1 + n/k)
        k, n = 16, 1000
        p = uniform_pmf(k)
        for i in range(300):
            counts = multinomial_counts(derive_trial_rng(44, i), p, n)
            direct = kl_divergence(p, add_t_estimate(counts, 1.0))
            decomposed = -math.fsum(np.log(counts.counts + 1.0)) / k + math.log(1 + n / k)
            assert direct == pytest.approx(decomposed, rel=1e-12)


class TestChiSquareGof:
    def test_merges_sparse_tails(self):
        draws = derive_trial_rng(52, 0).poisson(4.0, size=10**5)
        hi = int(draws.max())
        probs = stats.poisson.pmf(np.arange(hi + 1), 4.0)
        gof = chi_square_gof(draws, probs, tail_prob=float(stats.poisson.sf(hi, 4.0)))
        assert gof.bins < hi + 2
        assert gof.dof == gof.bins - 1
        assert gof.p_value >= 1e-3

    def test_detects_wrong_distribution(self):
        draws = derive_trial_rng(51, 0).poisson(4.0, size=10**5)
        hi = int(draws.max())
        probs = stats.poisson.pmf(np.arange(hi + 1), 5.0)
        gof = chi_square_gof(draws, probs, tail_prob=float(stats.poisson.sf(hi, 5.0)))
        assert gof.p_value < 1e-6

    def test_degenerate_single_bin(self):
        draws = np.full(1000, 7)
        probs = np.zeros(8)
        probs[7] = 1.0
        gof = chi_square_gof(draws, probs)
        assert gof.p_value == 1.0


class TestVarianceLb:
    def test_hypothesis_violation(self):
        with pytest.raises(ValueError):
            verify_variance_lb(10, 50, 100, seed=1)

    def test_two_symbols_large_n(self):
        r = verify_variance_lb(2, 10240, 10_000, seed=7)
        assert r.passed
        assert r.ratio > 5
        assert r.ci_low <= r.empirical_var <= r.ci_high

    def test_bootstrap_deterministic(self):
        a = verify_variance_lb(2, 64, 2000, seed=7)
        b = verify_variance_lb(2, 64, 2000, seed=7)
        assert (a.ci_low, a.ci_high) == (b.ci_low, b.ci_high)


class TestTailBound:
    def test_small_run_passes(self):
        r = verify_kl_tail_bound(10, 1000, 2000, 0.1, seed=7)
        assert r.passed
        assert r.exceed_frac == 0.0

    def test_median_center_also_passes(self):
        # strictly weaker exceedance check than the mean-centered one
        losses = _kl_loss_samples(uniform_pmf(10), 1000, 1.0, 7, 2000, None)
        r = verify_kl_tail_bound(10, 1000, 2000, 0.1, seed=7)
        median = float(np.median(losses))
        frac = float(np.mean(losses > median + r.t_delta))
        assert frac <= r.allowed

    def test_half_delta_is_looser(self):
        r = verify_kl_tail_bound(4, 100, 500, 0.5, seed=7)
        assert r.passed


class TestPoissonTailCheck:
    def test_radius_matches_scalar_op(self):
        draws = derive_trial_rng(60, 0).poisson(9.0, size=50)
        vector = 6.0 * np.sqrt(draws + 1.0) * math.log(2.0 / 0.2)
        for d, v in zip(draws, vector):
            assert poisson_tail_radius(int(d), 0.2) == pytest.approx(v, rel=1e-15)

    def test_generous_radius_rarely_fails(self):
        r = poisson_tail_check(100.0, 0.1, 10**5, seed=3)
        assert r.passed
        assert r.fail_frac <= 1e-4

    def test_tiny_rate(self):
        r = poisson_tail_check(1.0, 0.5, 10**5, seed=3)
        assert r.passed


class TestCouplingDiagnostics:
    def test_certain_success_gap(self):
        # prob=1 collapses the gap to (n - N)/(N + 1)
        r = coupling_diagnostic(100, 1.0, 10**5, seed=9)
        assert r.passed
        assert 0 < r.est_gap < 0.1

    def test_moderate_configuration(self):
        r = coupling_diagnostic(100, 0.5, 10**5, seed=9)
        assert r.passed
        assert r.ci_low <= r.est_gap <= r.ci_high

    def test_marginal_gof_requires_bulk(self):
        with pytest.raises(ValueError):
            coupling_marginal_gof(20, 0.4, 10**4, seed=1)

    def test_marginal_gof_passes(self):
        r = coupling_marginal_gof(20, 0.4, 10**5, seed=9)
        assert r.passed

    def test_marginal_gof_certain_success(self):
        # M is constant n; M' reduces to the latent Poisson itself
        r = coupling_marginal_gof(5, 1.0, 10**5, seed=9)
        assert r.passed
        assert r.chi2_m == 0.0

    def test_marginal_gof_small_n_high_prob(self):
        r = coupling_marginal_gof(5, 0.9, 10**5, seed=9)
        assert r.passed


class TestExpectedKl:
    def test_degenerate_alphabet(self):
        r = expected_kl_check(DistSpec.uniform(1), 50, 200, seed=1)
        assert r.passed
        assert r.mean_kl == 0.0 and r.ceiling == 0.0

    def test_uniform_comfortably_below_ceiling(self):
        r = expected_kl_check(DistSpec.uniform(10), 1000, 5000, seed=1)
        assert r.passed
        assert r.mean_kl < r.ceiling


class TestStdSweep:
    def test_degenerate_row(self):
        rows = sweep_std_vs_heuristic([1], n=100, reps=200, master_seed=1)
        assert rows[0].sample_std == 0.0
        assert rows[0].ratio is None

    def test_heuristic_column_monotone(self):
        rows = sweep_std_vs_heuristic([2, 4, 8], n=512, reps=50, master_seed=1)
        heur = [r.heuristic_std for r in rows]
        assert heur == sorted(heur)
        assert all(h > 0 for h in heur)

    def test_rerun_identical(self):
        a = sweep_std_vs_heuristic([2, 4], n=256, reps=100, master_seed=5)
        b = sweep_std_vs_heuristic([2, 4], n=256, reps=100, master_seed=5)
        assert a == b
