import math
from unittest import mock

import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from numpy.linalg import LinAlgError

from datasets.services.pipeline_services import prepare_dataset
from datasets.services.synthetic_services import make_synthetic
from experiments.services.seed_services import trial_seed
from experiments.services.sweep_services import sweep
from experiments.services.trial_services import run_trial
from experiments.types import TrialFailure, method_from_label
from network.types import ActivationKind, InitRegime


def _wide(seed=0):
    return prepare_dataset(make_synthetic("wide", n=120, p=8, seed=seed), seed=seed)


class RunTrialTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.d, cls.split = _wide()

    def test_lambda_zero_matches_pseudoinverse(self):
        plain = method_from_label("HypT-unreg")
        zero = method_from_label("HypT-reg").with_lambda(0.0)
        for trial in range(50):
            seed = trial_seed(0, 6, trial)
            a = run_trial(self.d, self.split, plain, 6, seed)
            b = run_trial(self.d, self.split, zero, 6, seed)
            self.assertLessEqual(abs(a.test_err - b.test_err), 1e-8 * max(1.0, a.test_err))
            self.assertLessEqual(abs(a.validation_err - b.validation_err), 1e-8 * max(1.0, a.validation_err))
            self.assertEqual(a.min_ratio, b.min_ratio)

    def test_single_hidden_unit(self):
        result = run_trial(self.d, self.split, method_from_label("ELM"), 1, seed=3)
        self.assertTrue(math.isfinite(result.test_err) and math.isfinite(result.validation_err))
        self.assertGreater(result.min_ratio, 1e6)
        self.assertGreaterEqual(result.wall_time, 0.0)

    def test_rejects_zero_hidden_units(self):
        with self.assertRaises(ValidationError):
            run_trial(self.d, self.split, method_from_label("ELM"), 0, seed=3)

    def test_exact_recovery_on_consistent_task(self):
        generator = {"n": 200, "p": 6, "m": 10, "seed": 21, "activation": ActivationKind.TANH, "init": InitRegime.scaled()}
        d, split = prepare_dataset(make_synthetic("consistent", **generator), seed=0)
        for cfg in (method_from_label("HypT-unreg"), method_from_label("HypT-reg").with_lambda(1e-12)):
            result = run_trial(d, split, cfg, generator["m"], generator["seed"])
            self.assertLessEqual(result.test_err, 1e-6, cfg.label)

    def test_classification_error_is_a_fraction(self):
        from datasets.tests.helpers import labelled_dataset

        labels = np.repeat([0, 1, 2], 30)
        d, split = prepare_dataset(labelled_dataset(labels, p=4), seed=1)
        result = run_trial(d, split, method_from_label("Sigm-reg").with_lambda(1e-6), 15, seed=5)
        self.assertTrue(0.0 <= result.test_err <= 1.0)
        self.assertAlmostEqual(result.test_err * len(split.test), round(result.test_err * len(split.test)))


class SweepTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.d, cls.split = _wide(1)
        cls.cfg = method_from_label("HypT-reg").with_lambda(1e-8)

    def test_one_record_per_size(self):
        records = sweep(self.d, self.split, self.cfg, [1, 3, 5, 8], 4)
        self.assertEqual([r.m for r in records], [1, 3, 5, 8])
        for r in records:
            self.assertEqual((r.n_trials, r.n_failed), (4, 0))
            self.assertTrue(r.valid)
            self.assertGreaterEqual(r.std_err, 0.0)
            self.assertEqual(r.dataset, "wide")

    def test_identical_seeds_give_zero_std(self):
        def same_seed(base_seed, m_values, trials):
            return [(m, trial, 7) for m in m_values for trial in range(trials)]

        with mock.patch("experiments.services.sweep_services.trial_seeds", side_effect=same_seed):
            records = sweep(self.d, self.split, self.cfg, [4], 2)
        self.assertEqual(records[0].std_err, 0.0)
        self.assertEqual(records[0].val_std_err, 0.0)

    def test_same_base_seed_same_records(self):
        a = sweep(self.d, self.split, self.cfg, range(1, 7), 3, base_seed=5, timing=False)
        b = sweep(self.d, self.split, self.cfg, range(1, 7), 3, base_seed=5, timing=False)
        self.assertEqual(a, b)
        self.assertTrue(all(r.wall_time_s == 0.0 for r in a))

    def test_worker_count_does_not_change_records(self):
        serial = sweep(self.d, self.split, self.cfg, range(1, 9), 3, base_seed=2, timing=False)
        parallel = sweep(self.d, self.split, self.cfg, range(1, 9), 3, base_seed=2, timing=False, workers=2)
        self.assertEqual(serial, parallel)

    def test_failed_trials_are_excluded(self):
        real = run_trial

        def flaky(d, split, cfg, m, seed, *, trial=0):
            if trial == 0:
                raise TrialFailure(method=cfg.label, m=m, trial=trial, seed=seed, reason="forced")
            return real(d, split, cfg, m, seed, trial=trial)

        with mock.patch("experiments.services.sweep_services.run_trial", side_effect=flaky):
            with self.assertLogs("experiments.services.sweep_services", level="WARNING"):
                over_budget = sweep(self.d, self.split, self.cfg, [3], 5)[0]
                within_budget = sweep(self.d, self.split, self.cfg, [3], 10)[0]
        self.assertEqual((over_budget.n_trials, over_budget.n_failed), (4, 1))
        self.assertFalse(over_budget.valid)
        self.assertEqual((within_budget.n_trials, within_budget.n_failed), (9, 1))
        self.assertTrue(within_budget.valid)

    def test_svd_failure_excludes_every_trial(self):
        with mock.patch("scipy.linalg.svd", side_effect=LinAlgError("no convergence")):
            with self.assertLogs("experiments.services.sweep_services", level="WARNING"):
                records = sweep(self.d, self.split, self.cfg, [2, 4, 6], 3)
        self.assertEqual([r.m for r in records], [2, 4, 6])
        for r in records:
            self.assertEqual((r.n_trials, r.n_failed), (0, 3))
            self.assertFalse(r.valid)
            self.assertTrue(math.isnan(r.mean_err))

    def test_preconditions(self):
        with self.assertRaises(ValidationError):
            sweep(self.d, self.split, self.cfg, [1, 2], 1)
        with self.assertRaises(ValidationError):
            sweep(self.d, self.split, self.cfg, [], 3)
        with self.assertRaises(ValidationError):
            sweep(self.d, self.split, self.cfg, [3, 2], 3)
        with self.assertRaises(ValidationError):
            sweep(self.d, self.split, method_from_label("HypT-reg"), [3], 3)
