from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from experiments.services.seed_services import trial_seed, trial_seeds
from experiments.types import PRESETS, MethodConfig, custom_method, method_from_label
from network.types import ActivationKind, InitRegime


class MethodConfigTests(SimpleTestCase):
    def test_presets(self):
        self.assertEqual(set(PRESETS), {"HypT-reg", "Sigm-reg", "HypT-unreg", "Sigm-unreg", "ELM"})
        elm = method_from_label("ELM")
        self.assertEqual(elm.activation, ActivationKind.SIGMOID)
        self.assertEqual(elm.init, InitRegime.fixed(1.0))
        self.assertFalse(elm.regularized)

    def test_elm_label_is_reserved(self):
        with self.assertRaises(ValidationError):
            MethodConfig("ELM", ActivationKind.TANH, InitRegime.fixed(1.0), regularized=False)

    def test_unknown_label(self):
        with self.assertRaises(ValidationError):
            method_from_label("HypT")

    def test_unregularized_counterpart(self):
        self.assertEqual(method_from_label("HypT-reg").unregularized(), method_from_label("HypT-unreg"))
        self.assertEqual(method_from_label("Sigm-reg").with_lambda(1e-9).unregularized(), method_from_label("Sigm-unreg"))

    def test_solve_lambda(self):
        self.assertIsNone(method_from_label("HypT-unreg").solve_lambda)
        self.assertEqual(method_from_label("HypT-reg").with_lambda(0.0).solve_lambda, 0.0)
        with self.assertRaises(ValidationError):
            method_from_label("HypT-reg").solve_lambda

    def test_lambda_rules(self):
        with self.assertRaises(ValidationError):
            method_from_label("ELM").with_lambda(1e-3)
        with self.assertRaises(ValidationError):
            method_from_label("HypT-reg").with_lambda(-1.0)

    def test_custom_method(self):
        cfg = custom_method("wide-tanh", activation="tanh", init="fixed", half_width=2.0, lam=1e-6)
        self.assertEqual(cfg.init, InitRegime.fixed(2.0))
        self.assertEqual(cfg.solve_lambda, 1e-6)


class TrialSeedTests(SimpleTestCase):
    def test_deterministic_and_distinct(self):
        self.assertEqual(trial_seed(0, 5, 3), trial_seed(0, 5, 3))
        seeds = {seed for _, _, seed in trial_seeds(0, range(1, 21), 10)}
        self.assertEqual(len(seeds), 200)

    def test_adding_trials_keeps_earlier_seeds(self):
        few = trial_seeds(7, [3, 4], 2)
        many = trial_seeds(7, [3, 4, 5], 5)
        self.assertEqual([s for m, t, s in many if t < 2 and m < 5], [s for _, _, s in few])

    def test_base_seed_matters(self):
        self.assertNotEqual(trial_seed(0, 1, 0), trial_seed(1, 1, 0))

    def test_seed_is_unsigned_64_bit(self):
        for _, _, seed in trial_seeds(123, range(1, 50), 3):
            self.assertTrue(0 <= seed < 2**64)
