import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from network.selectors.network_selectors import forward, hidden_matrix, pre_activations
from network.services.network_services import build_network, init_weights, train_network
from network.types import ActivationKind, InitRegime, Slfn


def _unit_net(activation, c, w=None):
    return Slfn(
        c=np.asarray(c, dtype=np.float64),
        output_dim=1 if w is None else np.asarray(w).shape[1],
        activation=activation,
        init=InitRegime.fixed(1.0),
        seed=0,
        w=None if w is None else np.asarray(w, dtype=np.float64),
    )


class InitWeightsTests(SimpleTestCase):
    def test_scaled_regime_hundred_units(self):
        c = init_weights(4, 100, InitRegime.scaled(), seed=1)
        self.assertEqual(c.shape, (5, 100))
        self.assertTrue(np.all(np.abs(c) < 0.1))

    def test_scaled_regime_nine_units(self):
        c = init_weights(3, 9, InitRegime.scaled(), seed=2)
        self.assertTrue(np.all(np.abs(c) < 1.0 / 3.0))

    def test_fixed_regime(self):
        c = init_weights(6, 50, InitRegime.fixed(1.0), seed=3)
        self.assertTrue(np.all(np.abs(c) < 1.0))
        self.assertGreater(np.max(np.abs(c)), 0.9)

    def test_deterministic_per_seed(self):
        regime = InitRegime.scaled()
        np.testing.assert_array_equal(init_weights(3, 20, regime, 42), init_weights(3, 20, regime, 42))
        self.assertFalse(np.array_equal(init_weights(3, 20, regime, 42), init_weights(3, 20, regime, 43)))

    def test_rejects_empty_shapes(self):
        with self.assertRaises(ValidationError):
            init_weights(0, 5, InitRegime.scaled(), 0)
        with self.assertRaises(ValidationError):
            init_weights(2, 0, InitRegime.scaled(), 0)

    def test_rejects_out_of_range_seed(self):
        with self.assertRaises(ValidationError):
            init_weights(2, 2, InitRegime.scaled(), -1)
        with self.assertRaises(ValidationError):
            init_weights(2, 2, InitRegime.scaled(), 2**64)


class HiddenMatrixTests(SimpleTestCase):
    def test_sigmoid_at_zero(self):
        net = _unit_net(ActivationKind.SIGMOID, np.zeros((3, 4)))
        np.testing.assert_array_equal(hidden_matrix(np.zeros((5, 2)), net), np.full((5, 4), 0.5))

    def test_tanh_at_zero(self):
        net = _unit_net(ActivationKind.TANH, np.zeros((3, 4)))
        np.testing.assert_array_equal(hidden_matrix(np.zeros((5, 2)), net), np.zeros((5, 4)))

    def test_scalar_tanh(self):
        net = _unit_net(ActivationKind.TANH, [[1.0], [0.0]])
        self.assertAlmostEqual(hidden_matrix([[1.0]], net)[0, 0], 0.7615941559557649, places=12)

    def test_sigmoid_does_not_overflow(self):
        net = _unit_net(ActivationKind.SIGMOID, [[1000.0], [0.0]])
        h = hidden_matrix([[-1.0], [1.0]], net)
        self.assertTrue(np.all(np.isfinite(h)))
        np.testing.assert_allclose(h[:, 0], [0.0, 1.0], atol=1e-300)

    def test_activation_ranges(self):
        rng = np.random.default_rng(0)
        x = rng.uniform(-1.0, 1.0, size=(200, 5))
        for activation in ActivationKind:
            net = build_network(
                input_dim=5, hidden_dim=30, output_dim=1, activation=activation, init=InitRegime.fixed(3.0), seed=9
            )
            low, high = activation.bounds
            h = hidden_matrix(x, net)
            self.assertTrue(np.all(h >= low) and np.all(h <= high))

    def test_scaled_pre_activation_bound(self):
        rng = np.random.default_rng(1)
        p = 6
        x = rng.uniform(-1.0, 1.0, size=(300, p))
        x[0] = 1.0
        for m in (1, 4, 25, 100):
            net = build_network(
                input_dim=p, hidden_dim=m, output_dim=1, activation="tanh", init=InitRegime.scaled(), seed=m
            )
            self.assertTrue(np.all(np.abs(pre_activations(x, net)) <= (p + 1) / np.sqrt(m)))

    def test_width_mismatch(self):
        net = _unit_net(ActivationKind.TANH, np.zeros((3, 2)))
        with self.assertRaises(ValidationError) as ctx:
            hidden_matrix(np.zeros((4, 3)), net)
        self.assertEqual(ctx.exception.code, "shape_mismatch")


class ForwardTests(SimpleTestCase):
    def setUp(self):
        self.x = np.random.default_rng(2).uniform(-1.0, 1.0, size=(8, 3))
        self.net = build_network(
            input_dim=3, hidden_dim=5, output_dim=2, activation="sigmoid", init=InitRegime.scaled(), seed=4
        )

    def test_zero_weights(self):
        out = forward(self.x, self.net.with_weights(np.zeros((5, 2))))
        np.testing.assert_array_equal(out, np.zeros((8, 2)))

    def test_selects_hidden_column(self):
        net = build_network(input_dim=3, hidden_dim=5, output_dim=1, activation="tanh", init=InitRegime.scaled(), seed=4)
        w = np.zeros((5, 1))
        w[3, 0] = 1.0
        np.testing.assert_array_equal(forward(self.x, net.with_weights(w))[:, 0], hidden_matrix(self.x, net)[:, 3])

    def test_untrained_network(self):
        with self.assertRaises(ValidationError) as ctx:
            forward(self.x, self.net)
        self.assertEqual(ctx.exception.code, "missing_weights")

    def test_trained_on_consistent_system(self):
        rng = np.random.default_rng(3)
        x = rng.uniform(-1.0, 1.0, size=(60, 3))
        net = build_network(input_dim=3, hidden_dim=6, output_dim=1, activation="tanh", init=InitRegime.fixed(1.0), seed=5)
        t = hidden_matrix(x, net) @ rng.standard_normal((6, 1))
        trained, factors = train_network(net, x, t)
        self.assertEqual(factors.sigma.size, 6)
        self.assertLessEqual(np.max(np.abs(forward(x, trained) - t)), 1e-8)
        trained_reg, _ = train_network(net, x, t, lam=0.0)
        np.testing.assert_allclose(trained_reg.w, trained.w, rtol=1e-8, atol=1e-10)

    def test_same_seed_same_weights(self):
        x = np.random.default_rng(6).uniform(-1.0, 1.0, size=(30, 3))
        t = np.sin(x[:, :1])
        weights = []
        for _ in range(2):
            net = build_network(
                input_dim=3, hidden_dim=5, output_dim=1, activation="sigmoid", init=InitRegime.scaled(), seed=4
            )
            trained, _ = train_network(net, x, t, lam=1e-6)
            weights.append(trained.w)
        np.testing.assert_array_equal(weights[0], weights[1])
