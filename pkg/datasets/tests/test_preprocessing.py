import numpy as np
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from datasets.services.preprocessing_services import (
    decode_labels,
    decode_targets,
    encode_targets,
    normalize,
)
from datasets.tests.helpers import labelled_dataset, regression_dataset


class NormalizeTests(SimpleTestCase):
    def test_midpoint_maps_to_zero(self):
        d = normalize(regression_dataset([[0.0], [5.0], [10.0]]))
        np.testing.assert_allclose(d.x[:, 0], [-1.0, 0.0, 1.0])
        self.assertEqual(d.feature_ranges, ((0.0, 10.0),))

    def test_already_normalized_column_is_identity(self):
        x = np.array([[-1.0], [0.25], [1.0]])
        np.testing.assert_array_equal(normalize(regression_dataset(x)).x, x)

    def test_idempotent(self):
        rng = np.random.default_rng(3)
        once = normalize(regression_dataset(rng.normal(4.0, 3.0, size=(50, 5))))
        twice = normalize(once)
        np.testing.assert_allclose(twice.x, once.x, atol=1e-12)
        np.testing.assert_allclose(np.array(twice.feature_ranges), np.array(once.feature_ranges), atol=1e-12)

    def test_constant_column_dropped(self):
        x = np.array([[1.0, 7.0], [2.0, 7.0], [3.0, 7.0]])
        with self.assertLogs("datasets.services.preprocessing_services", level="WARNING"):
            d = normalize(regression_dataset(x))
        self.assertEqual(d.input_dim, 1)
        self.assertEqual(d.feature_names, ("f0",))
        self.assertEqual(d.transform.kept, (0,))

    def test_all_constant_is_unusable(self):
        with self.assertRaises(ValidationError) as ctx:
            normalize(regression_dataset(np.ones((4, 2))))
        self.assertEqual(ctx.exception.code, "unusable_dataset")

    def test_statistics_from_training_rows_only(self):
        x = np.array([[0.0], [10.0], [20.0], [100.0]])
        d = normalize(regression_dataset(x), train_indices=[0, 1, 2])
        self.assertEqual(d.feature_ranges, ((0.0, 20.0),))
        np.testing.assert_allclose(d.x[:, 0], [-1.0, 0.0, 1.0, 9.0])

    def test_transform_reproduces_scaled_rows(self):
        rng = np.random.default_rng(5)
        raw = rng.uniform(-3.0, 8.0, size=(30, 3))
        raw[:, 1] = 2.0
        with self.assertLogs("datasets.services.preprocessing_services", level="WARNING"):
            d = normalize(normalize(regression_dataset(raw), train_indices=np.arange(20)))
        np.testing.assert_allclose(d.transform.scale(raw), d.x, atol=1e-12)


class EncodeTargetsTests(SimpleTestCase):
    def test_one_hot(self):
        d = encode_targets(labelled_dataset([0, 2, 1], num_classes=3))
        np.testing.assert_array_equal(d.t, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])
        self.assertEqual(d.output_dim, 3)
        self.assertTrue(d.targets_encoded)

    def test_regression_passthrough(self):
        d = encode_targets(regression_dataset([[1.0]], [5.3]))
        np.testing.assert_array_equal(d.t, [[5.3]])

    def test_label_out_of_range(self):
        d = labelled_dataset([0, 1, 3], num_classes=3)
        with self.assertRaises(ValidationError) as ctx:
            encode_targets(d)
        self.assertEqual(ctx.exception.code, "unseen_label")

    def test_argmax_decode(self):
        self.assertEqual(decode_targets(np.array([[0.1, 0.9, 0.3]])).tolist(), [1])

    def test_round_trip(self):
        labels = np.random.default_rng(1).integers(0, 4, size=60)
        d = encode_targets(labelled_dataset(labels, num_classes=4))
        np.testing.assert_array_equal(decode_targets(d.t), labels)

    def test_decode_unknown_index(self):
        self.assertEqual(decode_labels([1, 0], ("a", "b")), ["b", "a"])
        with self.assertRaises(ValidationError) as ctx:
            decode_labels([2], ("a", "b"))
        self.assertEqual(ctx.exception.code, "unseen_label")
