from django.conf import settings
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings
from rest_framework import serializers

from datasets.tests.helpers import TempFiles
from runner.selectors.config_selectors import config_get_value
from runner.serializers import ExperimentConfigSerializer, MRangeField, TrainConfigSerializer
from runner.services.config_services import build_methods, config_hash, load_config_file, resolve_config

TOY_SCHEMA = """\
name: toy
task: regression
columns:
  - {name: a}
  - {name: y, role: target}
"""


class CascadingConfigTests(SimpleTestCase):
    @override_settings(PINVNET={**settings.PINVNET, "TRIALS": 42})
    def test_cascading_priority(self):
        # 1. Project default
        self.assertEqual(config_get_value("trials"), 42)

        # 2. Config file override
        self.assertEqual(config_get_value("trials", file_config={"trials": 10}), 10)

        # 3. Flag override
        self.assertEqual(config_get_value("trials", flags={"trials": 5}, file_config={"trials": 10}), 5)

        # A flag that was not given does not hide the file
        self.assertEqual(config_get_value("trials", flags={"trials": None}, file_config={"trials": 10}), 10)

    def test_key_without_default(self):
        self.assertIsNone(config_get_value("dataset"))
        self.assertEqual(config_get_value("dataset", file_config={"dataset": "x.csv"}), "x.csv")


class MRangeFieldTests(SimpleTestCase):
    def parse(self, value):
        return MRangeField(step=1).to_internal_value(value)

    def test_formats(self):
        self.assertEqual(self.parse("1:5"), [1, 2, 3, 4, 5])
        self.assertEqual(self.parse("1:10:3"), [1, 4, 7, 10])
        self.assertEqual(self.parse("1,5,10"), [1, 5, 10])
        self.assertEqual(self.parse({"start": 2, "stop": 4}), [2, 3, 4])
        self.assertEqual(self.parse([3, 8]), [3, 8])
        self.assertEqual(self.parse(7), [7])

    def test_rejections(self):
        for value in ([3, 2], "0:3", "a:b", "1:2:3:4", True, {"stop": 4}, "5:1"):
            with self.subTest(value=value), self.assertRaises(serializers.ValidationError):
                self.parse(value)


class SerializerTests(SimpleTestCase):
    def setUp(self):
        self.files = TempFiles()
        self.data = self.files.write("toy.csv", "1,2\n3,4\n")
        self.schema = self.files.write("toy.yaml", TOY_SCHEMA)

    def tearDown(self):
        self.files.cleanup()

    def experiment(self, **overrides):
        data = {
            "dataset": str(self.data),
            "schema": str(self.schema),
            "fractions": [0.5, 0.25, 0.25],
            "methods": ["HypT-reg", "ELM"],
            "m_range": "1:10",
            "trials": 5,
            "lambda_grid": [1e-12, 1e-6],
            "seed": 0,
            "out": str(self.files.root / "out"),
            "workers": 1,
            "confidence": 0.95,
            "equal_var": False,
            "timing": True,
            "window_fraction": 0.25,
            "failure_budget": 0.1,
        }
        data.update(overrides)
        return ExperimentConfigSerializer(data=data)

    def test_valid_experiment(self):
        serializer = self.experiment()
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data["m_range"], list(range(1, 11)))

    def test_single_trial_rejected(self):
        serializer = self.experiment(trials=1)
        self.assertFalse(serializer.is_valid())
        self.assertIn("trials", serializer.errors)

    def test_missing_dataset_names_the_path(self):
        missing = str(self.files.root / "nowhere.csv")
        serializer = self.experiment(dataset=missing)
        self.assertFalse(serializer.is_valid())
        self.assertIn(missing, str(serializer.errors["dataset"][0]))

    def test_bundled_schema_by_dataset_stem(self):
        iris = self.files.write("iris.data", "5.1,3.5,1.4,0.2,Iris-setosa\n")
        serializer = self.experiment(dataset=str(iris), schema=None)
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertTrue(serializer.validated_data["schema"].endswith("iris.yaml"))

    def test_rejections(self):
        cases = {
            "methods": {"methods": ["HypT-reg", "Nope"]},
            "lambda_grid": {"lambda_grid": [1e-6, 1e-12]},
            "fractions": {"fractions": [0.5, 0.3, 0.3]},
            "confidence": {"confidence": 1.0},
            "lambdas": {"lambdas": {"ELM": 1e-6}},
        }
        for field, overrides in cases.items():
            with self.subTest(field=field):
                serializer = self.experiment(**overrides)
                self.assertFalse(serializer.is_valid())
                self.assertIn(field, serializer.errors)

    def test_duplicate_methods_rejected(self):
        serializer = self.experiment(methods=["ELM", "ELM"])
        self.assertFalse(serializer.is_valid())

    def test_custom_method(self):
        custom = {"label": "Tanh-wide", "activation": "tanh", "init": "fixed", "half_width": 2.0}
        serializer = self.experiment(methods=[custom], lambdas={"Tanh-wide": 1e-8})
        self.assertTrue(serializer.is_valid(), serializer.errors)
        methods = build_methods(serializer.validated_data)
        self.assertEqual(methods[0].init.half_width, 2.0)
        self.assertEqual(methods[0].lam, 1e-8)

    def train(self, **overrides):
        data = {
            "dataset": str(self.data),
            "schema": str(self.schema),
            "fractions": [0.5, 0.25, 0.25],
            "method": "HypT-reg",
            "m": 5,
            "seed": 3,
            "out": str(self.files.root / "out"),
        }
        data.update(overrides)
        return TrainConfigSerializer(data=data)

    def test_train_defaults(self):
        serializer = self.train()
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertEqual(serializer.validated_data["lam"], 0.0)
        self.assertEqual(serializer.validated_data["split_seed"], 3)

    def test_train_rejections(self):
        for overrides in ({"m": 0}, {"method": "ELM", "lam": 1e-3}, {"seed": -1}):
            with self.subTest(overrides=overrides):
                self.assertFalse(self.train(**overrides).is_valid())

    def test_unregularized_train_keeps_no_lambda(self):
        serializer = self.train(method="ELM")
        self.assertTrue(serializer.is_valid(), serializer.errors)
        self.assertIsNone(serializer.validated_data["lam"])


class ResolveConfigTests(SimpleTestCase):
    def setUp(self):
        self.files = TempFiles()
        self.data = self.files.write("toy.csv", "1,2\n3,4\n")
        self.schema = self.files.write("toy.yaml", TOY_SCHEMA)

    def tearDown(self):
        self.files.cleanup()

    def config_file(self, text):
        return str(self.files.write("run.yaml", text))

    def test_flags_override_file(self):
        path = self.config_file(
            f"dataset: {self.data}\nschema: {self.schema}\nmethod: HypT-reg\nlambda: 1.0e-9\n"
            "m_range: {start: 1, stop: 4}\ntrials: 7\n"
        )
        config = resolve_config(ExperimentConfigSerializer, {"trials": None}, config_path=path)
        self.assertEqual(config["trials"], 7)
        self.assertEqual(config["methods"], ["HypT-reg"])
        self.assertEqual(config["lam"], 1e-9)
        self.assertEqual(config["m_range"], [1, 2, 3, 4])
        self.assertEqual(config["lambda_grid"], settings.PINVNET["LAMBDA_GRID"])

        config = resolve_config(ExperimentConfigSerializer, {"trials": 9, "methods": ["ELM,HypT-unreg"]}, config_path=path)
        self.assertEqual(config["trials"], 9)
        self.assertEqual(config["methods"], ["ELM", "HypT-unreg"])

    def test_train_file_keeps_singular_method(self):
        path = self.config_file(
            f"dataset: {self.data}\nschema: {self.schema}\nmethod: Sigm-reg\nm: 12\nlambda: 1.0e-11\n"
        )
        config = resolve_config(TrainConfigSerializer, {"seed": 4}, config_path=path)
        self.assertEqual(config["method"], "Sigm-reg")
        self.assertEqual(config["lam"], 1e-11)
        self.assertEqual(config["split_seed"], 4)

    def test_errors_name_the_key(self):
        path = self.config_file(f"dataset: {self.data}\nschema: {self.schema}\nmethods: [ELM]\nm_range: '1:4'\ntrials: 1\n")
        with self.assertRaises(ValidationError) as ctx:
            resolve_config(ExperimentConfigSerializer, {}, config_path=path)
        self.assertEqual(ctx.exception.code, "invalid_config")
        self.assertIn("trials", ctx.exception.message)

    def test_unknown_key(self):
        path = self.config_file("trails: 5\n")
        with self.assertRaises(ValidationError) as ctx:
            resolve_config(ExperimentConfigSerializer, {}, config_path=path)
        self.assertIn("trails", ctx.exception.message)

    def test_bad_files(self):
        with self.assertRaises(ValidationError) as ctx:
            load_config_file(self.files.root / "missing.yaml")
        self.assertEqual(ctx.exception.code, "missing_file")
        with self.assertRaises(ValidationError) as ctx:
            load_config_file(self.config_file("trials: [1, 2\n"))
        self.assertEqual(ctx.exception.code, "parse_error")
        with self.assertRaises(ValidationError) as ctx:
            load_config_file(self.config_file("- just\n- a list\n"))
        self.assertEqual(ctx.exception.code, "parse_error")

    def test_config_hash(self):
        base = {"dataset": "a.csv", "seed": 0, "out": "results", "workers": 1}
        self.assertEqual(config_hash(base), config_hash({**base, "out": "elsewhere", "workers": 8}))
        self.assertNotEqual(config_hash(base), config_hash({**base, "seed": 1}))
