from pathlib import Path

from django.conf import settings
from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import serializers

from datasets.services.loader_services import SCHEMA_DIR
from datasets.services.split_services import validate_fractions
from experiments.services.sweep_services import validate_m_range
from experiments.services.tuning_services import validate_grid
from experiments.types import PRESETS, custom_method, method_from_label
from network.services.network_services import MAX_SEED
from network.types import ActivationKind, InitKind


def _reraise(exc: DjangoValidationError):
    raise serializers.ValidationError(exc.messages)


class MRangeField(serializers.Field):
    """
    Hidden sizes. Accepts ``"start:stop"`` or ``"start:stop:step"`` (stop
    included), a comma list ``"1,5,10"``, a list of ints, or a mapping with
    ``start``, ``stop`` and optional ``step``. The step defaults to
    ``PINVNET["M_STEP"]``.
    """
    default_error_messages = {
        "format": "expected 'start:stop[:step]', a comma list, a list or a {{start, stop, step}} mapping.",
    }

    def __init__(self, *, step=None, **kwargs):
        self.step = step
        super().__init__(**kwargs)

    @property
    def default_step(self) -> int:
        return self.step or settings.PINVNET.get("M_STEP", 1)

    def _inclusive(self, start, stop, step):
        if step < 1:
            raise serializers.ValidationError("m_range step must be >= 1.")
        return list(range(int(start), int(stop) + 1, int(step)))

    def to_internal_value(self, data):
        try:
            if isinstance(data, bool):
                self.fail("format")
            if isinstance(data, int):
                values = [data]
            elif isinstance(data, str) and ":" in data:
                parts = [int(part) for part in data.split(":")]
                if len(parts) not in (2, 3):
                    self.fail("format")
                values = self._inclusive(parts[0], parts[1], parts[2] if len(parts) == 3 else self.default_step)
            elif isinstance(data, str):
                values = [int(part) for part in data.split(",") if part.strip()]
            elif isinstance(data, dict):
                values = self._inclusive(data["start"], data["stop"], data.get("step", self.default_step))
            elif isinstance(data, (list, tuple)):
                values = [int(value) for value in data]
            else:
                self.fail("format")
        except (KeyError, TypeError, ValueError):
            self.fail("format")
        try:
            return validate_m_range(values)
        except DjangoValidationError as exc:
            _reraise(exc)

    def to_representation(self, value):
        return list(value)


class FloatListField(serializers.ListField):
    """List of floats; a comma-separated string (as given on the command line) is split first."""
    child = serializers.FloatField()

    def to_internal_value(self, data):
        if isinstance(data, str):
            data = [part.strip() for part in data.split(",") if part.strip()]
        return super().to_internal_value(data)


class MethodSerializer(serializers.Serializer):
    """A custom method; presets are given by label instead."""
    label = serializers.CharField(max_length=50)
    activation = serializers.ChoiceField(choices=[kind.value for kind in ActivationKind])
    init = serializers.ChoiceField(choices=[kind.value for kind in InitKind], default=InitKind.SCALED.value)
    half_width = serializers.FloatField(default=1.0)
    regularized = serializers.BooleanField(default=True)

    def validate_label(self, value):
        if value in PRESETS:
            raise serializers.ValidationError(f"'{value}' is a preset name; give it as a plain label.")
        return value

    def validate(self, data):
        try:
            custom_method(**data)
        except DjangoValidationError as exc:
            _reraise(exc)
        return data


def validate_method_entry(entry):
    """A preset label or a custom method mapping; returns the JSON-safe validated form."""
    if isinstance(entry, str):
        try:
            method_from_label(entry)
        except DjangoValidationError as exc:
            _reraise(exc)
        return entry
    if isinstance(entry, dict):
        serializer = MethodSerializer(data=entry)
        serializer.is_valid(raise_exception=True)
        return dict(serializer.validated_data)
    raise serializers.ValidationError("a method is a preset label or a mapping with label and activation.")


def method_label(entry) -> str:
    return entry if isinstance(entry, str) else entry["label"]


def method_regularized(entry) -> bool:
    return PRESETS[entry].regularized if isinstance(entry, str) else entry["regularized"]


class DatasetConfigSerializer(serializers.Serializer):
    dataset = serializers.CharField()
    schema = serializers.CharField(required=False, allow_null=True, default=None)
    fractions = FloatListField()

    def validate_dataset(self, value):
        if not Path(value).is_file():
            raise serializers.ValidationError(f"dataset file not found: {value}")
        return value

    def validate_fractions(self, value):
        try:
            return list(validate_fractions(value))
        except DjangoValidationError as exc:
            _reraise(exc)

    def resolve_schema(self, data):
        """A missing schema defaults to the bundled ``<dataset stem>.yaml``."""
        schema = data.get("schema")
        if schema is None:
            bundled = SCHEMA_DIR / f"{Path(data['dataset']).stem}.yaml"
            if not bundled.is_file():
                raise serializers.ValidationError(
                    {"schema": f"no schema given and no bundled schema {bundled.name} for this dataset."}
                )
            data["schema"] = str(bundled)
        elif not Path(schema).is_file():
            raise serializers.ValidationError({"schema": f"schema file not found: {schema}"})
        return data


class ExperimentConfigSerializer(DatasetConfigSerializer):
    """Configuration of the ``sweep`` and ``tune`` commands."""
    methods = serializers.ListField(child=serializers.JSONField(), min_length=1)
    m_range = MRangeField()
    trials = serializers.IntegerField(min_value=2)
    lambda_grid = FloatListField(min_length=1)
    lambdas = serializers.DictField(child=serializers.FloatField(min_value=0.0), required=False, default=dict)
    lam = serializers.FloatField(min_value=0.0, required=False, allow_null=True, default=None)
    seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED)
    out = serializers.CharField()
    workers = serializers.IntegerField(min_value=1)
    confidence = serializers.FloatField()
    equal_var = serializers.BooleanField()
    timing = serializers.BooleanField()
    window_fraction = serializers.FloatField()
    failure_budget = serializers.FloatField(min_value=0.0, max_value=1.0)
    timing_m = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    xlsx = serializers.BooleanField(required=False, default=False)

    def validate_methods(self, value):
        methods = [validate_method_entry(entry) for entry in value]
        labels = [method_label(entry) for entry in methods]
        if len(set(labels)) != len(labels):
            raise serializers.ValidationError("method labels must be unique.")
        return methods

    def validate_lambda_grid(self, value):
        try:
            return validate_grid(value)
        except DjangoValidationError as exc:
            _reraise(exc)

    def validate_confidence(self, value):
        if not 0.0 < value < 1.0:
            raise serializers.ValidationError("confidence must lie strictly between 0 and 1.")
        return value

    def validate_window_fraction(self, value):
        if value <= 0.0:
            raise serializers.ValidationError("window_fraction must be > 0.")
        return value

    def validate(self, data):
        data = self.resolve_schema(data)
        regularized = {method_label(entry) for entry in data["methods"] if method_regularized(entry)}
        stray = sorted(set(data["lambdas"]) - regularized)
        if stray:
            raise serializers.ValidationError(
                {"lambdas": f"fixed lambdas given for methods that are not regularized or not run: {', '.join(stray)}."}
            )
        return data


class TrainConfigSerializer(DatasetConfigSerializer):
    """Configuration of the ``train`` command."""
    method = serializers.JSONField()
    m = serializers.IntegerField(min_value=1)
    lam = serializers.FloatField(min_value=0.0, required=False, allow_null=True, default=None)
    seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED)
    split_seed = serializers.IntegerField(min_value=0, max_value=MAX_SEED, required=False, allow_null=True, default=None)
    out = serializers.CharField()

    def validate_method(self, value):
        return validate_method_entry(value)

    def validate(self, data):
        data = self.resolve_schema(data)
        regularized = method_regularized(data["method"])
        if data["lam"] is not None and not regularized:
            raise serializers.ValidationError({"lam": f"{method_label(data['method'])} is unregularized and takes no lambda."})
        if regularized and data["lam"] is None:
            data["lam"] = 0.0
        if data["split_seed"] is None:
            data["split_seed"] = data["seed"]
        return data


class PredictConfigSerializer(serializers.Serializer):
    """Configuration of the ``predict`` command."""
    model = serializers.CharField()
    input = serializers.CharField()
    out = serializers.CharField()
    delimiter = serializers.CharField(default=",", trim_whitespace=False)

    def validate_model(self, value):
        if not Path(value).is_file():
            raise serializers.ValidationError(f"model file not found: {value}")
        return value

    def validate_input(self, value):
        if not Path(value).is_file():
            raise serializers.ValidationError(f"input file not found: {value}")
        return value

    def validate_delimiter(self, value):
        if value != "whitespace" and len(value) != 1:
            raise serializers.ValidationError("delimiter must be a single character or 'whitespace'.")
        return value

