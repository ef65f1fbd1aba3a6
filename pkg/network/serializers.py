from rest_framework import serializers

from datasets.types import CLASSIFICATION, ONEHOT, ORDINAL, REGRESSION
from network.types import ActivationKind, InitKind

MODEL_FORMAT = "pinvnet-slfn"
MODEL_FORMAT_VERSION = 1

def _matrix():
    return serializers.ListField(child=serializers.ListField(child=serializers.FloatField()))


class InitRegimeSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=[kind.value for kind in InitKind])
    half_width = serializers.FloatField(min_value=0.0)


class TaskSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=[REGRESSION, CLASSIFICATION])
    num_classes = serializers.IntegerField(min_value=2, allow_null=True, required=False, default=None)


class PreprocessingSerializer(serializers.Serializer):
    raw_names = serializers.ListField(child=serializers.CharField(), min_length=1)
    categories = serializers.DictField(child=serializers.ListField(child=serializers.CharField()))
    encoding = serializers.ChoiceField(choices=[ORDINAL, ONEHOT])
    kept = serializers.ListField(child=serializers.IntegerField(min_value=0), min_length=1)
    ranges = serializers.ListField(
        child=serializers.ListField(child=serializers.FloatField(), min_length=2, max_length=2),
        min_length=1,
    )

    def validate(self, data):
        if len(data["kept"]) != len(data["ranges"]):
            raise serializers.ValidationError({"ranges": "one range is required per kept column."})
        if any(high <= low for low, high in data["ranges"]):
            raise serializers.ValidationError({"ranges": "every range must have high > low."})
        return data


class ModelFileInputSerializer(serializers.Serializer):
    """Validates a model file read back from disk."""
    format = serializers.ChoiceField(choices=[MODEL_FORMAT])
    format_version = serializers.IntegerField()
    activation = serializers.ChoiceField(choices=[kind.value for kind in ActivationKind])
    init = InitRegimeSerializer()
    method = serializers.CharField(max_length=100)
    regularization_lambda = serializers.FloatField(min_value=0.0, allow_null=True)
    seed = serializers.IntegerField(min_value=0, max_value=2**64 - 1)
    rng = serializers.CharField()
    input_dim = serializers.IntegerField(min_value=1)
    hidden_dim = serializers.IntegerField(min_value=1)
    output_dim = serializers.IntegerField(min_value=1)
    task = TaskSerializer()
    class_labels = serializers.ListField(child=serializers.CharField(), required=False, default=list)
    preprocessing = PreprocessingSerializer(allow_null=True, required=False, default=None)
    metrics = serializers.DictField(child=serializers.FloatField(allow_null=True), required=False, default=dict)
    c = _matrix()
    w = _matrix()

    def validate_format_version(self, value):
        if value != MODEL_FORMAT_VERSION:
            raise serializers.ValidationError(
                f"unsupported format_version {value}; this build reads version {MODEL_FORMAT_VERSION}."
            )
        return value

    def validate(self, data):
        p, m, q = data["input_dim"], data["hidden_dim"], data["output_dim"]
        if len(data["c"]) != p + 1 or any(len(row) != m for row in data["c"]):
            raise serializers.ValidationError({"c": f"c must be {p + 1}x{m} (input weights plus bias row)."})
        if len(data["w"]) != m or any(len(row) != q for row in data["w"]):
            raise serializers.ValidationError({"w": f"w must be {m}x{q}."})
        task = data["task"]
        if task["kind"] == CLASSIFICATION:
            if task["num_classes"] != q or len(data["class_labels"]) != q:
                raise serializers.ValidationError(
                    {"class_labels": f"a classifier with {q} outputs needs {q} class labels."}
                )
        elif q != 1:
            raise serializers.ValidationError({"output_dim": "a regression model has exactly one output."})
        preprocessing = data["preprocessing"]
        if preprocessing is not None and len(preprocessing["kept"]) != p:
            raise serializers.ValidationError(
                {"preprocessing": f"preprocessing keeps {len(preprocessing['kept'])} columns, the network reads {p}."}
            )
        return data
