from rest_framework import serializers

from datasets.types import (
    CLASSIFICATION,
    ONEHOT,
    ORDINAL,
    REGRESSION,
    ColumnSpec,
    DatasetSchema,
)


def flatten_errors(errors, prefix="") -> list:
    """Turn nested serializer errors into "field.sub: message" strings."""
    messages = []
    if isinstance(errors, dict):
        for key, value in errors.items():
            messages.extend(flatten_errors(value, f"{prefix}{key}."))
    elif isinstance(errors, list):
        for index, value in enumerate(errors):
            if isinstance(value, (dict, list)):
                messages.extend(flatten_errors(value, f"{prefix}{index}."))
            else:
                messages.append(f"{prefix.rstrip('.') or 'config'}: {value}")
    else:
        messages.append(f"{prefix.rstrip('.')}: {errors}")
    return messages


class ColumnSerializer(serializers.Serializer):
    name = serializers.CharField(max_length=100)
    role = serializers.ChoiceField(choices=["feature", "target", "ignore"], default="feature")
    type = serializers.ChoiceField(choices=["numeric", "categorical"], default="numeric")
    categories = serializers.ListField(child=serializers.CharField(), required=False, default=list)

    def validate(self, data):
        if data["type"] == "categorical":
            if not data["categories"]:
                raise serializers.ValidationError(
                    f"categorical column '{data['name']}' must list its categories."
                )
            if len(set(data["categories"])) != len(data["categories"]):
                raise serializers.ValidationError(f"column '{data['name']}' lists a category twice.")
        return data


class SchemaSerializer(serializers.Serializer):
    """Validates a dataset schema file (YAML mapping) and builds a DatasetSchema."""
    name = serializers.CharField(max_length=100)
    task = serializers.ChoiceField(choices=[REGRESSION, CLASSIFICATION])
    delimiter = serializers.CharField(default=",", trim_whitespace=False)
    header = serializers.BooleanField(default=False)
    missing = serializers.ListField(child=serializers.CharField(allow_blank=True), default=lambda: ["?", ""])
    class_labels = serializers.ListField(child=serializers.CharField(), required=False, default=list)
    categorical_encoding = serializers.ChoiceField(choices=[ORDINAL, ONEHOT], default=ORDINAL)
    columns = ColumnSerializer(many=True)

    def validate_delimiter(self, value):
        if value != "whitespace" and len(value) != 1:
            raise serializers.ValidationError("delimiter must be a single character or 'whitespace'.")
        return value

    def validate(self, data):
        columns = data["columns"]
        names = [column["name"] for column in columns]
        if len(set(names)) != len(names):
            raise serializers.ValidationError({"columns": "column names must be unique."})
        targets = [column for column in columns if column["role"] == "target"]
        if len(targets) != 1:
            raise serializers.ValidationError({"columns": f"exactly one target column is required, found {len(targets)}."})
        if not any(column["role"] == "feature" for column in columns):
            raise serializers.ValidationError({"columns": "at least one feature column is required."})
        if data["task"] == CLASSIFICATION:
            labels = data["class_labels"]
            if len(labels) < 2:
                raise serializers.ValidationError({"class_labels": "classification needs at least two class labels."})
            if len(set(labels)) != len(labels):
                raise serializers.ValidationError({"class_labels": "class labels must be unique."})
        return data

    def create(self, validated_data):
        return DatasetSchema(
            name=validated_data["name"],
            task=validated_data["task"],
            columns=tuple(
                ColumnSpec(
                    name=column["name"],
                    role=column["role"],
                    type=column["type"],
                    categories=tuple(column["categories"]),
                )
                for column in validated_data["columns"]
            ),
            delimiter=validated_data["delimiter"],
            header=validated_data["header"],
            missing=tuple(validated_data["missing"]),
            class_labels=tuple(validated_data["class_labels"]),
            categorical_encoding=validated_data["categorical_encoding"],
        )
