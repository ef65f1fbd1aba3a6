"""
Django management command applying a saved model to new inputs.

Usage:
    python manage.py predict --model results/iris_Sigm-reg_m19.json --input new_rows.csv --out predictions.csv

The input holds raw feature columns in schema order (an optional header row
naming them is skipped). Classifiers write the predicted class label, regressors
one column per output.
"""
from runner.management.base import ExperimentCommand
from runner.serializers import PredictConfigSerializer
from runner.services.job_services import run_predict_job


class Command(ExperimentCommand):
    help = "Predict with a saved model"
    serializer_class = PredictConfigSerializer

    def add_arguments(self, parser):
        parser.add_argument("--config", help="YAML config file; flags override its keys")
        parser.add_argument("--model", help="Model file written by train")
        parser.add_argument("--input", help="CSV of raw feature rows")
        parser.add_argument("--out", help="Predictions CSV, or a directory for <input>_predictions.csv")
        parser.add_argument("--delimiter", help="Input delimiter, a single character or 'whitespace' (default ',')")

    def handle(self, *args, **options):
        config = self.resolve(options)
        outcome = self.run_job(run_predict_job, config)
        self.report_written(outcome)
        self.record(config, "SUCCESS", outcome.summary, dataset=outcome.dataset)
