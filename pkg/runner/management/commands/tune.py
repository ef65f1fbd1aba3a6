"""
Django management command locating the critical region and tuning lambda.

Usage:
    python manage.py tune --config configs/abalone.yaml --method HypT-reg

For each regularized method: sweeps its unregularized counterpart, reports
the first hidden size where min sigma / threshold drops below one (or its
absence and the fallback window), then grid-searches lambda on the
validation error inside the window.
"""
from runner.management.base import ExperimentCommand
from runner.serializers import ExperimentConfigSerializer
from runner.services.job_services import run_tune_job


class Command(ExperimentCommand):
    help = "Detect the critical hidden-layer size and tune lambda inside it"
    serializer_class = ExperimentConfigSerializer

    def add_arguments(self, parser):
        self.add_experiment_arguments(parser)

    def handle(self, *args, **options):
        config = self.resolve(options)
        self.stdout.write(self.style.SUCCESS("Starting lambda tuning..."))
        outcome = self.run_job(run_tune_job, config)
        self.report_written(outcome)
        if outcome.invalid_records:
            self.stdout.write(
                self.style.WARNING(f"{outcome.invalid_records} detection records are invalid (too many failed trials).")
            )
        self.record(config, "SUCCESS", outcome.summary, dataset=outcome.dataset)
