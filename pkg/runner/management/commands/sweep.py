"""
Django management command running the benchmark protocol on one dataset.

Usage:
    python manage.py sweep --config configs/iris.yaml
    python manage.py sweep --dataset data/iris.data --method HypT-reg,HypT-unreg,ELM --m-range 1:120 --trials 20

Writes into --out:
- <dataset>_<method>_sweep.csv per method (and per unregularized detection sweep)
- <dataset>_<method>_tune.csv for regularized methods whose lambda was tuned
- <dataset>_comparison.csv, <dataset>_optimal.csv and <dataset>_diagnostics.csv
- <dataset>_timing.csv with --timing-m, <dataset>_tables.xlsx with --xlsx
"""
from django.core.management.base import CommandError

from runner.management.base import ExperimentCommand
from runner.serializers import ExperimentConfigSerializer
from runner.services.job_services import run_sweep_job
from runner.tasks import submit_sweep


class Command(ExperimentCommand):
    help = "Sweep hidden-layer sizes for each method and write result CSVs"
    serializer_class = ExperimentConfigSerializer

    def add_arguments(self, parser):
        self.add_experiment_arguments(parser)
        parser.add_argument("--timing-m", dest="timing_m", type=int, help="Also time one training step at this M")
        parser.add_argument("--xlsx", action="store_true", default=None, help="Also write the tables as XLSX")
        parser.add_argument("--queue", action="store_true", help="Run on a Celery worker")

    def handle(self, *args, **options):
        config = self.resolve(options)
        self.stdout.write(self.style.SUCCESS("Starting sweep..."))

        if options["queue"]:
            result, outcome = self.run_job(submit_sweep, config)
            if result is not None:
                self.record(config, "QUEUED", f"task {result.id}")
                self.stdout.write(self.style.SUCCESS(f"✓ Queued sweep as task {result.id}"))
                return
            self.stdout.write(self.style.WARNING("No broker reachable; the sweep ran in-process."))
        else:
            progress = None
            if options["verbosity"] >= 2:
                def progress(record):
                    self.stdout.write(f"  {record.method} m={record.m}: mean error {record.mean_err:.6g}")
            outcome = self.run_job(run_sweep_job, config, progress=progress)

        self.report_written(outcome)
        if not outcome.ok:
            self.record(config, "FAILED", outcome.summary, dataset=outcome.dataset)
            raise CommandError(
                f"{outcome.invalid_records} sweep records are invalid (too many failed trials); see n_failed.",
                returncode=1,
            )
        self.record(config, "SUCCESS", outcome.summary, dataset=outcome.dataset)
