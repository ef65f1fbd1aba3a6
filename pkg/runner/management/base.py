"""
Shared plumbing of the experiment commands: the common flags, config
resolution and the mapping of errors to exit codes (2 for usage and config
errors, 1 for failures while running).
"""
import argparse
import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from runner.services.config_services import config_hash, resolve_config
from runner.utils import log_run

logger = logging.getLogger(__name__)

# Error codes that mean the input was wrong rather than the run.
USAGE_CODES = {
    "invalid",
    "invalid_config",
    "invalid_model",
    "insufficient_data",
    "missing_file",
    "parse_error",
    "schema_error",
    "shape_mismatch",
    "stratification",
    "unseen_label",
    "unusable_dataset",
}


class ExperimentCommand(BaseCommand):
    serializer_class = None

    def add_dataset_arguments(self, parser):
        parser.add_argument("--config", help="YAML config file; flags override its keys")
        parser.add_argument("--dataset", help="Data file (CSV or whitespace separated)")
        parser.add_argument("--schema", help="Dataset schema (default: bundled <dataset stem>.yaml)")
        parser.add_argument("--fractions", help="Train,validation,test shares, e.g. 0.5,0.25,0.25")
        parser.add_argument("--seed", type=int, help="Base seed")
        parser.add_argument("--out", help="Output directory")

    def add_experiment_arguments(self, parser):
        self.add_dataset_arguments(parser)
        parser.add_argument(
            "--method",
            dest="methods",
            action="append",
            help="Method preset (HypT-reg, Sigm-reg, HypT-unreg, Sigm-unreg, ELM); repeat or comma-separate",
        )
        parser.add_argument("--m-range", dest="m_range", help="Hidden sizes as start:stop[:step] or a comma list")
        parser.add_argument("--trials", type=int, help="Trials per hidden size (>= 2)")
        parser.add_argument("--lambda-grid", dest="lambda_grid", help="Comma-separated ascending lambda grid")
        parser.add_argument("--lambda", dest="lam", type=float, help="Fixed lambda for every regularized method")
        parser.add_argument("--workers", type=int, help="Worker processes")
        parser.add_argument("--confidence", type=float, help="Confidence level of the t-tests")
        parser.add_argument("--equal-var", dest="equal_var", action=argparse.BooleanOptionalAction, default=None)
        parser.add_argument("--timing", action=argparse.BooleanOptionalAction, default=None)
        parser.add_argument("--window-fraction", dest="window_fraction", type=float)
        parser.add_argument("--failure-budget", dest="failure_budget", type=float)

    def resolve(self, options) -> dict:
        try:
            return resolve_config(self.serializer_class, options, config_path=options.get("config"))
        except ValidationError as exc:
            raise CommandError(f"invalid configuration: {exc.message}", returncode=2)

    def run_job(self, job, config: dict, **kwargs):
        command = self.command_name
        try:
            return job(config, **kwargs)
        except ValidationError as exc:
            self.record(config, "FAILED", exc.message)
            raise CommandError(exc.message, returncode=2 if exc.code in USAGE_CODES else 1)
        except Exception as exc:
            logger.exception(f"{command} failed")
            self.record(config, "FAILED", str(exc))
            raise CommandError(f"{command} failed: {exc}", returncode=1)

    def record(self, config: dict, status: str, description: str, *, dataset=None):
        log_run(
            self.command_name,
            status,
            description,
            dataset=dataset,
            config_hash=config_hash(config),
            seed=config.get("seed"),
            output_dir=config.get("out"),
        )

    def report_written(self, outcome):
        for path in outcome.written:
            self.stdout.write(self.style.SUCCESS(f"✓ Wrote {path}"))
        if outcome.summary:
            self.stdout.write(outcome.summary)

    @property
    def command_name(self) -> str:
        return self.__module__.rsplit(".", 1)[-1]
