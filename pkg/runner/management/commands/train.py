"""
Django management command training a single network.

Usage:
    python manage.py train --dataset data/iris.data --method Sigm-reg --m 19 --lambda 1e-10 --seed 7

The model file <dataset>_<method>_m<M>.json lands in --out; its metrics
block holds the validation and test errors. The seed draws the input
weights; the data split uses --split-seed (default: the same seed). A
regularized method without --lambda is trained with lambda = 0.
"""
from runner.management.base import ExperimentCommand
from runner.serializers import TrainConfigSerializer
from runner.services.job_services import run_train_job


class Command(ExperimentCommand):
    help = "Train one network and write the model file"
    serializer_class = TrainConfigSerializer

    def add_arguments(self, parser):
        self.add_dataset_arguments(parser)
        parser.add_argument("--method", help="Method preset, e.g. HypT-reg")
        parser.add_argument("--m", type=int, help="Hidden-layer size")
        parser.add_argument("--lambda", dest="lam", type=float, help="Regularization (regularized methods only)")
        parser.add_argument("--split-seed", dest="split_seed", type=int, help="Seed of the data split")

    def handle(self, *args, **options):
        config = self.resolve(options)
        outcome = self.run_job(run_train_job, config)
        self.report_written(outcome)
        self.record(config, "SUCCESS", outcome.summary, dataset=outcome.dataset)
