"""
Command bodies, shared by the management commands and the Celery task.

Each job takes a validated config (see config_services), writes its result
files through an ExportService and returns a JobOutcome. Contract errors
surface as ValidationError; the caller maps them to exit codes.
"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from django.core.exceptions import ValidationError

from datasets.services.pipeline_services import load_dataset, prepare_dataset, read_feature_rows
from datasets.services.preprocessing_services import decode_labels, decode_targets
from experiments.services.critical_services import detect_critical
from experiments.services.protocol_services import run_protocol
from experiments.services.report_services import (
    COMPARISON_COLUMNS,
    DIAGNOSTIC_COLUMNS,
    OPTIMAL_COLUMNS,
    TIMING_COLUMNS,
    compare_methods,
    curve_diagnostics,
    optimal_performance,
    timing_table,
)
from experiments.services.sweep_services import sweep
from experiments.services.trial_services import prediction_error
from experiments.services.tuning_services import tune_lambda
from experiments.types import SWEEP_COLUMNS, SweepRecord, TuningResult
from network.selectors.network_selectors import forward
from network.services.network_services import build_network, train_network
from network.services.storage_services import load_model, save_model
from network.types import StoredModel
from runner.services.config_services import build_method, build_methods, config_hash
from runner.services.export_service import ExportService

logger = logging.getLogger(__name__)

TUNE_COLUMNS = ("lambda", "mean_val_err", "n_evaluations")


@dataclass
class JobOutcome:
    dataset: str
    written: list = field(default_factory=list)
    invalid_records: int = 0
    summary: str = ""

    @property
    def ok(self) -> bool:
        return self.invalid_records == 0


def _prepared(config: dict):
    d = load_dataset(config["dataset"], config["schema"])
    return prepare_dataset(d, fractions=config["fractions"], seed=config.get("split_seed", config["seed"]))


def _exporter(config: dict, command: str, dataset: str) -> ExportService:
    return ExportService(
        config["out"],
        command=command,
        dataset=dataset,
        config_hash=config_hash(config),
        seed=config["seed"],
    )


def sweep_filename(dataset: str, label: str) -> str:
    return f"{dataset}_{label}_sweep.csv"


def tune_filename(dataset: str, label: str) -> str:
    return f"{dataset}_{label}_tune.csv"


def _sweep_rows(records: list[SweepRecord]) -> list[list]:
    return [record.as_row() for record in records]


def _tuning_metadata(tuning: TuningResult) -> dict:
    region = tuning.region
    return {
        "m_critical": "absent" if region.absent else region.m_critical,
        "window": f"{region.window[0]}-{region.window[1]}",
        "fallback": region.fallback,
        "non_monotone": region.non_monotone,
        "tuning_m_values": " ".join(str(m) for m in tuning.m_values),
        "lambda_star": tuning.lam_star,
    }


def _write_tuning(exporter: ExportService, dataset: str, label: str, tuning: TuningResult) -> Path:
    return exporter.write_csv(
        tune_filename(dataset, label),
        TUNE_COLUMNS,
        [list(entry) for entry in tuning.errors],
        method=label,
        extra=_tuning_metadata(tuning),
    )


def run_sweep_job(config: dict, *, progress: Optional[Callable[[SweepRecord], None]] = None) -> JobOutcome:
    """
    Full protocol over the configured methods: per-method sweep CSVs, tuning
    reports for auto-tuned methods, the comparison, optimal-performance and
    curve-diagnostics tables, and optionally the timing table and an XLSX
    workbook of the tables.
    """
    d, split = _prepared(config)
    methods = build_methods(config)
    result = run_protocol(
        d,
        split,
        methods,
        config["m_range"],
        config["trials"],
        lambda_grid=config["lambda_grid"],
        base_seed=config["seed"],
        workers=config["workers"],
        failure_budget=config["failure_budget"],
        window_fraction=config["window_fraction"],
        timing=config["timing"],
        progress=progress,
    )

    exporter = _exporter(config, "sweep", d.name)
    outcome = JobOutcome(dataset=d.name)
    with exporter.guard():
        for label, records in result.sweeps.items():
            cfg = result.methods[label]
            exporter.write_csv(
                sweep_filename(d.name, label),
                SWEEP_COLUMNS,
                _sweep_rows(records),
                method=label,
                extra={"lambda": cfg.lam} if cfg.regularized else None,
            )
        for label, records in result.detection_sweeps.items():
            exporter.write_csv(sweep_filename(d.name, label), SWEEP_COLUMNS, _sweep_rows(records), method=label)
        for label, tuning in result.tunings.items():
            _write_tuning(exporter, d.name, label, tuning)

        sheets = {}
        stats = {"confidence": config["confidence"], "equal_var": config["equal_var"]}
        try:
            comparison = compare_methods(result.sweeps, result.methods, **stats)
        except ValidationError as exc:
            logger.warning(f"{d.name}: no comparison table ({exc.message})")
        else:
            exporter.write_csv(f"{d.name}_comparison.csv", COMPARISON_COLUMNS, comparison, extra=stats)
            sheets["comparison"] = (COMPARISON_COLUMNS, comparison)
            optimal = optimal_performance(result.sweeps, result.methods, **stats)
            if optimal:
                exporter.write_csv(f"{d.name}_optimal.csv", OPTIMAL_COLUMNS, optimal, extra=stats)
                sheets["optimal"] = (OPTIMAL_COLUMNS, optimal)

        diagnostics = curve_diagnostics(
            result.sweeps,
            result.methods,
            detection_sweeps=result.detection_sweeps,
            window_fraction=config["window_fraction"],
        )
        if diagnostics:
            exporter.write_csv(f"{d.name}_diagnostics.csv", DIAGNOSTIC_COLUMNS, diagnostics)
            sheets["diagnostics"] = (DIAGNOSTIC_COLUMNS, diagnostics)

        if config.get("timing_m"):
            timing = timing_table(
                d,
                split,
                list(result.methods.values()),
                config["timing_m"],
                config["trials"],
                base_seed=config["seed"],
            )
            exporter.write_csv(f"{d.name}_timing.csv", TIMING_COLUMNS, timing)
            sheets["timing"] = (TIMING_COLUMNS, timing)

        if config.get("xlsx") and sheets:
            exporter.write_xlsx(f"{d.name}_tables.xlsx", sheets)

    outcome.written = list(exporter.written)
    outcome.invalid_records = len(result.invalid_records())
    outcome.summary = (
        f"{d.name}: {len(result.sweeps)} methods over {len(config['m_range'])} hidden sizes, "
        f"{outcome.invalid_records} invalid records"
    )
    return outcome


def run_tune_job(config: dict) -> JobOutcome:
    """
    Critical-region detection on the unregularized counterpart of each
    regularized method, then the lambda grid search inside that region.
    """
    d, split = _prepared(config)
    methods = [cfg for cfg in build_methods(config) if cfg.regularized]
    if not methods:
        raise ValidationError("methods: tune needs at least one regularized method.", code="invalid_config")
    options = {
        "base_seed": config["seed"],
        "workers": config["workers"],
        "failure_budget": config["failure_budget"],
    }

    exporter = _exporter(config, "tune", d.name)
    outcome = JobOutcome(dataset=d.name)
    lines = []
    with exporter.guard():
        detections = {}
        for cfg in methods:
            plain = cfg.unregularized()
            if plain.label not in detections:
                detections[plain.label] = sweep(
                    d, split, plain, config["m_range"], config["trials"], timing=config["timing"], **options
                )
                exporter.write_csv(
                    sweep_filename(d.name, plain.label),
                    SWEEP_COLUMNS,
                    _sweep_rows(detections[plain.label]),
                    method=plain.label,
                )
            region = detect_critical(detections[plain.label], window_fraction=config["window_fraction"])
            tuning = tune_lambda(
                d,
                split,
                cfg,
                region,
                config["lambda_grid"],
                config["trials"],
                m_values=config["m_range"],
                **options,
            )
            _write_tuning(exporter, d.name, cfg.label, tuning)
            where = "absent" if tuning.region.absent else f"m={tuning.region.m_critical}"
            lines.append(
                f"{cfg.label}: critical region {where}, window {tuning.region.window}"
                f"{' (fallback)' if tuning.region.fallback else ''}, lambda*={tuning.lam_star:g}"
            )
            outcome.invalid_records += sum(1 for r in detections[plain.label] if not r.valid)

    outcome.written = list(exporter.written)
    outcome.summary = "; ".join(lines)
    return outcome


def model_filename(dataset: str, label: str, m: int) -> str:
    return f"{dataset}_{label}_m{m}.json"


def run_train_job(config: dict) -> JobOutcome:
    """Train one network and save it with its validation and test errors."""
    d, split = _prepared(config)
    cfg = build_method(config["method"], config["lam"])
    net = build_network(
        input_dim=d.input_dim,
        hidden_dim=config["m"],
        output_dim=d.output_dim,
        activation=cfg.activation,
        init=cfg.init,
        seed=config["seed"],
    )
    trained, _ = train_network(net, d.x[split.train], d.t[split.train], lam=cfg.solve_lambda)
    metrics = {
        "validation_err": prediction_error(d, trained, split.validation),
        "test_err": prediction_error(d, trained, split.test),
    }
    model = StoredModel(
        net=trained,
        method=cfg.label,
        lam=cfg.solve_lambda,
        task=d.task,
        class_labels=d.class_labels,
        transform=d.transform,
        metrics=metrics,
    )
    path = Path(config["out"]) / model_filename(d.name, cfg.label, config["m"])
    save_model(model, path)
    return JobOutcome(
        dataset=d.name,
        written=[path],
        summary=f"{cfg.label} M={config['m']}: test error {metrics['test_err']:.6g}, "
        f"validation error {metrics['validation_err']:.6g}",
    )


def predictions_path(config: dict) -> Path:
    out = Path(config["out"])
    if out.suffix.lower() == ".csv":
        return out
    return out / f"{Path(config['input']).stem}_predictions.csv"


def run_predict_job(config: dict) -> JobOutcome:
    """
    Predict with a saved model: the argmax class label per row for
    classifiers, one ``y<j>`` column per output for regression.
    """
    model = load_model(config["model"])
    if model.transform is None:
        raise ValidationError(f"{config['model']}: the model carries no preprocessing block.", code="invalid_model")
    x = read_feature_rows(config["input"], model.transform, delimiter=config["delimiter"])
    if x.shape[0] and x.shape[1] != model.net.input_dim:
        raise ValidationError(
            f"inputs have {x.shape[1]} columns after preprocessing, the model expects {model.net.input_dim}.",
            code="shape_mismatch",
        )

    if model.task.is_classification:
        headers = ["prediction"]
        if x.shape[0]:
            labels = decode_labels(decode_targets(forward(x, model.net)), model.class_labels)
            rows = [[label] for label in labels]
        else:
            rows = []
    else:
        headers = [f"y{j}" for j in range(model.net.output_dim)]
        rows = forward(x, model.net).tolist() if x.shape[0] else []

    path = predictions_path(config)
    exporter = ExportService(
        path.parent,
        command="predict",
        dataset=Path(config["input"]).name,
        config_hash=config_hash({"model": config["model"], "input": config["input"]}),
        seed=model.net.seed,
    )
    with exporter.guard():
        exporter.write_csv(path.name, headers, rows, method=model.method)
    return JobOutcome(dataset=Path(config["input"]).name, written=[path], summary=f"{len(rows)} predictions")

