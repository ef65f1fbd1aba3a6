import logging

from celery import shared_task

from runner.services.config_services import config_hash
from runner.services.job_services import run_sweep_job
from runner.utils import log_run

logger = logging.getLogger(__name__)


@shared_task(bind=True, max_retries=0)
def run_sweep_task(self, config):
    """
    Run a full sweep on a worker.

    Args:
        config: Validated experiment config (plain JSON data, see config_services)

    Returns:
        dict with the written paths and the number of invalid records
    """
    digest = config_hash(config)
    # Celery prefork workers are daemonic and cannot start process pools.
    if config.get("workers", 1) != 1:
        logger.warning(f"Queued sweep {digest[:12]} asked for {config['workers']} workers, running with 1")
        config = {**config, "workers": 1}
    try:
        outcome = run_sweep_job(config)
    except Exception as e:
        logger.error(f"Queued sweep {digest[:12]} failed: {str(e)}")
        log_run("sweep", "FAILED", str(e), config_hash=digest, seed=config["seed"], output_dir=config["out"])
        raise

    log_run(
        "sweep",
        "SUCCESS" if outcome.ok else "FAILED",
        outcome.summary,
        dataset=outcome.dataset,
        config_hash=digest,
        seed=config["seed"],
        output_dir=config["out"],
    )
    logger.info(f"Queued sweep {digest[:12]} finished: {outcome.summary}")
    return {"written": [str(path) for path in outcome.written], "invalid_records": outcome.invalid_records}


def submit_sweep(config):
    """
    Queue a sweep on Celery. Returns the AsyncResult, or None when no broker
    was reachable and the sweep ran in this process instead (its outcome is
    then in the second element).
    """
    try:
        return run_sweep_task.delay(config), None
    except Exception:
        # Broker not available: run synchronously so the sweep is not lost.
        logger.exception("Error queuing sweep task, running it in-process")
        return None, run_sweep_job(config)
