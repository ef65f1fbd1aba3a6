"""
Utility functions for run logging
"""
import logging

from .models import RunLog

logger = logging.getLogger(__name__)


def log_run(command, status, description="", *, dataset=None, config_hash=None, seed=None, output_dir=None):
    """
    Record a command run in the RunLog table.

    Args:
        command: Management command name ('sweep', 'tune', 'train', ...)
        status: 'STARTED', 'SUCCESS', 'FAILED' or 'QUEUED'
        description: Human-readable summary
        dataset: Dataset name (optional)
        config_hash: sha256 of the resolved config (optional)
        seed: Base seed of the run (optional)
        output_dir: Where the results were written (optional)

    Returns:
        RunLog instance, or None when the write failed
    """
    try:
        return RunLog.objects.create(
            command=command,
            status=status.upper(),
            dataset=dataset,
            config_hash=config_hash,
            seed=seed,
            output_dir=str(output_dir) if output_dir else None,
            description=description,
        )
    except Exception:
        # A missing audit row must never fail an experiment run.
        logger.exception("Error logging run")
        return None
