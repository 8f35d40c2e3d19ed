"""
Utility functions for run logging.
"""
import logging

from .models import LogType, RunLog

logger = logging.getLogger(__name__)

_LEVELS = {
    LogType.INFO: logging.INFO,
    LogType.SUCCESS: logging.INFO,
    LogType.WARNING: logging.WARNING,
    LogType.ERROR: logging.ERROR,
}


def create_log(run, message, log_type=LogType.INFO):
    """
    Create a log entry for a run and echo it to the module logger.

    Args:
        run: ExperimentRun instance, or None to only log.
        message: Log message string.
        log_type: LogType enum value (INFO, SUCCESS, ERROR, WARNING).

    Returns:
        RunLog instance, or None without a run.
    """
    logger.log(_LEVELS.get(log_type, logging.INFO), message)
    if run is None:
        return None
    return RunLog.objects.create(run=run, message=message, log_type=log_type)
