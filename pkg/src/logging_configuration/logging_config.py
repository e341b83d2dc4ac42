import logging
import os
from logging.handlers import RotatingFileHandler
from pathlib import Path

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# marks handlers installed here so a second call replaces them
_HANDLER_TAG = "_galois_toolkit_handler"


def setup_logging(log_file=None, max_bytes=5*1024*1024, backup_count=3, console_level=logging.INFO):
    """
    Configures the logging system.

    Args:
        log_file (str): Path to the log file (default: logs/application.log).
        max_bytes (int): Maximum size of a log file before rotation (default: 5 MB).
        backup_count (int): Number of backup files to keep (default: 3).
        console_level (int | str): Level of the console handler; the file handler logs DEBUG.

    Calling it again replaces the handlers of the previous call.
    """
    if backup_count is not None and backup_count < 0:
        raise ValueError("Invalid backup count")

    if max_bytes is not None and (not isinstance(max_bytes, int) or max_bytes < 0):
        raise ValueError("Invalid maximum log file size")

    if isinstance(console_level, str):
        level_name = console_level.upper()
        console_level = logging.getLevelName(level_name)
        if not isinstance(console_level, int):
            raise ValueError(f"Invalid console log level: {level_name}")

    log_file = log_file or Path.cwd().joinpath('logs/application.log')
    if not os.path.isabs(log_file):
        log_file = os.path.abspath(log_file)
    os.makedirs(os.path.dirname(log_file), exist_ok=True)

    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG)

    for handler in list(logger.handlers):
        if getattr(handler, _HANDLER_TAG, False):
            logger.removeHandler(handler)
            handler.close()

    c_handler = logging.StreamHandler()
    f_handler = RotatingFileHandler(log_file, maxBytes=max_bytes, backupCount=backup_count)

    c_handler.setLevel(console_level)
    f_handler.setLevel(logging.DEBUG)

    formatter = logging.Formatter(LOG_FORMAT)
    for handler in (c_handler, f_handler):
        handler.setFormatter(formatter)
        setattr(handler, _HANDLER_TAG, True)
        logger.addHandler(handler)
