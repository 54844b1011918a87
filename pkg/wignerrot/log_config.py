# coding=utf-8
#
# wigner-rotation - numerical checks of the Wigner rotation
#
# SPDX-License-Identifier: GPL-2.0-or-later
import logging
from pathlib import Path

LOGGER_NAME = 'wigner-rotation'
LOG_FORMAT = '%(asctime)s %(name)s %(message)s'


def init_logs(
        path=None,
        format_=LOG_FORMAT,
        level="WARNING",
        truncate_file=False,
        name=LOGGER_NAME,
):
    """
    Attach one handler to the package logger.

    Without `path` the log goes to standard error.
    """
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        if truncate_file:
            with open(path, "w"):
                pass
        log_handler = logging.FileHandler(path, encoding='utf-8')
    else:
        log_handler = logging.StreamHandler()
    log_formatter = logging.Formatter(format_)
    log_handler.setFormatter(log_formatter)

    log = logging.getLogger(name)
    log.addHandler(log_handler)
    log.propagate = False
    try:
        # if loglevel is unknown just use `DEBUG`
        log_level = level.upper() if isinstance(level, str) else level
        log.setLevel(log_level)
    except (ValueError, TypeError):
        log_level = "DEBUG"
        log.setLevel(log_level)

    return log, log_handler, log_level, path, log_formatter
