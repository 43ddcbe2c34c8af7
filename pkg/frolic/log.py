import logging
import os
import sys


def get_log_level():
    FROLIC_LOG_LEVEL = os.getenv("FROLIC_LOG_LEVEL", "INFO").upper()
    return getattr(logging, FROLIC_LOG_LEVEL, logging.INFO)


_handler = logging.StreamHandler(stream=sys.stderr)
_handler.setFormatter(logging.Formatter("%(levelname)s:%(name)s:%(message)s"))

_root = logging.getLogger("frolic")
if not _root.handlers:
    _root.addHandler(_handler)
_root.setLevel(get_log_level())


def get_logger(name: str) -> logging.Logger:
    """
    Returns a logger below the ``frolic`` namespace.

    Output goes to stderr so that stdout stays reserved for command results.

    :param name: Usually the calling module's ``__name__``.
    :return: The configured logger.
    """
    if not name.startswith("frolic"):
        name = f"frolic.{name}"
    return logging.getLogger(name)
