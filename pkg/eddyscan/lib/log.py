"""Logging for Eddyscan

Description:
------------

All modules log through `logging.getLogger(__name__)`. The command line tool
calls :func:`setup` once, which routes the `eddyscan` logger to standard error
through click so that log lines never end up in reports or tables written to
standard output.
"""

# Standard library imports
import logging

# Third party imports
import click


class ClickHandler(logging.Handler):
    """Write log records to standard error using click.echo"""

    def emit(self, record: logging.LogRecord) -> None:
        try:
            click.echo(self.format(record), err=True)
        except Exception:
            self.handleError(record)


def setup(verbose: bool = False, debug: bool = False) -> logging.Logger:
    """Set up the eddyscan logger

    Calling setup more than once replaces the handler instead of adding a new one.

    Args:
        verbose:  Log INFO messages, otherwise only warnings and errors.
        debug:    Log DEBUG messages, including each rejected candidate.

    Returns:
        The package logger.
    """
    logger = logging.getLogger("eddyscan")
    for handler in [h for h in logger.handlers if isinstance(h, ClickHandler)]:
        logger.removeHandler(handler)

    handler = ClickHandler()
    handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING)
    logger.propagate = False
    return logger
