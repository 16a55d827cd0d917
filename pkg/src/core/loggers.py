"""Centralized logging for the engine and the command line."""

from logging import FileHandler, Formatter, Handler, StreamHandler, getLogger


def setup_logging(logger_settings: dict[str, str]) -> None:
    """A function to set up the logging. This is centralized to ensure that the logging
    is easily swappable and consistent across the engine and the command line.

    Reports go to stdout, so log records are written to LOGGING_FILE when it is set
    and to stderr otherwise. Calling this twice replaces the handlers instead of
    stacking them.

    Args:
        logger_settings: A dictionary containing the logger settings.

    """
    formatter = Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
    for logger_name in (
        logger_settings["LOGGER_ENGINE_NAME"],
        logger_settings["LOGGER_CLI_NAME"],
    ):
        logger = getLogger(logger_name)
        logger.setLevel(logger_settings["LOG_LEVEL"])
        handler: Handler
        if logger_settings.get("LOGGING_FILE"):
            handler = FileHandler(logger_settings["LOGGING_FILE"])
        else:
            handler = StreamHandler()
        handler.setFormatter(formatter)
        logger.handlers.clear()
        logger.addHandler(handler)
