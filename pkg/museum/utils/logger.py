"""
Structured logging configuration for the engine.
"""
import logging
import logging.handlers
import os

LOGGER_NAME = 'museum'


def configure_logging(config, verbose=False):
    """
    Configure the package logger for all commands.

    Standard output carries JSON results only, so the console handler
    writes to standard error.

    Args:
        config: EngineConfig with log_level and log_file
        verbose: Force DEBUG level

    Returns:
        logging.Logger: the configured package logger
    """
    logger = logging.getLogger(LOGGER_NAME)

    # Remove handlers from an earlier engine in the same process
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if config.log_file:
        log_dir = os.path.dirname(os.path.abspath(config.log_file))
        os.makedirs(log_dir, exist_ok=True)

        # File handler (rotates at 10MB, keeps 10 backups)
        file_handler = logging.handlers.RotatingFileHandler(
            config.log_file,
            maxBytes=10485760,
            backupCount=10
        )
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    log_level = logging.DEBUG if verbose else logging.getLevelName(config.log_level.upper())
    if not isinstance(log_level, int):
        log_level = logging.WARNING

    logger.setLevel(log_level)
    logger.propagate = False

    logger.debug('Logging configured')

    return logger
