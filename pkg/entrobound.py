# entrobound.py
import argparse
import logging
import logging.handlers
import os
import sys
from typing import List, Optional

from entrobound_core.app_config import AppConfig
from entrobound_core.commands.command_handler import CommandHandler
from entrobound_core.errors import EXIT_FAILURE

__version__ = "0.1.0"

main_logger = logging.getLogger("entrobound.main")

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logging(config: AppConfig):
    """Set up logging for the application using the config object.

    Reports go to stdout, so the console handler writes to stderr.
    """
    root_logger = logging.getLogger()
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)

    if not config.log_enabled:
        root_logger.addHandler(logging.NullHandler())
        return

    root_logger.setLevel(logging.DEBUG)
    formatter = logging.Formatter(LOG_FORMAT)

    log_dir = os.path.join(config.BASE_DIR, "logs")
    if not os.path.exists(log_dir):
        try:
            os.makedirs(log_dir)
        except OSError as e:
            sys.stderr.write(f"Error creating log directory {log_dir}: {e}. Logging to project root.\n")
            log_dir = config.BASE_DIR

    try:
        full_log_path = os.path.join(log_dir, config.log_file)
        full_handler = logging.handlers.RotatingFileHandler(
            full_log_path,
            maxBytes=config.log_max_bytes,
            backupCount=config.log_backup_count,
            encoding="utf-8",
        )
        full_handler.setFormatter(formatter)
        full_handler.setLevel(config.log_level_int)
        root_logger.addHandler(full_handler)

        error_log_path = os.path.join(log_dir, config.log_error_file)
        error_handler = logging.handlers.RotatingFileHandler(
            error_log_path,
            maxBytes=config.log_max_bytes,
            backupCount=config.log_backup_count,
            encoding="utf-8",
        )
        error_handler.setFormatter(formatter)
        error_handler.setLevel(config.log_error_level_int)
        root_logger.addHandler(error_handler)

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        console_handler.setLevel(config.console_log_level_int)
        root_logger.addHandler(console_handler)

        base_logger = logging.getLogger("entrobound")
        base_logger.setLevel(config.log_level_int)
        base_logger.info(f"Logging initialized. Full log: {full_log_path}, Error log: {error_log_path}")
    except Exception as e:
        sys.stderr.write(f"Failed to initialize file logging: {e}\n")
        logging.basicConfig(level=config.console_log_level_int, format=LOG_FORMAT, handlers=[logging.StreamHandler(sys.stderr)])
        logging.getLogger("entrobound").error(f"File logging setup failed. Using basic console logging. Error: {e}")


def parse_arguments(handler: CommandHandler, argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command line arguments against the discovered commands."""
    return handler.build_parser().parse_args(argv)


def _config_path(argv: Optional[List[str]]) -> Optional[str]:
    pre = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    return known.config


def main(argv: Optional[List[str]] = None) -> int:
    config_path = _config_path(argv)
    if config_path is not None and not os.path.exists(config_path):
        sys.stderr.write(f"entrobound: config file '{config_path}' not found, using defaults\n")
    config = AppConfig(config_file_path=config_path)
    setup_logging(config)

    try:
        handler = CommandHandler(config)
    except Exception as e:
        main_logger.critical(f"Failed to discover commands: {e}", exc_info=True)
        sys.stderr.write(f"entrobound: failed to start: {e}\n")
        return EXIT_FAILURE

    args = parse_arguments(handler, argv)
    main_logger.debug(f"Parsed arguments: {vars(args)}")
    return handler.dispatch(args)


if __name__ == "__main__":
    sys.exit(main())
