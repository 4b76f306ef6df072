import argparse
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError
from pythonjsonlogger import jsonlogger

from .. import __version__
from .commands import COMMANDS
from .config import Settings, get_settings
from .errors import InvalidParameterError, PerturbationError

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)


def configure_logging(settings: Settings) -> None:
    """Route logs to stderr so stdout carries only the artifact."""
    handler = logging.StreamHandler(sys.stderr)
    if settings.LOG_FORMAT == "json":
        handler.setFormatter(jsonlogger.JsonFormatter('%(asctime)s %(name)s %(levelname)s %(message)s'))
    else:
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
    level = getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO)
    logging.basicConfig(level=level, handlers=[handler], force=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cellkey_dp",
        description="Maximum-entropy cell-key perturbation with exact (epsilon, delta) accounting.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def handle_error(exc: BaseException) -> int:
    """Global error handler: map an exception to an exit code and log it."""
    if isinstance(exc, PerturbationError):
        logger.error(f"{type(exc).__name__}: {exc.detail}")
        return exc.exit_code
    if isinstance(exc, ValidationError):
        logger.error(f"Invalid parameters: {exc}")
        return InvalidParameterError.exit_code
    if isinstance(exc, FileNotFoundError):
        logger.error(f"File not found: {exc.filename}")
        return InvalidParameterError.exit_code
    logger.error(f"Global error handler caught: {str(exc)}", exc_info=exc)
    return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        configure_logging(get_settings())
    except ValidationError as e:
        # invalid settings, default format
        logging.basicConfig(level=logging.INFO, format=LOG_FORMAT, stream=sys.stderr, force=True)
        return handle_error(e)

    logger.debug(f"Running {args.command} with {vars(args)}")
    try:
        return args.handler(args)
    except Exception as e:
        return handle_error(e)
