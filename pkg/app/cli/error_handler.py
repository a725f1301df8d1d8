import json
import sys
import traceback

from pydantic import ValidationError

from app.core.exceptions import InfeasibleEnumerationError, SimsunError
from app.utils.logger import logger


def error_handler(exc: Exception, command: str = "") -> int:
    """Global error handler: log, write a JSON diagnostic to stderr, return the exit code."""
    error_response = {"detail": "Internal error"}
    exit_code = 1

    # Get the exception class name for logging
    error_class = exc.__class__.__name__
    location = command or "command"

    if isinstance(exc, ValidationError):
        error_response = {
            "detail": "Validation error",
            "errors": json.loads(exc.json()),
        }
        exit_code = 2
        logger.warning(f"Validation error in {location}: {exc.errors()}")

    elif isinstance(exc, InfeasibleEnumerationError):
        error_response = {"detail": exc.detail, "n": exc.n, "cap": exc.cap}
        exit_code = exc.exit_code
        logger.warning(f"Infeasible enumeration in {location}: {exc.detail}")

    elif isinstance(exc, SimsunError):
        error_response = {"detail": exc.detail}
        exit_code = exc.exit_code
        logger.warning(f"{error_class} in {location}: {exc.detail}")

    else:
        # Handle other exceptions
        logger.error(f"Unhandled exception in {location}: {error_class} - {str(exc)}")
        logger.error(traceback.format_exc())

    error_response["error"] = error_class
    error_response["exit_code"] = exit_code
    sys.stderr.write(json.dumps(error_response) + "\n")
    return exit_code
