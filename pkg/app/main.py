import sys
import time
from typing import List, Optional

from app.cli.commands import dispatch
from app.cli.error_handler import error_handler
from app.cli.parser import parse_command
from app.config import settings
from app.utils.logger import logger, set_log_level


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one command and return its exit code.

    Exit codes: 0 pass, 1 identity or series mismatch, 2 usage,
    3 infeasible enumeration, 4 numeric-domain failure.
    """
    try:
        config = parse_command(argv)
    except SystemExit as e:
        # argparse reports bad selectors and --help this way
        return int(e.code or 0)
    except Exception as exc:
        return error_handler(exc, "arguments")

    if config.log_level:
        set_log_level(config.log_level)

    logger.debug(f"{settings.APP_NAME}: {config.subcommand} {config.model_dump(exclude_none=True)}")
    start_time = time.time()
    try:
        exit_code = dispatch(config)
    except Exception as exc:
        return error_handler(exc, config.subcommand)

    logger.info(f"{config.subcommand} finished in {time.time() - start_time:.3f}s with exit code {exit_code}")
    return exit_code


# Run directly: python -m app.main ...
if __name__ == "__main__":
    sys.exit(main())
