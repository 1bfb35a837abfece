# app/main.py
import sys
from typing import Optional, Sequence

from loguru import logger

from .api.cli import dispatch, parse_config
from .config.logging_config import setup_logging
from .config.setting import settings, validate_settings
from .models.errors import ConfigError, ErrorResponse, LifetimeFlowError


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one subcommand. Exit codes: 0 success, 1 invalid input,
    2 solver failure or LP / closed-form inconsistency.
    """
    setup_logging()
    argv = list(sys.argv[1:] if argv is None else argv)

    try:
        try:
            validate_settings()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        config = parse_config(argv)
        logger.info(f"Starting {settings.TITLE} {settings.VERSION}: {config.subcommand.value}")
        written = dispatch(config)
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)
    except LifetimeFlowError as exc:
        return _report(exc)
    except Exception as exc:
        if settings.DEBUG:
            logger.exception("Unexpected failure")
        return _report(exc)

    for path in written:
        print(path)
    logger.info(f"Run complete, {len(written)} files written")
    return 0


def _report(exc: Exception) -> int:
    response = ErrorResponse.from_exception(exc)
    logger.error(f"{response.error_code}: {response.error}")
    print(f"error: {response.error}", file=sys.stderr)
    return response.exit_code


if __name__ == "__main__":
    sys.exit(main())
