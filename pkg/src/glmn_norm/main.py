#!/usr/bin/env python3
"""glmn-norm - exact checks of the Gaudin-determinant norm formula for gl(m|n)."""
import sys
from logging import Logger
from typing import Optional, Sequence

from glmn_norm.app import GlmnNormApp
from glmn_norm.config.config import Config
from glmn_norm.reports.schema import report_to_json
from glmn_norm.ui.report_renderer import ReportRenderer
from glmn_norm.utils.exceptions import CheckFailed, ConfigError
from glmn_norm.utils.logger import get_logger
from glmn_norm.utils.parse_args import parse_args

EXIT_PASS = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_INTERNAL_ERROR = 3


def run(argv: Optional[Sequence[str]], logger: Logger) -> None:
    args = parse_args(argv)
    config = Config(logger=logger, run_config_path=args.config)

    app = GlmnNormApp(logger=logger, config=config, threads=args.threads, seed=args.seed)
    report = app.run(args.command)

    if args.json:
        print(report_to_json(report))
    else:
        ReportRenderer(logger, config).print(report)

    if not report.passed:
        names = ", ".join(check.name for check in report.failures())
        raise CheckFailed(f"{args.command}: failed checks: {names}")


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Main entry point for the glmn-norm command line."""
    logger = get_logger()

    try:
        run(argv, logger)

    except CheckFailed as e:
        logger.error(str(e))
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_CHECK_FAILED)

    except ConfigError as e:
        # Log the full error for debugging
        logger.error(f"Configuration error: {e}", exc_info=True)
        # Show clean error message to user
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(EXIT_CONFIG_ERROR)

    except Exception as e:
        # Log unexpected errors with full stack trace
        logger.error(f"Unexpected error: {e}", exc_info=True)
        print(
            f"Unexpected error occurred. Check logs for details: {e}", file=sys.stderr
        )
        sys.exit(EXIT_INTERNAL_ERROR)

    sys.exit(EXIT_PASS)


if __name__ == "__main__":
    main()
