from argparse import ArgumentParser, Namespace, RawDescriptionHelpFormatter
from typing import Optional, Sequence

from glmn_norm.app import COMMANDS


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise ValueError(value)
    return number


def parse_args(argv: Optional[Sequence[str]] = None) -> Namespace:
    """Parse command line arguments."""
    parser = ArgumentParser(
        prog="glmn-norm",
        description="glmn-norm - Exact scalar products, norms and Gaudin determinants "
        "for gl(m|n) Bethe vectors",
        formatter_class=RawDescriptionHelpFormatter,
        epilog="""
Examples:
  glmn-norm norm-check --config configs/norm-check.json
  glmn-norm scalar-product --config configs/scalar-product.json --json
  glmn-norm solve-bethe --config configs/solve-bethe.json
  glmn-norm verify-all --seed 7 --threads 4
        """,
    )

    parser.add_argument(
        "command",
        choices=COMMANDS,
        help="Subcommand to run",
    )

    parser.add_argument(
        "--config",
        dest="config",
        help="Run config JSON (required for every command except verify-all)",
    )

    parser.add_argument(
        "--json",
        dest="json",
        action="store_true",
        help="Print the report as one JSON document instead of a table",
    )

    parser.add_argument(
        "--threads",
        dest="threads",
        type=_positive,
        default=1,
        help="Worker threads for the partition sums (default: 1)",
    )

    parser.add_argument(
        "--seed",
        dest="seed",
        type=int,
        help="Seed for randomized instances (overrides config and settings)",
    )

    return parser.parse_args(argv)
