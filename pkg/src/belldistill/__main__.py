"""Command-line entry point for belldistill."""

from __future__ import annotations

import sys
from typing import Sequence

import typer

from .cli import EXIT_USAGE, app

# typer ships its own click; take UsageError from the one it raises.
UsageError: type[Exception] = next(
    cls for cls in typer.BadParameter.__mro__ if cls.__name__ == "UsageError"
)


def main(argv: Sequence[str] | None = None) -> None:
    """Invoke the Typer application; usage errors exit with code 1."""
    try:
        code = app(args=list(argv) if argv is not None else None, prog_name="belldistill", standalone_mode=False)
    except UsageError as exc:
        exc.show()  # type: ignore[attr-defined]
        sys.exit(EXIT_USAGE)
    except typer.Abort:
        sys.exit(EXIT_USAGE)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()
