import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from . import commands  # registers the command handlers
from .data.artifacts import ArtifactKind, ArtifactStore
from .errors import ArtifactError, ConfigError, ZonocalcError
from .model.types import CommandName
from .utils.json_parser import config_parser
from .utils.utils import env_log_level

logger = logging.getLogger("Main")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zonocalc",
        description="Exact box splines, partition functions and their inversion formulas.",
    )
    parser.add_argument("command", choices=[c.value for c in CommandName], help="what to compute or verify")
    parser.add_argument("--config", required=True, help="run configuration (a single JSON document)")
    parser.add_argument("--out", default=None, help="output directory (overrides output_dir of the config)")
    parser.add_argument("--emit-grid", type=int, default=None, metavar="RES",
                        help="also write CSV samplings with RES points per unit")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    # Configure root logger
    logging.basicConfig(level=env_log_level(), format='%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    args = build_parser().parse_args(argv)
    if args.emit_grid is not None and args.emit_grid < 1:
        logger.error("--emit-grid needs a positive resolution")
        return 2

    store = None
    try:
        config = config_parser.parse_file(args.config)
        if config.command is not None and config.command.value != args.command:
            logger.warning(f"config names command '{config.command.value}', running '{args.command}'")
        config = config.model_copy(update={"command": CommandName(args.command)})
        store = ArtifactStore(args.out or config.output_dir)
        result = commands.run(config, store, args.emit_grid)
    except ZonocalcError as e:
        logger.error(f"{type(e).__name__}: {e}")
        _write_error(store or _fallback_store(args.out), args.command, e)
        return e.exit_code
    except (ValueError, ValidationError) as e:
        # pydantic and value errors raised past the parser
        error = ConfigError(f"{type(e).__name__}: {e}")
        logger.error(f"ConfigError: {error}")
        _write_error(store or _fallback_store(args.out), args.command, error)
        return error.exit_code

    for path in result.artifacts:
        logger.debug(f"artifact {path}")
    logger.info(result.message)
    print(result.message)
    return 0 if result.verdict else 1


def _fallback_store(out: Optional[str]) -> Optional[ArtifactStore]:
    if not out:
        return None
    try:
        return ArtifactStore(out)
    except ArtifactError:
        return None


def _write_error(store: Optional[ArtifactStore], command: str, error: ZonocalcError) -> None:
    if store is None:
        return
    try:
        store.write_json(ArtifactKind.SUMMARY, f"{command}-error",
                         {"command": command, "error": type(error).__name__, "message": str(error),
                          "exit_code": error.exit_code})
    except ArtifactError:
        logger.exception("could not record the error artifact")


def run_cli() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run_cli()
