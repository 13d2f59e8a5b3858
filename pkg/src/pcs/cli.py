"""Command-line entry point.

    pcs --query 'RNAi, "RNA interference"' [flags]   run a query end to end
    pcs serve [--host H] [--port P]                  start the HTTP service
    pcs cache list|clear|path                        manage the response cache

Every flag has a PCS_-prefixed environment-variable mirror; flags win.
Errors map to distinct exit codes (see the error classes' exit_code values,
documented in the README).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .client import ClientConfig, DIALECTS, PatentSearchClient
from .errors import NoPositivePeakError, PcsError
from .pipeline import run_pipeline
from .report import render_report_json, render_report_table
from .spectrum import MODES


def _env(name: str, fallback=None):
    return os.environ.get(f"PCS_{name}", fallback)


def _env_flag(name: str) -> bool:
    return str(_env(name, "")).lower() in ("1", "true", "yes")


def _run_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcs",
        description="Find the landmark prior patent behind a patent-search query.",
    )
    parser.add_argument("--query", default=_env("QUERY"), help="comma-separated keywords and \"quoted phrases\"")
    parser.add_argument("--fixture", default=_env("FIXTURE"), help="run against a recorded fixture instead of the API")
    parser.add_argument("--mode", choices=MODES, default=_env("MODE", "pcs"))
    parser.add_argument("--base-url", default=_env("BASE_URL"))
    parser.add_argument("--dialect", choices=sorted(DIALECTS), default=_env("DIALECT"))
    parser.add_argument("--config", default=None, help="JSON config file (default ~/.config/pcs/config.json)")
    parser.add_argument("--cache-dir", default=_env("CACHE_DIR"))
    parser.add_argument("--no-cache", action="store_true", default=_env_flag("NO_CACHE"))
    parser.add_argument("--output", default=_env("OUTPUT"), help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("report", "table"), default=_env("FORMAT", "report"))
    parser.add_argument("--deterministic", action="store_true", default=_env_flag("DETERMINISTIC"),
                        help="omit timestamps and timings so identical runs are byte-identical")
    parser.add_argument("--top-k", type=int, default=int(_env("TOP_K", 5)), help="runner-up peak years to report")
    parser.add_argument("--version", action="version", version=f"pcs {__version__}")
    return parser


def _config_from_args(args: argparse.Namespace) -> ClientConfig:
    return ClientConfig.from_env(
        config_path=getattr(args, "config", None),
        dialect=args.dialect,
        base_url=args.base_url,
        cache_dir=Path(args.cache_dir) if args.cache_dir else None,
        no_cache=True if args.no_cache else None,
    )


def _cmd_run(argv: list[str]) -> int:
    args = _run_parser().parse_args(argv)
    if args.query is None and not args.fixture:
        print("pcs: --query is required unless --fixture is given", file=sys.stderr)
        return 2
    try:
        config = _config_from_args(args)
    except ValueError as exc:
        print(f"pcs: configuration error: {exc}", file=sys.stderr)
        return 2
    try:
        client = PatentSearchClient(config)
        report = run_pipeline(
            args.query,
            mode=args.mode,
            client=client,
            fixture=args.fixture,
            top_k=args.top_k,
        )
    except PcsError as exc:
        print(f"pcs: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code

    if args.format == "table":
        rendered = render_report_table(report)
    else:
        rendered = render_report_json(report, deterministic=args.deterministic)
    if args.output:
        Path(args.output).write_text(rendered, encoding="utf-8")
    else:
        sys.stdout.write(rendered)

    if report.landmark is None:
        print("pcs: NoPositivePeakError: no positively scored year", file=sys.stderr)
        return NoPositivePeakError.exit_code
    return 0


def _cmd_serve(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="pcs serve", description="Serve the HTTP API and web UI.")
    parser.add_argument("--host", default=_env("HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(_env("PORT", 8040)))
    parser.add_argument("--base-url", default=_env("BASE_URL"))
    parser.add_argument("--dialect", choices=sorted(DIALECTS), default=_env("DIALECT"))
    parser.add_argument("--config", default=None, help="JSON config file (default ~/.config/pcs/config.json)")
    parser.add_argument("--cache-dir", default=_env("CACHE_DIR"))
    parser.add_argument("--no-cache", action="store_true", default=_env_flag("NO_CACHE"))
    args = parser.parse_args(argv)

    import uvicorn

    from .service import create_app

    try:
        config = _config_from_args(args)
    except ValueError as exc:
        print(f"pcs: configuration error: {exc}", file=sys.stderr)
        return 2
    app = create_app(config=config)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _cmd_cache(argv: list[str]) -> int:
    parser = argparse.ArgumentParser(prog="pcs cache", description="Inspect or clear the response cache.")
    parser.add_argument("action", choices=("list", "clear", "path"))
    parser.add_argument("--cache-dir", default=_env("CACHE_DIR"))
    args = parser.parse_args(argv)

    config = ClientConfig.from_env(cache_dir=Path(args.cache_dir) if args.cache_dir else None)
    cache = PatentSearchClient(config).cache
    if args.action == "path":
        print(cache.directory)
        return 0
    if args.action == "clear":
        removed = cache.clear()
        print(f"removed {removed} entries from {cache.directory}")
        return 0
    entries = cache.entries()
    if not entries:
        print(f"cache {cache.directory} is empty")
        return 0
    for key, path in entries:
        print(f"{key}  {path.stat().st_size:>9} bytes")
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "serve":
        return _cmd_serve(argv[1:])
    if argv and argv[0] == "cache":
        return _cmd_cache(argv[1:])
    return _cmd_run(argv)


if __name__ == "__main__":
    raise SystemExit(main())
