"""Command-line front end: `qdiag run <check> [options]`.

Reports are emitted as text (one line per check plus detail) or as a JSON
array.  Results are cached content-addressed by (check, parameters, code
version); re-running with identical parameters reproduces the stored report
byte for byte.  Exit status is 0 iff every executed check passes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__
from .checks import ALL_ORDER, CheckReport, check_names, run_many
from .errors import UnknownCheck

PARAM_KEYS = ("n", "d", "r", "sign", "variant", "max_block")


def _cache_key(name: str, params: dict) -> str:
    blob = json.dumps({"check": name, "params": params,
                       "version": __version__}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_path(cache_dir: Path, name: str, params: dict) -> Path:
    return cache_dir / f"{_cache_key(name, params)}.json"


def _print_text(report: CheckReport):
    tag = report.status
    params = " ".join(f"{k}={v}" for k, v in sorted(report.params.items()))
    line = f"{tag:4s} {report.check}"
    if params:
        line += f" [{params}]"
    line += f" ({report.seconds:.3f}s)"
    print(line)
    for key, value in report.detail.items():
        text = json.dumps(value) if isinstance(value, (dict, list)) else value
        print(f"     {key}: {text}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdiag",
        description="exact verification suite for the quantum diagonal "
                    "algebra and its Hecke-side counterpart")
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="run one check, or `all`")
    runp.add_argument("check", help="check name; see `qdiag list`")
    runp.add_argument("--n", "--d", dest="n", type=int, default=None,
                      help="dimension of V / number of diagonal letters")
    runp.add_argument("--r", dest="r", type=int, default=None,
                      help="tensor degree")
    runp.add_argument("--sign", choices=("plus", "minus"), default=None)
    runp.add_argument("--variant", choices=("concat", "action-closed"),
                      default=None)
    runp.add_argument("--format", choices=("text", "json"), default="text")
    runp.add_argument("--jobs", type=int, default=1,
                      help="parallel worker processes for independent checks")
    runp.add_argument("--out", type=Path, default=None,
                      help="directory for JSON report and dump files")
    runp.add_argument("--max-block", dest="max_block", type=int, default=None,
                      help="safety bound on weight-block size")
    runp.add_argument("--cache-dir", type=Path,
                      default=Path(".qdiag-cache"))
    runp.add_argument("--no-cache", action="store_true")
    sub.add_parser("list", help="list available checks")
    return parser


def _collect_params(args) -> dict:
    params = {}
    for key in PARAM_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            params[key] = value
    return params


def _tasks_for(args) -> list:
    if args.check == "all":
        return [(name, dict(params)) for name, params in ALL_ORDER]
    if args.check not in check_names():
        raise UnknownCheck(f"unknown check {args.check!r}; try one of "
                           + ", ".join(check_names()))
    params = _collect_params(args)
    if args.check == "conjecture" and "d" not in params and "n" in params:
        params["d"] = params.pop("n")
    return [(args.check, params)]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "list":
        for name in check_names():
            print(name)
        return 0
    try:
        tasks = _tasks_for(args)
    except UnknownCheck as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    reports = []
    pending = []
    slots = {}
    use_cache = not args.no_cache
    for idx, (name, params) in enumerate(tasks):
        cached = None
        if use_cache:
            path = _cache_path(args.cache_dir, name, params)
            if path.exists():
                cached = CheckReport.from_json(json.loads(path.read_text()))
        if cached is not None:
            slots[idx] = cached
        else:
            pending.append((idx, name, params))

    fresh = run_many([(name, params) for _, name, params in pending],
                     jobs=args.jobs)
    for (idx, name, params), report in zip(pending, fresh):
        slots[idx] = report
        if use_cache:
            args.cache_dir.mkdir(parents=True, exist_ok=True)
            path = _cache_path(args.cache_dir, name, params)
            path.write_text(json.dumps(report.to_json(), indent=1))
    reports = [slots[i] for i in range(len(tasks))]

    payload = [r.to_json() for r in reports]
    if args.format == "json":
        print(json.dumps(payload, indent=1))
    else:
        for report in reports:
            _print_text(report)
        failed = sum(1 for r in reports if r.status == "FAIL")
        print(f"== {len(reports)} check(s), {failed} failure(s)")
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "report.json").write_text(json.dumps(payload, indent=1))
        for report in reports:
            stem = report.check
            if report.params:
                stem += "." + "-".join(f"{k}{v}" for k, v in
                                       sorted(report.params.items()))
            for name, blob in report.artifacts.items():
                path = args.out / f"{stem}.{name}.json"
                path.write_text(json.dumps(blob, indent=1))
    return 1 if any(r.status == "FAIL" for r in reports) else 0


if __name__ == "__main__":
    sys.exit(main())
