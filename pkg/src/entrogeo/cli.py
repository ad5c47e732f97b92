"""Command-line front end.

Four subcommands (measures, geometry, quantum, sweep) that read request
documents from disk, execute them, and write a report to stdout or --output.
By default execution happens in process; pass ``--server URL`` to send the
same request to a running service instead.  Exit codes: 0 success,
2 validation error, 3 precondition error, 4 numeric fault.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import httpx
import pydantic

from .errors import EXIT_CODES, EntrogeoError, ValidationError
from .service import handlers
from .service.models import (
    GeometryRequest,
    MeasuresRequest,
    QuantumRequest,
    SettingConfigModel,
    StateSpecModel,
    SweepRequest,
)
from .version import __version__

_STATUS_TO_EXIT = {400: 2, 422: 2, 409: 3}


def _http_client(server: str) -> httpx.Client:
    # tests monkeypatch this to splice in an in-memory ASGI transport
    return httpx.Client(base_url=server, timeout=300.0)


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except FileNotFoundError:
        raise ValidationError("FILE_NOT_FOUND", f"no such file: {path}")
    except OSError as exc:
        raise ValidationError("UNREADABLE_INPUT", f"cannot read {path}: {exc}")


def _read_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError("MALFORMED_INPUT", f"{path} is not valid JSON: {exc}")


def _load_source(path: str) -> dict:
    """Input file -> the distribution/samples part of a request body."""
    if path.endswith(".csv"):
        from .distributions import parse_samples_csv

        names, records = parse_samples_csv(_read_text(path))
        return {"samples": {"variables": names, "records": [list(r) for r in records]}}
    doc = _read_json(path)
    if isinstance(doc, dict) and "probabilities" in doc:
        return {"distribution": doc}
    if isinstance(doc, dict) and "records" in doc:
        return {"samples": doc}
    raise ValidationError(
        "MALFORMED_INPUT",
        f"{path} has neither 'probabilities' (distribution) nor 'records' (samples)",
    )


def _split_names(text: str | None) -> list[str] | None:
    if text is None:
        return None
    names = [part.strip() for part in text.split(",") if part.strip()]
    if not names:
        raise ValidationError("MALFORMED_INPUT", "--subset must list at least one name")
    return names


def _split_indices(text: str | None) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValidationError("MALFORMED_INPUT", "--subset must be comma-separated integers")


def _setting_config(args) -> SettingConfigModel:
    return SettingConfigModel(
        scheme=args.scheme,
        count=args.settings,
        seed=args.seed,
        n_theta=args.n_theta,
        n_phi=args.n_phi,
    )


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _emit_json(payload: dict, output: str | None) -> None:
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", output)


def _post(server: str, route: str, body: dict, output: str | None, *, csv: bool = False) -> int:
    with _http_client(server) as client:
        try:
            response = client.post(route, json=body)
        except httpx.HTTPError as exc:
            sys.stderr.write(f"cannot reach {server}: {exc}\n")
            return 1
    if response.status_code == 200:
        if csv:
            _emit(response.text, output)
        else:
            _emit_json(response.json(), output)
        return 0
    sys.stderr.write(response.text.rstrip() + "\n")
    return _STATUS_TO_EXIT.get(response.status_code, 4)


def _run(args, route: str, request, runner, *, csv: bool = False) -> int:
    body = request.model_dump(mode="json")
    if args.server:
        return _post(args.server, route, body, args.output, csv=csv)
    result = runner(request)
    if csv:
        _emit(result, args.output)
    else:
        _emit_json(result.model_dump(mode="json"), args.output)
    return 0


def cmd_measures(args) -> int:
    request = MeasuresRequest(
        **_load_source(args.input),
        subset=_split_names(args.subset),
        tolerance=args.tolerance,
    )
    return _run(args, "/measures", request, handlers.run_measures)


def cmd_geometry(args) -> int:
    request = GeometryRequest(
        **_load_source(args.input),
        subset=_split_names(args.subset),
        tolerance=args.tolerance,
        require_volumes=args.volume,
        surface_aggregate=args.aggregate,
    )
    return _run(args, "/geometry", request, handlers.run_geometry)


def cmd_quantum(args) -> int:
    request = QuantumRequest(
        state=StateSpecModel(**_read_json(args.input)),
        settings=_setting_config(args),
        subset=_split_indices(args.subset),
        surface_aggregate=args.aggregate,
    )
    return _run(args, "/quantum", request, handlers.run_quantum)


def cmd_sweep(args) -> int:
    request = SweepRequest(
        qubits=args.qubits,
        alpha_start=args.alpha_start,
        alpha_stop=args.alpha_stop,
        steps=args.steps,
        settings=_setting_config(args),
    )
    return _run(args, "/sweep", request, handlers.run_sweep, csv=True)


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--output", help="write the report here instead of stdout")
    parser.add_argument("--server", help="POST to a running service at this URL")


def _add_settings_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--settings", type=int, default=1000, help="ensemble size (default 1000)")
    parser.add_argument("--seed", type=int, default=0, help="ensemble RNG seed (default 0)")
    parser.add_argument(
        "--scheme",
        choices=("uniform_sphere", "grid"),
        default="uniform_sphere",
        help="how measurement settings are generated",
    )
    parser.add_argument("--n-theta", type=int, help="polar grid resolution (grid scheme)")
    parser.add_argument("--n-phi", type=int, help="azimuthal grid resolution (grid scheme)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrogeo",
        description="entropy geometry of discrete joint distributions and qubit measurements",
    )
    parser.add_argument("--version", action="version", version=f"entrogeo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", help="entropy and mutual-information report")
    p.add_argument("--input", required=True, help="distribution JSON or sample CSV/JSON")
    p.add_argument("--subset", help="comma-separated variable names")
    p.add_argument("--tolerance", type=float, help="normalization tolerance override")
    _add_output_flags(p)
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("geometry", help="distances, areas, volumes, surface, reactivity")
    p.add_argument("--input", required=True, help="distribution JSON or sample CSV/JSON")
    p.add_argument("--subset", help="comma-separated variable names")
    p.add_argument("--tolerance", type=float, help="normalization tolerance override")
    p.add_argument("--volume", action="store_true", help="fail unless quadruple volumes exist")
    p.add_argument("--aggregate", choices=("sum", "mean"), default="sum")
    _add_output_flags(p)
    p.set_defaults(func=cmd_geometry)

    p = sub.add_parser("quantum", help="measurement-averaged surface, volume, reactivity")
    p.add_argument("--input", required=True, help="state spec JSON")
    p.add_argument("--subset", help="comma-separated qubit indices")
    p.add_argument("--aggregate", choices=("sum", "mean"), default="sum")
    _add_settings_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_quantum)

    p = sub.add_parser("sweep", help="reactivity along cos(a)|0..0> + sin(a)|1..1>")
    p.add_argument("--qubits", type=int, default=3)
    p.add_argument("--alpha-start", type=float, default=0.0)
    p.add_argument("--alpha-stop", type=float, default=math.pi / 4.0)
    p.add_argument("--steps", type=int, default=9)
    _add_settings_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except pydantic.ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(p) for p in first.get("loc", ())) or "request"
        payload = {
            "error": {
                "code": "INVALID_REQUEST",
                "category": "validation",
                "message": f"{where}: {first.get('msg', 'invalid request')}",
            }
        }
        sys.stderr.write(json.dumps(payload) + "\n")
        return 2
    except EntrogeoError as exc:
        sys.stderr.write(json.dumps(exc.to_payload()) + "\n")
        return EXIT_CODES.get(exc.category, 4)


if __name__ == "__main__":
    sys.exit(main())
