"""Request execution, shared by the HTTP endpoints and the in-process CLI.

Each handler takes a validated request model and returns a response model
(or, for sweeps, a CSV string).  Domain failures surface as EntrogeoError;
the transport layer maps them to status codes or exit codes.
"""

from __future__ import annotations

import numpy as np

from .. import quantum
from ..distributions import NORMALIZATION_ATOL, JointDistribution
from ..errors import ValidationError
from ..reports import (
    clamp_nonneg,
    encode_reactivity,
    geometry_report,
    measures_report,
    quantum_report,
    report_meta,
    sweep_csv,
)
from .models import (
    GeometryReportModel,
    GeometryRequest,
    MeasuresReportModel,
    MeasuresRequest,
    QuantumReportModel,
    QuantumRequest,
    SettingConfigModel,
    StateSpecModel,
    SweepRequest,
)

#: Amplitude lists longer than this are elided from report meta.
MAX_ECHOED_AMPLITUDES = 16


def _distribution_from_request(req) -> JointDistribution:
    atol = req.tolerance if req.tolerance is not None else NORMALIZATION_ATOL
    if req.distribution is not None:
        return JointDistribution.from_json_dict(req.distribution.model_dump(), atol=atol)
    records = np.asarray(req.samples.records, dtype=np.int64)
    if records.ndim != 2:
        raise ValidationError("SHAPE_MISMATCH", "sample records must all have the same length")
    if records.min() < 0:
        raise ValidationError("OUT_OF_RANGE_OUTCOME", "outcome indices must be nonnegative")
    cards = records.max(axis=0) + 1
    variables = [(name, int(card)) for name, card in zip(req.samples.variables, cards)]
    if len(variables) != records.shape[1]:
        raise ValidationError(
            "SHAPE_MISMATCH",
            f"{len(variables)} variable names for records of length {records.shape[1]}",
        )
    return JointDistribution.from_samples(req.samples.records, variables, atol=atol)


def _request_config(req, fields: tuple[str, ...]) -> dict:
    config = {name: getattr(req, name) for name in fields}
    config["source"] = "distribution" if req.distribution is not None else "samples"
    return config


def build_state(spec: StateSpecModel) -> quantum.PureState:
    if spec.kind == "ghz":
        return quantum.ghz(spec.n)
    if spec.kind == "w":
        return quantum.w_state(spec.n)
    if spec.kind == "product_zero":
        return quantum.product_zero(spec.n)
    if spec.kind == "random":
        return quantum.random_state(spec.n, spec.seed if spec.seed is not None else 0)
    amps = spec.amplitudes
    if any(len(pair) != 2 for pair in amps):
        raise ValidationError("MALFORMED_INPUT", "amplitudes must be [re, im] pairs")
    if len(amps) != 2**spec.n:
        raise ValidationError(
            "SHAPE_MISMATCH", f"expected {2**spec.n} amplitudes for n={spec.n}, got {len(amps)}"
        )
    return quantum.PureState(np.array([complex(re, im) for re, im in amps]))


def build_settings(config: SettingConfigModel, n_qubits: int) -> list[quantum.MeasurementSetting]:
    return quantum.sample_settings(
        n_qubits,
        config.count,
        config.seed,
        config.scheme,
        n_theta=config.n_theta,
        n_phi=config.n_phi,
    )


def _state_echo(spec: StateSpecModel) -> dict:
    echo = spec.model_dump()
    amps = echo.get("amplitudes")
    if amps is not None and len(amps) > MAX_ECHOED_AMPLITUDES:
        echo["amplitudes"] = f"<{len(amps)} amplitudes>"
    return echo


def run_measures(req: MeasuresRequest) -> MeasuresReportModel:
    dist = _distribution_from_request(req)
    meta = report_meta(
        "measures",
        config=_request_config(req, ("subset", "tolerance")),
        input_distribution=dist.to_json_dict(),
        normalization_atol=req.tolerance if req.tolerance is not None else NORMALIZATION_ATOL,
    )
    return MeasuresReportModel(**measures_report(dist, req.subset, meta=meta))


def run_geometry(req: GeometryRequest) -> GeometryReportModel:
    dist = _distribution_from_request(req)
    meta = report_meta(
        "geometry",
        config=_request_config(
            req, ("subset", "tolerance", "require_volumes", "surface_aggregate")
        ),
        input_distribution=dist.to_json_dict(),
        normalization_atol=req.tolerance if req.tolerance is not None else NORMALIZATION_ATOL,
    )
    return GeometryReportModel(
        **geometry_report(
            dist,
            req.subset,
            require_volumes=req.require_volumes,
            surface_aggregate=req.surface_aggregate,
            meta=meta,
        )
    )


def run_quantum(req: QuantumRequest) -> QuantumReportModel:
    state = build_state(req.state)
    settings = build_settings(req.settings, state.n_qubits)
    sweep = quantum.measurement_sweep(
        state, settings, req.subset, aggregate=req.surface_aggregate
    )
    meta = report_meta(
        "quantum",
        seed=req.settings.seed,
        settings_config=req.settings.model_dump(),
        config={
            "state": _state_echo(req.state),
            "subset": list(req.subset) if req.subset is not None else None,
            "surface_aggregate": req.surface_aggregate,
        },
    )
    return QuantumReportModel(**quantum_report(sweep, meta=meta))


def run_sweep(req: SweepRequest) -> str:
    """CSV of reactivity along cos(a)|0..0> + sin(a)|1..1>, a on a uniform grid.

    The same setting ensemble is reused at every grid point, so rows differ
    only through the state (common random numbers across the sweep).
    """
    settings = build_settings(req.settings, req.qubits)
    rows = []
    for alpha in np.linspace(req.alpha_start, req.alpha_stop, req.steps):
        state = quantum.ghz_family(req.qubits, float(alpha))
        sweep = quantum.measurement_sweep(state, settings)
        rows.append(
            {
                "alpha": float(alpha),
                "surface": clamp_nonneg(sweep.surface_mean),
                "volume": clamp_nonneg(sweep.volume_mean),
                "reactivity": encode_reactivity(sweep.reactivity()),
            }
        )
    return sweep_csv(rows)
