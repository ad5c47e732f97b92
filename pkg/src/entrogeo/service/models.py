"""Request and response schemas for the HTTP service.

Request models mirror the on-disk JSON formats exactly, so a file accepted by
the CLI is a valid request body and vice versa.  Response models are loose
(extra fields allowed) because reports carry free-form meta.
"""

from __future__ import annotations

import math
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class VariableModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    cardinality: int = Field(ge=1)


class DistributionModel(BaseModel):
    """Joint distribution over named finite variables, flat row-major
    probabilities with the last variable varying fastest."""

    model_config = ConfigDict(extra="forbid")

    variables: list[VariableModel] = Field(min_length=1)
    probabilities: list[float] = Field(min_length=1)


class SampleBatchModel(BaseModel):
    """Observed outcome tuples; probabilities become empirical frequencies."""

    model_config = ConfigDict(extra="forbid")

    variables: list[str] = Field(min_length=1)
    records: list[list[int]] = Field(min_length=1)


class MeasuresRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    distribution: Optional[DistributionModel] = None
    samples: Optional[SampleBatchModel] = None
    subset: Optional[list[str]] = None
    tolerance: Optional[float] = Field(default=None, gt=0.0)

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.distribution is None) == (self.samples is None):
            raise ValueError("provide exactly one of 'distribution' or 'samples'")
        return self


class GeometryRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    distribution: Optional[DistributionModel] = None
    samples: Optional[SampleBatchModel] = None
    subset: Optional[list[str]] = None
    tolerance: Optional[float] = Field(default=None, gt=0.0)
    require_volumes: bool = False
    surface_aggregate: Literal["sum", "mean"] = "sum"

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.distribution is None) == (self.samples is None):
            raise ValueError("provide exactly one of 'distribution' or 'samples'")
        return self


class StateSpecModel(BaseModel):
    """Which multipartite qubit state to measure.

    ``amplitudes`` (pairs [re, im], length 2^n) is required for kind
    "amplitudes" and rejected otherwise; "random" uses ``seed``.
    """

    model_config = ConfigDict(extra="forbid")

    kind: Literal["ghz", "w", "product_zero", "random", "amplitudes"]
    n: int = Field(ge=1)
    seed: Optional[int] = None
    amplitudes: Optional[list[list[float]]] = None

    @model_validator(mode="after")
    def _amplitudes_only_for_amplitudes(self):
        if self.kind == "amplitudes" and self.amplitudes is None:
            raise ValueError("kind 'amplitudes' requires the amplitudes field")
        if self.kind != "amplitudes" and self.amplitudes is not None:
            raise ValueError(f"kind {self.kind!r} does not accept amplitudes")
        return self


class SettingConfigModel(BaseModel):
    """How to generate the measurement-setting ensemble."""

    model_config = ConfigDict(extra="forbid")

    scheme: Literal["uniform_sphere", "grid"] = "uniform_sphere"
    count: int = Field(ge=1)
    seed: int = 0
    n_theta: Optional[int] = Field(default=None, ge=1)
    n_phi: Optional[int] = Field(default=None, ge=1)


class QuantumRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    state: StateSpecModel
    settings: SettingConfigModel
    subset: Optional[list[int]] = None
    surface_aggregate: Literal["sum", "mean"] = "sum"


class SweepRequest(BaseModel):
    """Reactivity of cos(a)|0..0> + sin(a)|1..1> along a grid of a values."""

    model_config = ConfigDict(extra="forbid")

    qubits: int = Field(default=3, ge=2)
    alpha_start: float = 0.0
    alpha_stop: float = math.pi / 4.0
    steps: int = Field(default=9, ge=2)
    settings: SettingConfigModel

    @model_validator(mode="after")
    def _finite_bounds(self):
        if not (math.isfinite(self.alpha_start) and math.isfinite(self.alpha_stop)):
            raise ValueError("alpha bounds must be finite")
        return self


class MeasuresReportModel(BaseModel):
    model_config = ConfigDict(extra="allow")

    entropies: dict[str, float]
    mutual_information: list[dict]
    conditional_entropies: list[dict]
    conditional_mutual_information: list[dict]
    multiway_mutual_information: Optional[dict]
    meta: dict


class GeometryReportModel(BaseModel):
    model_config = ConfigDict(extra="allow")

    names: list[str]
    distances: list[list[float]]
    areas: list[dict]
    volumes: list[dict]
    n_volume: float
    surface_area: Optional[float]
    reactivity: Optional[Union[float, str]]
    meta: dict


class QuantumReportModel(BaseModel):
    model_config = ConfigDict(extra="allow")

    surface: float
    volume: float
    reactivity: Union[float, str]
    volume_stats: dict[str, float]
    meta: dict
