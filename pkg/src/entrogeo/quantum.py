"""Local projective measurements on multipartite qubit states.

A pure n-qubit state is a dense vector of 2^n complex amplitudes, indexed so
that qubit 0 is the most significant bit; this matches the row-major layout
of the outcome distributions it produces (variables "Q0", "Q1", ...).

One measurement setting assigns each qubit a projective basis parameterized
by Bloch angles (theta, phi):

    b0 = cos(theta/2) |0> + e^(i phi) sin(theta/2) |1>
    b1 = sin(theta/2) |0> - e^(i phi) cos(theta/2) |1>

Outcome probabilities follow the Born rule, |<b_o1 x ... x b_on | psi>|^2,
computed exactly (no shot noise).  Averages over an ensemble of settings use
compensated summation in setting-index order, so results are deterministic
regardless of how the per-setting work is scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .distributions import JointDistribution
from .errors import PreconditionError, ValidationError
from . import geometry

#: Dense state vectors become impractical beyond this; joint-entropy cost is
#: exponential in the qubit count anyway.
MAX_QUBITS = 20

STATE_NORM_ATOL = 1e-10
UNITARY_ATOL = 1e-10


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitude vector of an n-qubit system."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        n = int(round(math.log2(amps.size))) if amps.size > 0 else 0
        if amps.size == 0 or 2**n != amps.size:
            raise ValidationError("SHAPE_MISMATCH", f"amplitude count {amps.size} is not a power of two")
        if n > MAX_QUBITS:
            raise ValidationError("TOO_MANY_QUBITS", f"{n} qubits exceeds the dense-vector cap of {MAX_QUBITS}")
        norm_sq = float(np.vdot(amps, amps).real)
        if abs(norm_sq - 1.0) > STATE_NORM_ATOL:
            raise ValidationError("NOT_NORMALIZED", f"squared amplitude norm is {norm_sq!r}, not 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "n_qubits", n)

    n_qubits: int = 0


@dataclass(frozen=True)
class MeasurementSetting:
    """Per-qubit Bloch angles (theta in [0, pi], phi in [0, 2 pi))."""

    angles: tuple[tuple[float, float], ...]

    def __post_init__(self):
        angles = tuple((float(t), float(p)) for t, p in self.angles)
        if not angles:
            raise ValidationError("SIZE_MISMATCH", "a setting needs at least one qubit")
        for k, (theta, phi) in enumerate(angles):
            if not 0.0 <= theta <= math.pi:
                raise ValidationError("ANGLE_OUT_OF_RANGE", f"theta[{k}] = {theta!r} outside [0, pi]")
            if not 0.0 <= phi < 2.0 * math.pi:
                raise ValidationError("ANGLE_OUT_OF_RANGE", f"phi[{k}] = {phi!r} outside [0, 2 pi)")
        object.__setattr__(self, "angles", angles)

    @property
    def n_qubits(self) -> int:
        return len(self.angles)


@dataclass(frozen=True, eq=False)
class LocalUnitary:
    """One 2x2 unitary per qubit, applied as a tensor product."""

    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = []
        for k, m in enumerate(self.matrices):
            m = np.asarray(m, dtype=complex)
            if m.shape != (2, 2):
                raise ValidationError("SIZE_MISMATCH", f"matrix {k} has shape {m.shape}, expected (2, 2)")
            if not np.allclose(m.conj().T @ m, np.eye(2), atol=UNITARY_ATOL):
                raise ValidationError("NOT_UNITARY", f"matrix {k} is not unitary within {UNITARY_ATOL}")
            m.setflags(write=False)
            mats.append(m)
        object.__setattr__(self, "matrices", tuple(mats))

    @property
    def n_qubits(self) -> int:
        return len(self.matrices)


# -- state constructors ------------------------------------------------------


def ghz(n: int) -> PureState:
    """(|0...0> + |1...1>) / sqrt(2); maximally correlated in the Z basis."""
    if n < 2:
        raise ValidationError("N_TOO_SMALL", f"ghz needs at least 2 qubits, got {n}")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1.0 / math.sqrt(2.0)
    return PureState(amps)


def w_state(n: int) -> PureState:
    """Equal superposition of the n single-excitation basis states."""
    if n < 2:
        raise ValidationError("N_TOO_SMALL", f"w_state needs at least 2 qubits, got {n}")
    amps = np.zeros(2**n, dtype=complex)
    for k in range(n):
        amps[1 << (n - 1 - k)] = 1.0 / math.sqrt(n)
    return PureState(amps)


def product_zero(n: int) -> PureState:
    """|0...0>, the fully uncorrelated computational ground state."""
    if n < 1:
        raise ValidationError("N_TOO_SMALL", f"product_zero needs at least 1 qubit, got {n}")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = 1.0
    return PureState(amps)


def random_state(n: int, seed: int) -> PureState:
    """Normalized isotropic complex Gaussian draw; reproducible per seed."""
    if n < 1:
        raise ValidationError("N_TOO_SMALL", f"random_state needs at least 1 qubit, got {n}")
    if n > MAX_QUBITS:
        raise ValidationError("TOO_MANY_QUBITS", f"{n} qubits exceeds the dense-vector cap of {MAX_QUBITS}")
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return PureState(amps / np.linalg.norm(amps))


def ghz_family(n: int, alpha: float) -> PureState:
    """cos(alpha) |0...0> + sin(alpha) |1...1>: product state at alpha = 0,
    GHZ at alpha = pi/4."""
    if n < 2:
        raise ValidationError("N_TOO_SMALL", f"ghz_family needs at least 2 qubits, got {n}")
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = math.cos(alpha)
    amps[-1] = math.sin(alpha)
    return PureState(amps)


# -- unitaries and measurement -----------------------------------------------


def _apply_one_qubit(psi: np.ndarray, matrix: np.ndarray, qubit: int) -> np.ndarray:
    out = np.tensordot(matrix, psi, axes=([1], [qubit]))
    return np.moveaxis(out, 0, qubit)


def apply_local_unitaries(state: PureState, unitaries: LocalUnitary | Iterable) -> PureState:
    """Apply one 2x2 unitary per qubit; the norm is preserved."""
    if not isinstance(unitaries, LocalUnitary):
        unitaries = LocalUnitary(tuple(unitaries))
    if unitaries.n_qubits != state.n_qubits:
        raise PreconditionError(
            "SIZE_MISMATCH",
            f"{unitaries.n_qubits} matrices for {state.n_qubits} qubits",
        )
    psi = state.amplitudes.reshape([2] * state.n_qubits)
    for k, m in enumerate(unitaries.matrices):
        psi = _apply_one_qubit(psi, m, k)
    return PureState(psi.reshape(-1))


def random_local_unitary(n: int, seed: int) -> LocalUnitary:
    """Haar-random 2x2 unitary per qubit (QR of a complex Gaussian, phase-fixed)."""
    rng = np.random.default_rng(seed)
    mats = []
    for _ in range(n):
        z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / math.sqrt(2.0)
        q, r = np.linalg.qr(z)
        d = np.diagonal(r)
        mats.append(q * (d / np.abs(d)))
    return LocalUnitary(tuple(mats))


def measurement_basis(theta: float, phi: float) -> np.ndarray:
    """2x2 matrix whose rows are the two orthonormal basis vectors."""
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    e = complex(math.cos(phi), math.sin(phi))
    return np.array([[c, e * s], [s, -e * c]], dtype=complex)


def measurement_distribution(state: PureState, setting: MeasurementSetting) -> JointDistribution:
    """Exact Born-rule outcome distribution, one binary variable per qubit."""
    if setting.n_qubits != state.n_qubits:
        raise PreconditionError(
            "SIZE_MISMATCH",
            f"setting covers {setting.n_qubits} qubits, state has {state.n_qubits}",
        )
    psi = state.amplitudes.reshape([2] * state.n_qubits)
    for k, (theta, phi) in enumerate(setting.angles):
        # rows of the conjugated basis matrix are the <b_o| functionals
        psi = _apply_one_qubit(psi, measurement_basis(theta, phi).conj(), k)
    probs = np.abs(psi.reshape(-1)) ** 2
    variables = [(f"Q{k}", 2) for k in range(state.n_qubits)]
    return JointDistribution.from_flat(variables, probs)


# -- setting ensembles and averaging ------------------------------------------


def sample_settings(
    n_qubits: int,
    count: int,
    seed: int,
    scheme: str = "uniform_sphere",
    *,
    n_theta: int | None = None,
    n_phi: int | None = None,
) -> list[MeasurementSetting]:
    """Deterministic ensemble of measurement settings.

    ``uniform_sphere`` draws each qubit's basis direction uniformly on the
    sphere (cos theta uniform on [-1, 1], phi uniform on [0, 2 pi)).
    ``grid`` walks the Cartesian product of theta_k = k pi / n_theta and
    phi_m = m 2 pi / n_phi, the same angle pair on every qubit, cycling or
    truncating the grid to reach ``count`` settings.
    """
    if n_qubits < 1:
        raise ValidationError("N_TOO_SMALL", f"need at least 1 qubit, got {n_qubits}")
    if count < 1:
        raise ValidationError("BAD_SCHEME", f"setting count must be >= 1, got {count}")
    if scheme == "uniform_sphere":
        rng = np.random.default_rng(seed)
        cos_theta = rng.uniform(-1.0, 1.0, size=(count, n_qubits))
        phi = rng.uniform(0.0, 2.0 * math.pi, size=(count, n_qubits))
        theta = np.arccos(cos_theta)
        return [
            MeasurementSetting(tuple((theta[i, k], phi[i, k]) for k in range(n_qubits)))
            for i in range(count)
        ]
    if scheme == "grid":
        if not n_theta or not n_phi or n_theta < 1 or n_phi < 1:
            raise ValidationError("BAD_SCHEME", "grid scheme needs positive n_theta and n_phi")
        base = [
            (k * math.pi / n_theta, m * 2.0 * math.pi / n_phi)
            for k in range(n_theta)
            for m in range(n_phi)
        ]
        return [
            MeasurementSetting(tuple(base[i % len(base)] for _ in range(n_qubits)))
            for i in range(count)
        ]
    raise ValidationError("BAD_SCHEME", f"unknown sampling scheme {scheme!r}")


def _full_subset(state: PureState) -> tuple[int, ...]:
    return tuple(range(state.n_qubits))


@dataclass(frozen=True)
class MeasurementSweep:
    """Per-setting volumes and surfaces of one state under an ensemble."""

    volumes: np.ndarray
    surfaces: np.ndarray

    @property
    def volume_mean(self) -> float:
        return math.fsum(self.volumes) / len(self.volumes)

    @property
    def surface_mean(self) -> float:
        return math.fsum(self.surfaces) / len(self.surfaces)

    def reactivity(self) -> geometry.Reactivity:
        return geometry.reactivity(self.surface_mean, self.volume_mean)


def measurement_sweep(
    state: PureState,
    settings: Sequence[MeasurementSetting],
    subset: Sequence[int] | None = None,
    *,
    aggregate: str = "sum",
) -> MeasurementSweep:
    """Evaluate n-volume and surface area of every setting's outcome distribution."""
    if len(settings) == 0:
        raise PreconditionError("EMPTY_SETTINGS", "need at least one measurement setting")
    subset = _full_subset(state) if subset is None else tuple(subset)
    volumes = np.empty(len(settings))
    surfaces = np.empty(len(settings))
    for i, setting in enumerate(settings):
        dist = measurement_distribution(state, setting)
        volumes[i] = geometry.n_volume(dist, subset)
        surfaces[i] = geometry.surface_area(dist, subset, aggregate=aggregate)
    return MeasurementSweep(volumes=volumes, surfaces=surfaces)


def averaged_n_volume(
    state: PureState,
    settings: Sequence[MeasurementSetting],
    subset: Sequence[int] | None = None,
) -> float:
    """Mean n-volume over the settings (compensated, setting-index order)."""
    if len(settings) == 0:
        raise PreconditionError("EMPTY_SETTINGS", "need at least one measurement setting")
    subset = _full_subset(state) if subset is None else tuple(subset)
    values = [geometry.n_volume(measurement_distribution(state, s), subset) for s in settings]
    return math.fsum(values) / len(values)


def averaged_surface_area(
    state: PureState,
    settings: Sequence[MeasurementSetting],
    subset: Sequence[int] | None = None,
    *,
    aggregate: str = "sum",
) -> float:
    """Mean facet surface area over the settings."""
    if len(settings) == 0:
        raise PreconditionError("EMPTY_SETTINGS", "need at least one measurement setting")
    subset = _full_subset(state) if subset is None else tuple(subset)
    values = [
        geometry.surface_area(measurement_distribution(state, s), subset, aggregate=aggregate)
        for s in settings
    ]
    return math.fsum(values) / len(values)


def state_reactivity(
    state: PureState,
    settings: Sequence[MeasurementSetting],
    *,
    aggregate: str = "sum",
) -> geometry.Reactivity:
    """Measurement-averaged surface over measurement-averaged volume.

    Needs at least three qubits (the surface of a two-variable set is not
    defined).  Returns DIVERGENT when the mean volume is ~zero.
    """
    if state.n_qubits < 3:
        raise PreconditionError("SUBSET_TOO_SMALL", "reactivity needs at least three qubits")
    return measurement_sweep(state, settings, aggregate=aggregate).reactivity()
