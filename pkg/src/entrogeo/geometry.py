"""Entropic geometry: information distance, area, volume, n-volume, reactivity.

The whole hierarchy is built from the leave-one-out conditional entropies of
a variable subset, ``h_i = H(A_i | rest)`` in bits:

* distance (2 variables):  ``h_1 + h_2  =  2 H(AB) - H(A) - H(B)``
* area (3):                ``h_1 h_2 + h_2 h_3 + h_3 h_1``             [bit^2]
* volume (4):              the four products of three                  [bit^3]
* n-volume (d):            elementary symmetric polynomial of degree
                           d-1 in the d conditional entropies          [bit^(d-1)]

All of these are symmetric in their arguments and vanish whenever two of the
variables are maximally correlated (two of the ``h_i`` are zero).  Functions
taking individual indices or subsets treat them as unordered sets and
canonicalize internally, so permuted calls return identical floats.

The surface area of a d-variable set is the sum of the (d-2)-volumes of its
d leave-one-out facets; reactivity is surface over volume, with means taken
over a measurement ensemble by the quantum layer.
"""

from __future__ import annotations

import math
from typing import Sequence, Union

import numpy as np

from .distributions import JointDistribution, validate_subset
from .errors import NumericFaultError, PreconditionError
from .entropy import joint_entropy

#: Heron radicands above this negative floor are treated as roundoff and
#: clamped to zero; anything below signals a genuine metric violation.
HERON_CLAMP = 1e-9

#: Mean volumes below this are reported as DIVERGENT instead of divided by.
DIVERGENCE_FLOOR = 1e-9


class Divergent:
    """Singleton sentinel for a reactivity whose denominator is ~zero."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "DIVERGENT"


DIVERGENT = Divergent()

Reactivity = Union[float, Divergent]


def conditional_entropy_vector(dist: JointDistribution, subset: Sequence[int]) -> np.ndarray:
    """Leave-one-out conditional entropies, entry i = H(subset[i] | rest)."""
    subset = validate_subset(dist, subset)
    if len(subset) < 2:
        raise PreconditionError("SUBSET_TOO_SMALL", "need at least two variables")
    total = joint_entropy(dist, subset)
    rest = [tuple(j for j in subset if j != i) for i in subset]
    return np.array([total - joint_entropy(dist, r) for r in rest])


def _loo_entropies(dist: JointDistribution, subset: Sequence[int], min_size: int) -> np.ndarray:
    """Canonical (sorted-index) conditional entropy vector for symmetric measures."""
    subset = validate_subset(dist, subset)
    if len(subset) < min_size:
        raise PreconditionError(
            "SUBSET_TOO_SMALL",
            f"need at least {min_size} variables, got {len(subset)}",
        )
    return conditional_entropy_vector(dist, tuple(sorted(subset)))


def elementary_symmetric(values: Sequence[float], order: int) -> float:
    """e_order of the given values via the standard accumulation scheme.

    With nonnegative inputs every partial sum is nonnegative, so there is no
    cancellation and the result is accurate to a few ulp.
    """
    values = [float(v) for v in values]
    if not 0 <= order <= len(values):
        raise PreconditionError("SUBSET_TOO_SMALL", f"order {order} out of range for {len(values)} values")
    if order == 0:
        return 1.0
    partial = [1.0] + [0.0] * order
    for i, v in enumerate(values):
        for j in range(min(i + 1, order), 0, -1):
            partial[j] += v * partial[j - 1]
    return partial[order]


def info_distance(dist: JointDistribution, x: int, y: int) -> float:
    """Rokhlin-Rajski distance H(x|y) + H(y|x) = 2 H(xy) - H(x) - H(y), in bits.

    A true metric on variables: symmetric, nonnegative, zero exactly for
    maximally correlated pairs, and obeying the triangle inequality.
    """
    if x == y:
        raise PreconditionError("SAME_VARIABLE", f"distance needs two distinct variables, got {x} twice")
    # canonical argument order keeps the subtraction sequence, and therefore
    # the rounding, identical for (x, y) and (y, x)
    lo, hi = (x, y) if x < y else (y, x)
    pair = validate_subset(dist, (lo, hi))
    return 2.0 * joint_entropy(dist, pair) - joint_entropy(dist, (lo,)) - joint_entropy(dist, (hi,))


def distance_matrix(dist: JointDistribution, subset: Sequence[int] | None = None) -> np.ndarray:
    """Pairwise information distances; symmetric with a zero diagonal."""
    subset = validate_subset(dist, range(dist.n_variables) if subset is None else subset)
    if len(subset) < 2:
        raise PreconditionError("TOO_FEW_VARIABLES", "distance matrix needs at least two variables")
    n = len(subset)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = info_distance(dist, subset[i], subset[j])
    return out


def info_area(dist: JointDistribution, a: int, b: int, c: int) -> float:
    """Entropic area h_a h_b + h_b h_c + h_c h_a of a variable triple, in bit^2."""
    h = _loo_entropies(dist, (a, b, c), 3)
    return float(h[0] * h[1] + h[1] * h[2] + h[2] * h[0])


def info_area_joint_form(dist: JointDistribution, a: int, b: int, c: int) -> float:
    """The same area expanded in joint entropies; independent cross-check route.

    3 T^2 - 2 (H_ab + H_ac + H_bc) T + (H_ab H_bc + H_ab H_ac + H_ac H_bc)
    with T the full joint entropy of the triple.
    """
    subset = tuple(sorted(validate_subset(dist, (a, b, c))))
    if len(subset) < 3:
        raise PreconditionError("SUBSET_TOO_SMALL", "area needs three variables")
    i, j, k = subset
    t = joint_entropy(dist, subset)
    h_ij = joint_entropy(dist, (i, j))
    h_ik = joint_entropy(dist, (i, k))
    h_jk = joint_entropy(dist, (j, k))
    return 3.0 * t * t - 2.0 * (h_ij + h_ik + h_jk) * t + (h_ij * h_jk + h_ij * h_ik + h_ik * h_jk)


def heron_area(a: float, b: float, c: float) -> float:
    """Euclidean triangle area from side lengths (Kahan's stable ordering).

    The radicand is nonnegative whenever the sides obey the triangle
    inequality; values in (-HERON_CLAMP, 0) are treated as roundoff and
    clamped, anything lower raises NEGATIVE_RADICAND.
    """
    x, y, z = sorted((float(a), float(b), float(c)), reverse=True)
    radicand = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z)) / 16.0
    if radicand < 0.0:
        if radicand < -HERON_CLAMP:
            raise NumericFaultError(
                "NEGATIVE_RADICAND",
                f"Heron radicand {radicand!r} below -{HERON_CLAMP}; sides ({a}, {b}, {c}) violate the triangle inequality",
            )
        radicand = 0.0
    return math.sqrt(radicand)


def euclidean_triangle_area(dist: JointDistribution, a: int, b: int, c: int) -> float:
    """Heron area of the triangle whose sides are the pairwise info distances."""
    validate_subset(dist, (a, b, c))
    return heron_area(
        info_distance(dist, a, b),
        info_distance(dist, b, c),
        info_distance(dist, c, a),
    )


def blended_area(dist: JointDistribution, a: int, b: int, c: int) -> float:
    """Mean of the entropic and Euclidean areas; an alternative valid area."""
    return 0.5 * (info_area(dist, a, b, c) + euclidean_triangle_area(dist, a, b, c))


def info_volume(dist: JointDistribution, a: int, b: int, c: int, d: int) -> float:
    """Entropic tetrahedron volume: the four triple products of the
    leave-one-out conditional entropies, in bit^3."""
    h = _loo_entropies(dist, (a, b, c, d), 4)
    return float(
        h[0] * h[1] * h[2]
        + h[1] * h[2] * h[3]
        + h[2] * h[3] * h[0]
        + h[3] * h[0] * h[1]
    )


def n_volume(dist: JointDistribution, subset: Sequence[int]) -> float:
    """(d-1)-volume of a d-variable simplex, d >= 2, in bit^(d-1).

    e_(d-1) of the leave-one-out conditional entropies: the sum over each
    variable of the product of all the *other* conditional entropies.
    Specializes to info_distance, info_area and info_volume at d = 2, 3, 4.
    """
    h = _loo_entropies(dist, subset, 2)
    return elementary_symmetric(h, len(h) - 1)


def surface_area(
    dist: JointDistribution,
    subset: Sequence[int],
    *,
    aggregate: str = "sum",
) -> float:
    """(d-2)-dimensional surface of a d-variable simplex, d >= 3.

    The d facets are the leave-one-out subsets; each contributes its own
    (d-2)-volume.  ``aggregate`` is "sum" (default) or "mean"; the two differ
    only by the constant factor d.
    """
    subset = tuple(sorted(validate_subset(dist, subset)))
    if len(subset) < 3:
        raise PreconditionError("SUBSET_TOO_SMALL", "surface area needs at least three variables")
    if aggregate not in ("sum", "mean"):
        raise PreconditionError("BAD_AGGREGATE", f"aggregate must be 'sum' or 'mean', got {aggregate!r}")
    facets = [tuple(j for j in subset if j != i) for i in subset]
    total = math.fsum(n_volume(dist, facet) for facet in facets)
    return total / len(subset) if aggregate == "mean" else total


def reactivity(area_mean: float, volume_mean: float) -> Reactivity:
    """Surface-to-volume quotient; DIVERGENT when the volume mean is ~zero.

    A vanishing mean volume signals (near-)maximal correlation, where the
    quotient is numerically meaningless; the sentinel is returned instead of
    a huge float or an exception.
    """
    if volume_mean < DIVERGENCE_FLOOR:
        return DIVERGENT
    return float(area_mean) / float(volume_mean)
