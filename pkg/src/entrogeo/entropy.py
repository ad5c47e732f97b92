"""Shannon entropy measures over joint distributions, in bits.

All quantities are base-2 and derive from one primitive, the joint entropy
of a variable subset, combined through the standard identities:

* ``H(X|Y)   = H(XY) - H(Y)``
* ``I(X:Y)   = H(X) + H(Y) - H(XY)``
* ``I(X:Y|Z) = H(XZ) + H(YZ) - H(XYZ) - H(Z)``

``0 * log 0`` is taken as 0; terms below 1e-300 are skipped.  Differences of
entropies may carry negative roundoff of order 1e-16; nothing is clamped
here, callers that report provably nonnegative quantities clamp at the
reporting layer.

Joint entropies are memoized per distribution instance (keyed by the sorted
index tuple), which also makes symmetric derived quantities exactly
symmetric: any argument order hits the same cached float.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .distributions import JointDistribution, validate_subset
from .errors import PreconditionError

_TINY = 1e-300


def _entropy_bits(probs: np.ndarray) -> float:
    p = probs.reshape(-1)
    p = p[p > _TINY]
    if p.size == 0:
        return 0.0
    return float(-(p * np.log2(p)).sum())


def joint_entropy(dist: JointDistribution, subset: Sequence[int]) -> float:
    """H of the marginal on ``subset``; the empty subset has entropy 0."""
    key = tuple(sorted(validate_subset(dist, subset, allow_empty=True)))
    if not key:
        return 0.0
    cache = dist._entropy_cache
    value = cache.get(key)
    if value is None:
        value = _entropy_bits(dist._marginal_array(key))
        cache[key] = value
    return value


def _require_disjoint(*subsets: tuple[int, ...]) -> None:
    seen: set[int] = set()
    for s in subsets:
        overlap = seen.intersection(s)
        if overlap:
            raise PreconditionError("OVERLAPPING_SUBSETS", f"subsets share variable indices {sorted(overlap)}")
        seen.update(s)


def conditional_entropy(
    dist: JointDistribution,
    target: Sequence[int],
    given: Sequence[int],
) -> float:
    """H(target | given) = H(target + given) - H(given)."""
    target = validate_subset(dist, target)
    given = validate_subset(dist, given, allow_empty=True)
    _require_disjoint(target, given)
    return joint_entropy(dist, target + given) - joint_entropy(dist, given)


def mutual_information(
    dist: JointDistribution,
    x: Sequence[int],
    y: Sequence[int],
) -> float:
    """I(x : y) = H(x) + H(y) - H(xy)."""
    x = validate_subset(dist, x)
    y = validate_subset(dist, y)
    _require_disjoint(x, y)
    return joint_entropy(dist, x) + joint_entropy(dist, y) - joint_entropy(dist, x + y)


def multiway_mutual_information(
    dist: JointDistribution,
    parts: Sequence[Sequence[int]],
) -> float:
    """Co-information of two or more disjoint parts.

    Inclusion-exclusion over all nonempty part combinations,
    ``sum (-1)^(|S|+1) H(union S)``.  Reduces to mutual information for two
    parts and to the three-variable identity
    ``H(A)+H(B)+H(C) - H(AB)-H(AC)-H(BC) + H(ABC)`` for three.  Can be
    negative (e.g. -1 bit for the XOR triple).
    """
    parts = [validate_subset(dist, p) for p in parts]
    if len(parts) < 2:
        raise PreconditionError("TOO_FEW_PARTS", "need at least two parts")
    _require_disjoint(*parts)
    total = 0.0
    for mask in range(1, 1 << len(parts)):
        union: tuple[int, ...] = ()
        for i, part in enumerate(parts):
            if mask >> i & 1:
                union += part
        sign = 1.0 if bin(mask).count("1") % 2 == 1 else -1.0
        total += sign * joint_entropy(dist, union)
    return total


def conditional_mutual_information(
    dist: JointDistribution,
    x: Sequence[int],
    y: Sequence[int],
    given: Sequence[int],
) -> float:
    """I(x : y | given) = H(x,g) + H(y,g) - H(x,y,g) - H(g)."""
    x = validate_subset(dist, x)
    y = validate_subset(dist, y)
    given = validate_subset(dist, given, allow_empty=True)
    _require_disjoint(x, y, given)
    return (
        joint_entropy(dist, x + given)
        + joint_entropy(dist, y + given)
        - joint_entropy(dist, x + y + given)
        - joint_entropy(dist, given)
    )
