"""Report assembly: plain dicts ready for JSON/CSV serialization.

This is the reporting layer: provably nonnegative quantities whose floats
dipped below zero by roundoff (within 1e-12) are clamped to 0 here, and only
here.  Every report embeds the tool version, the effective configuration and
the seed, so a run is reproducible from its own output; measures/geometry
reports also echo the validated input distribution so it can be re-ingested.
"""

from __future__ import annotations

import csv
import io
from itertools import combinations
from typing import Sequence

from . import geometry
from .distributions import NORMALIZATION_ATOL, JointDistribution
from .errors import PreconditionError
from .entropy import (
    conditional_entropy,
    conditional_mutual_information,
    joint_entropy,
    multiway_mutual_information,
    mutual_information,
)
from .version import __version__

CLAMP_FLOOR = 1e-12

#: Full subset-entropy enumeration is capped at this many variables
#: (4096 entries); beyond it only singles, pairs and the full set appear.
MAX_ENUMERATED_VARIABLES = 12


def clamp_nonneg(value: float, floor: float = CLAMP_FLOOR) -> float:
    """Zero out negative roundoff in a quantity that is >= 0 in exact arithmetic."""
    if -floor <= value < 0.0:
        return 0.0
    return value


def encode_reactivity(value: geometry.Reactivity | None):
    if value is None:
        return None
    if isinstance(value, geometry.Divergent):
        return "DIVERGENT"
    return float(value)


def report_meta(
    command: str,
    *,
    seed: int | None = None,
    settings_config: dict | None = None,
    config: dict | None = None,
    input_distribution: dict | None = None,
    normalization_atol: float = NORMALIZATION_ATOL,
) -> dict:
    meta = {
        "tool": "entrogeo",
        "version": __version__,
        "command": command,
        "seed": seed,
        "settings": settings_config,
        "config": config or {},
        "tolerances": {
            "normalization": normalization_atol,
            "divergence_floor": geometry.DIVERGENCE_FLOOR,
            "heron_clamp": geometry.HERON_CLAMP,
            "report_clamp": CLAMP_FLOOR,
        },
    }
    if input_distribution is not None:
        meta["input_distribution"] = input_distribution
    return meta


def _select(dist: JointDistribution, subset_names: Sequence[str] | None) -> tuple[int, ...]:
    if subset_names is None:
        return tuple(range(dist.n_variables))
    return dist.subset_for(subset_names)


def measures_report(
    dist: JointDistribution,
    subset_names: Sequence[str] | None = None,
    *,
    meta: dict | None = None,
) -> dict:
    """All entropy measures of the selected variables.

    Joint entropies of every nonempty variable combination (truncated to
    singles, pairs and the full set past MAX_ENUMERATED_VARIABLES), pairwise
    mutual informations, leave-one-out conditional entropies, pairwise
    conditional mutual informations given the rest, and the co-information
    of the whole selection.
    """
    sel = _select(dist, subset_names)
    names = [dist.variables[i].name for i in sel]
    d = len(sel)

    truncated = d > MAX_ENUMERATED_VARIABLES
    if truncated:
        orders: list[int] = [1, 2, d]
    else:
        orders = list(range(1, d + 1))
    entropies: dict[str, float] = {}
    for order in sorted(set(orders)):
        for combo in combinations(range(d), order):
            key = ",".join(names[i] for i in combo)
            entropies[key] = clamp_nonneg(joint_entropy(dist, tuple(sel[i] for i in combo)))

    pairwise = [
        {
            "x": names[i],
            "y": names[j],
            "value": clamp_nonneg(mutual_information(dist, (sel[i],), (sel[j],))),
        }
        for i, j in combinations(range(d), 2)
    ]

    conditional = []
    if d >= 2:
        for i in range(d):
            rest = tuple(sel[j] for j in range(d) if j != i)
            conditional.append(
                {
                    "target": names[i],
                    "given": [n for k, n in enumerate(names) if k != i],
                    "value": clamp_nonneg(conditional_entropy(dist, (sel[i],), rest)),
                }
            )

    cmi = []
    if d >= 3:
        for i, j in combinations(range(d), 2):
            given = tuple(sel[k] for k in range(d) if k not in (i, j))
            cmi.append(
                {
                    "x": names[i],
                    "y": names[j],
                    "given": [n for k, n in enumerate(names) if k not in (i, j)],
                    "value": clamp_nonneg(
                        conditional_mutual_information(dist, (sel[i],), (sel[j],), given)
                    ),
                }
            )

    multiway = None
    if d >= 2:
        # co-information of all selected variables; legitimately negative for
        # parity-like distributions, so never clamped
        multiway = {
            "parts": names,
            "value": multiway_mutual_information(dist, [(i,) for i in sel]),
        }

    report = {
        "entropies": entropies,
        "mutual_information": pairwise,
        "conditional_entropies": conditional,
        "conditional_mutual_information": cmi,
        "multiway_mutual_information": multiway,
        "meta": meta or report_meta("measures", input_distribution=dist.to_json_dict()),
    }
    if truncated:
        report["meta"]["entropies_truncated"] = True
    return report


def geometry_report(
    dist: JointDistribution,
    subset_names: Sequence[str] | None = None,
    *,
    require_volumes: bool = False,
    surface_aggregate: str = "sum",
    meta: dict | None = None,
) -> dict:
    """The full geometric hierarchy of the selected variables.

    Distance matrix, all triple areas (entropic, Euclidean and blended), all
    quadruple volumes when four or more variables are selected, plus the
    n-volume, facet surface and single-distribution reactivity of the whole
    selection.  ``require_volumes`` turns a missing volume hierarchy
    (fewer than four variables) into a SUBSET_TOO_SMALL error.
    """
    sel = _select(dist, subset_names)
    names = [dist.variables[i].name for i in sel]
    d = len(sel)
    if require_volumes and d < 4:
        raise PreconditionError(
            "SUBSET_TOO_SMALL",
            f"quadruple volumes need at least 4 variables, got {d}",
        )

    distances = geometry.distance_matrix(dist, sel)
    distances = [[clamp_nonneg(float(v)) for v in row] for row in distances]

    areas = [
        {
            "variables": [names[i], names[j], names[k]],
            "info_area": clamp_nonneg(geometry.info_area(dist, sel[i], sel[j], sel[k])),
            "euclidean_area": geometry.euclidean_triangle_area(dist, sel[i], sel[j], sel[k]),
            "blended_area": clamp_nonneg(geometry.blended_area(dist, sel[i], sel[j], sel[k])),
        }
        for i, j, k in combinations(range(d), 3)
    ]

    volumes = [
        {
            "variables": [names[i], names[j], names[k], names[m]],
            "volume": clamp_nonneg(geometry.info_volume(dist, sel[i], sel[j], sel[k], sel[m])),
        }
        for i, j, k, m in combinations(range(d), 4)
    ]

    full_volume = clamp_nonneg(geometry.n_volume(dist, sel))
    surface = None
    reactivity_value = None
    if d >= 3:
        surface = clamp_nonneg(geometry.surface_area(dist, sel, aggregate=surface_aggregate))
        reactivity_value = geometry.reactivity(surface, full_volume)

    return {
        "names": names,
        "distances": distances,
        "areas": areas,
        "volumes": volumes,
        "n_volume": full_volume,
        "surface_area": surface,
        "reactivity": encode_reactivity(reactivity_value),
        "meta": meta or report_meta("geometry", input_distribution=dist.to_json_dict()),
    }


def quantum_report(sweep, *, meta: dict) -> dict:
    """Averaged surface, averaged volume, reactivity and per-setting volume stats."""
    volume_mean = sweep.volume_mean
    return {
        "surface": clamp_nonneg(sweep.surface_mean),
        "volume": clamp_nonneg(volume_mean),
        "reactivity": encode_reactivity(sweep.reactivity()),
        "volume_stats": {
            "min": clamp_nonneg(float(sweep.volumes.min())),
            "max": clamp_nonneg(float(sweep.volumes.max())),
            "mean": clamp_nonneg(volume_mean),
        },
        "meta": meta,
    }


def sweep_csv(rows: Sequence[dict]) -> str:
    """Render sweep rows as CSV with the fixed header alpha,surface,volume,reactivity."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["alpha", "surface", "volume", "reactivity"])
    for row in rows:
        writer.writerow(
            [
                repr(float(row["alpha"])),
                repr(float(row["surface"])),
                repr(float(row["volume"])),
                "DIVERGENT" if row["reactivity"] == "DIVERGENT" else repr(float(row["reactivity"])),
            ]
        )
    return buf.getvalue()
