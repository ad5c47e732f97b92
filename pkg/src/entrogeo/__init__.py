"""entrogeo: entropy-based geometry of discrete joint distributions.

Shannon entropy turns a joint distribution into a metric space: conditional
entropies act as edge lengths, and their symmetric combinations give areas,
volumes and higher simplex content.  This package computes those measures
for explicit distributions and, via exact Born-rule simulation, averages
them over random local measurements of multipartite qubit states.

The HTTP layer lives in ``entrogeo.service`` (kept out of this namespace so
importing the core never pulls in the web stack).
"""

from .distributions import (
    JointDistribution,
    Variable,
    distribution_from_csv,
    parse_samples_csv,
    product,
    validate_subset,
)
from .entropy import (
    conditional_entropy,
    conditional_mutual_information,
    joint_entropy,
    multiway_mutual_information,
    mutual_information,
)
from .errors import (
    EXIT_CODES,
    EntrogeoError,
    NumericFaultError,
    PreconditionError,
    ValidationError,
)
from .geometry import (
    DIVERGENT,
    Divergent,
    blended_area,
    conditional_entropy_vector,
    distance_matrix,
    elementary_symmetric,
    euclidean_triangle_area,
    heron_area,
    info_area,
    info_area_joint_form,
    info_distance,
    info_volume,
    n_volume,
    reactivity,
    surface_area,
)
from .quantum import (
    LocalUnitary,
    MeasurementSetting,
    MeasurementSweep,
    PureState,
    apply_local_unitaries,
    averaged_n_volume,
    averaged_surface_area,
    ghz,
    ghz_family,
    measurement_basis,
    measurement_distribution,
    measurement_sweep,
    product_zero,
    random_local_unitary,
    random_state,
    sample_settings,
    state_reactivity,
    w_state,
)
from .reports import geometry_report, measures_report, quantum_report
from .version import __version__

__all__ = [
    "__version__",
    "EXIT_CODES",
    "EntrogeoError",
    "ValidationError",
    "PreconditionError",
    "NumericFaultError",
    "JointDistribution",
    "Variable",
    "validate_subset",
    "product",
    "parse_samples_csv",
    "distribution_from_csv",
    "joint_entropy",
    "conditional_entropy",
    "mutual_information",
    "multiway_mutual_information",
    "conditional_mutual_information",
    "DIVERGENT",
    "Divergent",
    "conditional_entropy_vector",
    "elementary_symmetric",
    "info_distance",
    "distance_matrix",
    "info_area",
    "info_area_joint_form",
    "heron_area",
    "euclidean_triangle_area",
    "blended_area",
    "info_volume",
    "n_volume",
    "surface_area",
    "reactivity",
    "PureState",
    "MeasurementSetting",
    "MeasurementSweep",
    "LocalUnitary",
    "ghz",
    "ghz_family",
    "w_state",
    "product_zero",
    "random_state",
    "apply_local_unitaries",
    "random_local_unitary",
    "measurement_basis",
    "measurement_distribution",
    "sample_settings",
    "measurement_sweep",
    "averaged_n_volume",
    "averaged_surface_area",
    "state_reactivity",
    "measures_report",
    "geometry_report",
    "quantum_report",
]
