"""Weight reduction toolkit for CSS quantum codes.

A CSS code is held as a graded GF(2) chain complex (Z-checks, qubits,
X-checks). The transformations here rebuild codes with bounded check
weights and qubit degrees while preserving the encoded dimension.
"""

__version__ = "0.1.0"

from .errors import (
    AugmentationFailed,
    BoundViolation,
    BudgetExceeded,
    CommutationViolation,
    DimensionMismatch,
    FormatError,
    HeightSearchFailed,
    IndexOutOfRange,
    NontrivialHomology,
    NotReasonable,
    NotSorted,
    OddCrossingParity,
    QwrError,
    RetriesExhausted,
)
from .f2 import (
    BitVector,
    RowBasis,
    SparseBitMatrix,
    kernel_basis,
    mat_mul,
    rank,
    read_matrix_text,
    solve,
    write_matrix_text,
)
from .model import (
    ChainComplex,
    CodeParams,
    CssCode,
    ReasonablenessReport,
    SupportGraph,
    code_to_complex,
    complex_to_code,
    encoded_dimension,
    is_reasonable,
    support_graph,
    validate,
)
from .io import (
    canonical_json,
    code_from_alist,
    code_from_dict,
    code_to_dict,
    dumps_code,
    loads_code,
    read_alist,
    read_code,
    write_code,
)
from .metrics import (
    DistanceResult,
    ExpansionResult,
    Graph,
    cheeger,
    distance_estimate,
    distance_exact,
    homology_ranks,
    soundness,
)
from .report import BoundCheck, TransformReport, require_bounds
from .seeds import derive_seed
from .fixtures import big_face_torus, punctured_sphere, steane, toric
from .copygauge import XReductionPlan, x_reduce
from .thicken import (
    HeightAssignment,
    choose_heights_coloring,
    choose_heights_random,
    dual,
    kept_multiplicity,
    thicken,
)
from .cone import (
    BComplex,
    ConeInput,
    Pairing,
    build_b_complex,
    cellulate_cycle,
    cone_code,
    cycle_basis,
    fix_pairing,
    induced_code,
    mapping_cone,
    reduce_cone,
    with_cycle_redundancies,
)
from .robustify import (
    ConnectPlan,
    augment_b_complex,
    connect,
    improve_soundness,
)
from .randapplic import (
    RandomCodeSpec,
    build_applic_code,
    sample_classical,
    sample_z_stabilizers,
)
from .pipeline import default_config, reduce_applic, reduce_full

__all__ = [name for name in dir() if not name.startswith("_")]
