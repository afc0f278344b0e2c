"""Hansen polytopes of split graphs: construction, face census and partition counts."""

from .faces import (
    Face,
    FaceBudgetExceeded,
    FaceCensus,
    brute_force_faces,
    classify_faces,
    closure,
    enumerate_faces,
    f_vector,
)
from .graph import (
    Graph,
    SplitCert,
    Step,
    ThresholdSeq,
    build_threshold,
    complement,
    ltimes,
    random_split,
    recognize_split,
    recognize_threshold,
)
from .hanner import FVector, fvec_polar, fvec_product, fvec_segment, hanner_from_threshold
from .hansen import (
    IncidenceStructure,
    SignedSet,
    cliques,
    hansen_facets,
    hansen_vertices,
    incidence,
    stable_sets,
)
from .partitions import (
    TriPartition,
    condition_A,
    condition_B,
    count_pg,
    count_pi,
    phi,
    psi,
    verify_main_theorem,
)

__version__ = "0.1.0"
