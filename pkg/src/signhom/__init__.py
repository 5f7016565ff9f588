"""Min orderings, dichotomy classification and list homomorphisms for signed graphs."""
from .classify import (
    ClassificationResult,
    ForbiddenOccurrence,
    Verdict,
    classify,
    forbidden_subgraph_check,
    is_bipartite_chain_graph,
)
from .errors import (
    BadSeed,
    CapExceeded,
    ConflictingPair,
    InternalInvariantViolation,
    InvertiblePairFound,
    NotBipartite,
    NotNormalized,
    NotPolynomial,
    NotWeaklyBalanced,
    ParseError,
    SignHomError,
    UnsupportedShape,
)
from .ordering import MinOrdering, PairRelation, extend_to_min_ordering, min_ordering, verify_min_ordering
from .pairs import (
    InvertiblePairCertificate,
    build_pair_digraph,
    find_invertible_pair,
    strong_components,
    verify_invertible_pair,
)
from .sgraph import (
    Bipartition,
    Mode,
    OddRedClosedWalk,
    Sign,
    SignedGraph,
    SwitchingAssignment,
    bipartition,
    is_weakly_balanced,
    normalize_weakly_balanced,
    switch,
    verify_homomorphism,
)
from .solver import HomomorphismResult, ListHomomorphismSolver, ListsInstance, solve
from .special import Chain, SpecialMinOrdering, special_min_ordering, verify_chain, verify_special_min_ordering

__version__ = "0.1.0"
