"""Signed graphs, their corona products and corona graphs grown from a seed."""

from .corona import (
    CoronaBalance,
    CoronaLayout,
    CoronaStats,
    EdgeClasses,
    balance_of_corona,
    corona_product,
    edge_classes,
    kron_adjacency,
    kron_laplacian,
    predicted_edge_stats,
)
from .errors import (
    CoronaError,
    DomainError,
    NumericalError,
    ParseError,
    ResourceError,
    UnsupportedHypothesis,
)
from .graph import (
    DegreeProfile,
    SignedGraph,
    adjacency,
    balance_partition,
    degree_arrays,
    degrees,
    is_balanced,
    is_connected,
    laplacian,
    net_regularity,
    signless_laplacian,
)
from .ingest import (
    NetworkProfile,
    load_profile,
    network_profile,
    parse_signed_edge_list,
    read_signed_edge_list,
    triad_census,
)
from .marking import (
    MarkingVector,
    canonical_marking,
    explicit_marking,
    marking,
    plurality_marking,
)
from .sgformat import format_sg, parse_sg, read_sg, write_sg
from .spectra import (
    SpectrumEntry,
    SpectrumReport,
    adjacency_spectrum_corona,
    dense_symmetric_eigensolve,
    laplacian_equal_negdeg_spectrum,
    laplacian_secular_spectrum,
    least_laplacian_eigenvalue,
    signless_spectrum,
)

__version__ = "0.1.0"
