"""Exact spectra, vanishing cohomology and degeneration bookkeeping.

Everything is computed over the rationals (or Q(sqrt d)) with Fractions.
"""
from .assembler import (
    DegenerationScenario,
    analyze,
    assemble_e2,
    cs_discrepancy,
    genus_bound_check,
    kulikov_e2,
    node_puncture_enrichment,
    solve_d2,
    vanishing_sequence_solve,
)
from .curves import assemble_h_sheaf, branched_cover_genus, kulikov_sheaf, shriek_cohomology
from .errors import InconsistencyError, InputError, PreconditionError
from .local_models import brieskorn_pham, join, monodromy_order_bound, nc_milnor, torsion_exponents
from .spectra import (
    EigenEntry,
    HodgeDeligneDiagram,
    Spectrum,
    WeightedSpectrum,
    check_pq_symmetry,
    convolve,
    f_level,
    forget_weights,
    pairing_index,
    range_check,
    star,
    to_hodge_deligne,
    vertical_spectrum,
)
from .sss import (
    SlcType,
    SssProblem,
    genus_bound,
    jk_spectrum,
    jk_summary,
    slc_catalog,
    sss_slc,
    sss_weighted,
)

__version__ = "0.1.0"
