"""Exact genus-zero GV / DT4 computations on local curves, local surfaces and series."""

from .certify import GridCertificate, cert_zero_grid
from .hseries import HSeries, formal_residue, hseries_expand_factor, hseries_product_truncate
from .laurent import MVLaurent, poly_arith
from .localcurve import (
    LocalCurveParams,
    ResidueSummandSpec,
    VerificationRecord,
    alt_square_sum,
    dt4_deg1,
    dt4_deg2,
    gw_deg1,
    gw_deg2,
    residue_summand,
    verify_conjecture_deg2,
)
from .localized import LinForm, LocalizedRat, localized_combine

__version__ = "0.1.0"
