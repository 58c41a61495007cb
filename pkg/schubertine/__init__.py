from ._logger import (
    configure_logger,
    log_debug,
    log_error,
    log_fatal,
    log_info,
    log_warn,
)
from .errors import InternalError, PreconditionError, SchubertineError
from .combinat import Group, SignedPermutation, TypedPartition
from .freering import FreeElement, eta_polynomial, gen, schur_polynomial, theta_polynomial
from .quotient import BasisExpansion, basis_expand, normal_form, reduce
from .pieri import pieri_product
from .series import TruncatedSeries, substitute_eta, substitute_theta
from .tableaux import Tableau, eta_series_via_bitableaux, theta_series_via_bitableaux
from .stanley import (
    TransitionTree,
    flag_coefficients,
    nilcoxeter_mixed_stanley,
    schubert_poly,
    stanley_coefficients,
    transition_tree,
)
from .verify import Verifier
from .cli import app_parser

from pathlib import Path
import os

ROOT_PATH = Path(os.path.abspath(__file__)).parents[1]
