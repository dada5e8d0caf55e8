"""Band and gap structure of periodic quantum graphs.

Three engines:

* :mod:`qgraphgaps.diophantine` - continued fractions, best approximations,
  Markov-type constants, simultaneous Dirichlet approximation;
* :mod:`qgraphgaps.lattice` - the closed-form gap condition of the
  rectangular Kronig-Penney lattice, certified gap thresholds and exact
  gap counts for the golden-mean lattice;
* :mod:`qgraphgaps.floquet` - ST-form vertex couplings, bond scattering
  matrices and the secular determinant of a general periodic cell.
"""

from .diophantine import (
    BestApprox,
    ContinuedFraction,
    best_approx_above,
    best_approx_below,
    cf_expand,
    convergents,
    dirichlet_simultaneous,
    evaluate,
    markov,
    theta_family,
    upsilon,
)
from .errors import DomainError, InputError, QGraphError
from .intervals import RealInterval
from .lattice import (
    GapInterval,
    LatticeParams,
    ThresholdReport,
    A_sequence,
    classify,
    count_m_solutions,
    gamma_minus,
    gamma_plus,
    gap_condition,
    predict_gap_count_golden,
    scan_gaps,
)
from .quadratic import QuadraticSurd, golden_mean

__version__ = "0.1.0"
