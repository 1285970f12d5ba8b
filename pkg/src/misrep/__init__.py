"""Misrepresentation-minimizing seat allocation for two-party district elections.

The most used names are re-exported here; everything else lives in the
submodules (:mod:`misrep.core`, :mod:`misrep.optimizer`, :mod:`misrep.rules`,
:mod:`misrep.frontier`, :mod:`misrep.majorization`, :mod:`misrep.gerrymander`,
:mod:`misrep.empirics`).
"""

from misrep.core import (
    INFINITY,
    Allocation,
    Profile,
    agg_misrep,
    dist_at,
    dist_misrep,
    fptp_seats,
    phi,
    phi_at,
    pr_seats,
    top_s_allocation,
)
from misrep.errors import (
    DataError,
    DimensionError,
    DomainError,
    MisrepError,
    PreconditionError,
    PropertyViolation,
    ResourceError,
)
from misrep.optimizer import (
    optimal_cutoff,
    optimal_seats,
    rationalizing_weights,
    seat_schedule,
    select_seats,
    transition_weights,
    weight_interval,
)
from misrep.rules import family_rule, fptp, proportional

__version__ = '0.1.0'
