"""Exact and numerical verification of rigidity and modularity for Lefschetz
numbers of twisted Dirac operators built from Jacobi theta functions."""
from .errors import DomainError, FixtureError, PoleProximityError, PrefactorMismatch
from .exact_algebra import GaussRat, LaurentPolyZ, QSeries, RatFunZ
from .fixture_io import bundled_fixture, load_fixture
from .lefschetz_core import (
    FixedPointComponent,
    ManifoldFixture,
    anomaly_report,
    lefschetz_eval,
    lefschetz_qexpansion,
    rigidity_check,
)
from .theta_engine import ModuliPoint, ThetaKind, theta_eval, theta_prime0

__version__ = "0.1.0"
