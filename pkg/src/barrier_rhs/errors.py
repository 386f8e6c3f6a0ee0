"""Exception types raised by the numerical routines."""


class BarrierError(Exception):
    """Base class for all errors raised by this package."""


class ZeroWavenumber(BarrierError):
    """Amplitudes requested at the k = 0 threshold, where they are undefined."""


class OnCut(BarrierError):
    """Resolvent requested on the spectrum [0, inf) of the Hamiltonian."""


class TransmissionZero(BarrierError):
    """T(k) vanishes, so the unified Green function is singular."""


class QuadratureFailure(BarrierError):
    """A quadrature did not reach its requested tolerance."""


class ExtrapolationUnstable(BarrierError):
    """Richardson extrapolation in epsilon did not settle toward a limit."""


class TailMass(BarrierError):
    """Spectral data carry non-negligible weight at the edge of the grid."""
