"""Rectangular-barrier scattering theory: amplitudes, eigenfunctions, resolvents,
spectral measures and the energy/momentum/wave-number transforms."""

import os as _os

# BARRIER_RHS_THREADS caps BLAS/OpenMP threads; it must be applied before numpy loads
if _os.environ.get("BARRIER_RHS_THREADS", "").isdigit():
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _os.environ["BARRIER_RHS_THREADS"])

from .core import EnergyPoint, PhysicalConfig, branch_sqrt, energy_point, physical_wavenumber, wavenumber_point
from .errors import (BarrierError, ExtrapolationUnstable, OnCut, QuadratureFailure, TailMass,
                     TransmissionZero, ZeroWavenumber)

__version__ = "0.1.0"
