"""Bound states of the Dirichlet Laplacian in twisted, sheared straight waveguides."""

from ._backend import BACKEND
from .assembly import BandedPencil, Grid1D, assemble_coupled, assemble_effective_1d
from .cross_section import (
    CouplingMoments,
    MaskedGrid,
    Mode,
    Moments,
    Rectangle,
    coupling_moments,
    first_eigenpair,
    mode_basis,
    moments,
)
from .eigen import SpectralResult, dense_oracle, eigenvector, eigs_below, inertia
from .geometry import WaveguideParams, map_point, metric, surface_mesh
from .potential import PotentialSpec, Theorem2Report, integral_V, witness_energy
from .solver import analyze
from .twist import Bump, Tabulated, Tanh, verify_asymptotic

__version__ = "0.1.0"
