"""Phase-space laboratory for classical and quantum light.

Characteristic functions and quasiprobabilities of truncated Fock states,
classical amplitude ensembles, beam-splitter and loss channels in both
pictures, nonclassicality criteria, and numerical covariance checks of the
filter families.
"""

from .classical_fields import BeamSplitterParams, ClassicalEnsemble
from .fock_core import DensityMatrix, make_coherent, make_fock, make_thermal
from .phase_filters import FilterSpec

__all__ = [
    "BeamSplitterParams",
    "ClassicalEnsemble",
    "DensityMatrix",
    "FilterSpec",
    "make_coherent",
    "make_fock",
    "make_thermal",
]
