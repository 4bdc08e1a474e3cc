"""Domain errors shared across the package.

Every error carries a machine-readable ``name`` (the class name) used by the
CLI error envelope.
"""


class DomainError(Exception):
    @property
    def name(self) -> str:
        return type(self).__name__


class CutoffTooSmall(DomainError):
    """Fock truncation cannot represent the requested object accurately."""


class DimensionMismatch(DomainError):
    """Operands live on incompatible Fock spaces."""


class InvalidWeights(DomainError):
    """Mixture weights are negative or do not sum to one."""


class NonUnitaryBeamSplitter(DomainError):
    """|t|^2 + |r|^2 deviates from 1 beyond tolerance."""


class DegenerateSplitter(DomainError):
    """Operation requires r != 0 (or t != 0)."""


class GainNotAllowed(DomainError):
    """Attenuator transmittance with |t| > 1 (active optics)."""


class SingularPFunction(DomainError):
    """Characteristic function does not decay at the lattice boundary."""


class GridTooCoarse(DomainError):
    """Lattice step violates the Nyquist guard for the requested output."""


class TrustRadiusExceeded(DomainError):
    """Pulled-back argument left the region where the truncated
    characteristic function is accurate."""
