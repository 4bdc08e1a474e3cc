"""Classical monochromatic fields, weighted amplitude ensembles, and the
beam-splitter/attenuator maps they obey.

Ensembles are finite weighted point sets (delta mixtures): every classical
map here is linear in the density, so point masses exercise the formulas
exactly with no quadrature error.
"""
from __future__ import annotations

import cmath
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateSplitter,
    DimensionMismatch,
    GainNotAllowed,
    InvalidWeights,
    NonUnitaryBeamSplitter,
)

UNITARITY_TOL = 1e-12


@dataclass(frozen=True)
class BeamSplitterParams:
    """Complex transmittance/reflectance of a lossless beam splitter.

    The amplitude matrix is [[t, r], [-r*, t*]] e^{i phi_U}; the global
    phase is kept in the type but fixed to 0 by default.
    """

    t: complex
    r: complex
    phi_U: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "t", complex(self.t))
        object.__setattr__(self, "r", complex(self.r))
        if abs(abs(self.t) ** 2 + abs(self.r) ** 2 - 1.0) > UNITARITY_TOL:
            raise NonUnitaryBeamSplitter(
                f"|t|^2 + |r|^2 = {abs(self.t)**2 + abs(self.r)**2} != 1"
            )

    def matrix(self) -> np.ndarray:
        u = np.array(
            [[self.t, self.r], [-self.r.conjugate(), self.t.conjugate()]],
            dtype=complex,
        )
        return u * cmath.exp(1j * self.phi_U)


@dataclass(frozen=True)
class ClassicalEnsemble:
    """Weighted list of field amplitudes; samples are (amplitudes, weight).

    For a single mode each amplitude tuple has one entry, for joint two-mode
    ensembles two.
    """

    samples: tuple[tuple[tuple[complex, ...], float], ...]
    n_modes: int = 1

    def __post_init__(self):
        if not self.samples:
            raise InvalidWeights("ensemble needs at least one sample")
        clean = []
        total = 0.0
        for amps, w in self.samples:
            amps = tuple(complex(a) for a in amps)
            if len(amps) != self.n_modes:
                raise DimensionMismatch(
                    f"sample has {len(amps)} amplitudes, expected {self.n_modes}"
                )
            if w < 0:
                raise InvalidWeights("weights must be nonnegative")
            total += w
            clean.append((amps, float(w)))
        if abs(total - 1.0) > 1e-12:
            raise InvalidWeights(f"weights sum to {total}, expected 1")
        object.__setattr__(self, "samples", tuple(clean))

    @classmethod
    def single(cls, pairs) -> "ClassicalEnsemble":
        return cls(tuple(((complex(a),), float(w)) for a, w in pairs), n_modes=1)

    @classmethod
    def two_mode(cls, triples) -> "ClassicalEnsemble":
        return cls(
            tuple(((complex(a1), complex(a2)), float(w)) for a1, a2, w in triples),
            n_modes=2,
        )


def field_at_time(alpha: complex, omega: float, tau: float) -> float:
    """Real field E(tau) = alpha e^{i w tau} + c.c."""
    return float((alpha * cmath.exp(1j * omega * tau)).real * 2)


def classical_beamsplit(
    alpha1: complex, alpha2: complex, bs: BeamSplitterParams
) -> tuple[complex, complex]:
    """Output amplitudes (alpha3, alpha4) of the splitter."""
    out = bs.matrix() @ np.array([alpha1, alpha2], dtype=complex)
    return complex(out[0]), complex(out[1])


def solve_missing_amplitudes(
    alpha1: complex, alpha3: complex, bs: BeamSplitterParams
) -> tuple[complex, complex]:
    """Recover (alpha2, alpha4) from one input and one output amplitude."""
    if bs.r == 0:
        raise DegenerateSplitter("inverse solve requires r != 0")
    m = (
        np.array(
            [
                [-bs.t, cmath.exp(-1j * bs.phi_U)],
                [-cmath.exp(1j * bs.phi_U), bs.t.conjugate()],
            ],
            dtype=complex,
        )
        / bs.r
    )
    out = m @ np.array([alpha1, alpha3], dtype=complex)
    return complex(out[0]), complex(out[1])


def ensemble_beamsplit(
    ens12: ClassicalEnsemble, bs: BeamSplitterParams
) -> ClassicalEnsemble:
    """Sample-wise image of the joint density under the splitter."""
    if ens12.n_modes != 2:
        raise DimensionMismatch("ensemble_beamsplit expects a two-mode ensemble")
    out = []
    for (a1, a2), w in ens12.samples:
        a3, a4 = classical_beamsplit(a1, a2, bs)
        out.append((a3, a4, w))
    return ClassicalEnsemble.two_mode(out)


def classical_attenuate(ens: ClassicalEnsemble, t: complex) -> ClassicalEnsemble:
    """Scale every amplitude by the transmittance t, |t| <= 1."""
    if ens.n_modes != 1:
        raise DimensionMismatch("classical_attenuate expects a single-mode ensemble")
    t = complex(t)
    if t == 0:
        raise DegenerateSplitter("attenuation by t = 0 is degenerate")
    if abs(t) > 1 + 1e-15:
        raise GainNotAllowed(f"|t| = {abs(t)} > 1")
    return ClassicalEnsemble.single(((t * a[0], w) for a, w in ens.samples))


def classical_moments(ens: ClassicalEnsemble, m: int, n: int) -> complex:
    """Weighted moment sum_i w_i (a_i^*)^m a_i^n."""
    if ens.n_modes != 1:
        raise DimensionMismatch("classical_moments expects a single-mode ensemble")
    acc = 0j
    for (a,), w in ens.samples:
        acc += w * (a.conjugate() ** m) * (a**n)
    return acc


def save_ensemble(ens: ClassicalEnsemble) -> dict:
    if ens.n_modes == 1:
        return {
            "samples": [
                {"re": a[0].real, "im": a[0].imag, "w": w} for a, w in ens.samples
            ]
        }
    return {
        "samples": [
            {
                "re1": a[0].real,
                "im1": a[0].imag,
                "re2": a[1].real,
                "im2": a[1].imag,
                "w": w,
            }
            for a, w in ens.samples
        ],
        "n_modes": 2,
    }


def load_ensemble(obj: dict | str) -> ClassicalEnsemble:
    if isinstance(obj, str):
        obj = json.loads(obj)
    samples = obj["samples"]
    if obj.get("n_modes", 1) == 2 or (samples and "re1" in samples[0]):
        return ClassicalEnsemble.two_mode(
            (
                complex(s["re1"], s["im1"]),
                complex(s["re2"], s["im2"]),
                s["w"],
            )
            for s in samples
        )
    return ClassicalEnsemble.single(
        (complex(s["re"], s["im"]), s["w"]) for s in samples
    )
