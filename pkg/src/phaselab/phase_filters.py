"""Filter functions Omega(beta) and filtered characteristic functions.

A filter is either the s-parameterized Gaussian exp(s|beta|^2/2) (s=1: P,
s=0: Wigner, s=-1: Q) or a finite exponential series
exp(sum c_kl beta^k beta*^l) with c_00 = 0 so that Omega(0) = 1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import lgamma, log

import numpy as np
from scipy.special import eval_genlaguerre

from .errors import CutoffTooSmall, DimensionMismatch
from .fock_core import DensityMatrix, effective_dim, mode_occupations

TAIL_TOL = 1e-12


@dataclass(frozen=True)
class FilterSpec:
    """Quasiprobability family selector.

    Exactly one representation is active: ``s`` for the Gaussian family, or
    ``coeffs`` as a tuple of (k, l, c_kl) for the exponential series.
    """

    s: float | None = None
    coeffs: tuple[tuple[int, int, complex], ...] | None = None

    def __post_init__(self):
        if (self.s is None) == (self.coeffs is None):
            raise ValueError("specify exactly one of s or coeffs")
        if self.coeffs is not None:
            clean = []
            for k, l, c in self.coeffs:
                k, l, c = int(k), int(l), complex(c)
                if k < 0 or l < 0:
                    raise ValueError("series powers must be nonnegative")
                if (k, l) == (0, 0) and c != 0:
                    raise ValueError("c_00 must vanish so that Omega(0) = 1")
                if c != 0:
                    clean.append((k, l, c))
            object.__setattr__(self, "coeffs", tuple(sorted(clean, key=lambda t: t[:2])))
        else:
            object.__setattr__(self, "s", float(self.s))

    @classmethod
    def s_param(cls, s: float) -> "FilterSpec":
        return cls(s=s)

    @classmethod
    def general(cls, coeffs: dict) -> "FilterSpec":
        return cls(coeffs=tuple((k, l, c) for (k, l), c in coeffs.items()))

    def exponent(self, beta):
        """Exponent of the filter at beta (scalar or array)."""
        beta = np.asarray(beta, dtype=complex)
        if self.s is not None:
            return self.s * np.abs(beta) ** 2 / 2
        acc = np.zeros(beta.shape, dtype=complex)
        bc = beta.conjugate()
        for k, l, c in self.coeffs:
            acc = acc + c * beta**k * bc**l
        return acc

    def as_s(self) -> float | None:
        """The equivalent s-parameter, or None if not in the Gaussian family."""
        if self.s is not None:
            return self.s
        if not self.coeffs:
            return 0.0
        if len(self.coeffs) == 1:
            k, l, c = self.coeffs[0]
            if (k, l) == (1, 1) and abs(c.imag) < 1e-15:
                return 2 * c.real
        return None

    def describe(self) -> dict:
        if self.s is not None:
            return {"s": self.s}
        return {
            "coeffs": [
                {"k": k, "l": l, "re": c.real, "im": c.imag} for k, l, c in self.coeffs
            ]
        }


def filter_from_json(obj: dict | str) -> FilterSpec:
    if isinstance(obj, str):
        obj = json.loads(obj)
    if "s" in obj:
        return FilterSpec.s_param(float(obj["s"]))
    return FilterSpec.general(
        {(e["k"], e["l"]): complex(e.get("re", 0.0), e.get("im", 0.0)) for e in obj["coeffs"]}
    )


def eval_filter(f: FilterSpec, beta):
    """Omega(beta); vectorizes over arrays of beta."""
    out = np.exp(f.exponent(beta))
    return complex(out) if out.ndim == 0 else out


def _check_trust(dim: int, top_occupation: float, beta: np.ndarray):
    """Reject betas where truncation can corrupt Tr(rho D(beta)).

    The closed-form Laguerre elements make the sum over occupied levels
    exact, so the check only bites when the top level carries weight (the
    stored matrix visibly truncates a larger state). There the first
    neglected displacement element e^{-|b|^2/2} |b|^dim / sqrt(dim!) must
    stay below TAIL_TOL.
    """
    if top_occupation <= 1e-10:
        return
    mag = np.abs(np.asarray(beta, dtype=complex))
    big = mag[mag > 0]
    if big.size == 0:
        return
    log_tail = -big**2 / 2 + dim * np.log(big) - 0.5 * lgamma(dim + 1)
    worst = float(log_tail.max())
    if worst > log(TAIL_TOL):
        raise CutoffTooSmall(
            f"|beta| = {big[log_tail.argmax()]:.3f} outside the trust radius for "
            f"a state occupying its top level at dim {dim}"
        )


def displacement_stack(dim: int, beta: np.ndarray) -> np.ndarray:
    """<m|D(b)|n> for m, n < dim over a flat array of betas; shape (dim, dim, N)."""
    beta = np.asarray(beta, dtype=complex).ravel()
    x = np.abs(beta) ** 2
    damp = np.exp(-x / 2)
    out = np.empty((dim, dim, beta.size), dtype=complex)
    for m in range(dim):
        for n in range(m + 1):
            pref = np.exp(0.5 * (lgamma(n + 1) - lgamma(m + 1)))
            lag = eval_genlaguerre(n, m - n, x)
            out[m, n] = pref * beta ** (m - n) * damp * lag
            if m != n:
                out[n, m] = pref * (-beta.conjugate()) ** (m - n) * damp * lag
    return out


def symmetric_charfunc(rho: DensityMatrix, beta):
    """Tr(rho D(beta)), the unfiltered (Wigner) characteristic function."""
    if rho.n_modes != 1:
        raise DimensionMismatch("symmetric_charfunc expects a single-mode state")
    beta_arr = np.asarray(beta, dtype=complex)
    d = effective_dim(rho)
    occ = np.maximum(
        np.max(np.abs(rho.entries), axis=0), np.max(np.abs(rho.entries), axis=1)
    )
    _check_trust(rho.dim, float(occ[-1]), beta_arr)
    stack = displacement_stack(d, beta_arr.ravel())
    vals = np.einsum("nm,mnk->k", rho.entries[:d, :d], stack)
    vals = vals.reshape(beta_arr.shape)
    return complex(vals) if vals.ndim == 0 else vals


def filtered_charfunc(rho: DensityMatrix, f: FilterSpec, beta):
    """Phi_Omega(beta) = Tr(rho D(beta)) Omega(beta)."""
    return symmetric_charfunc(rho, beta) * np.exp(f.exponent(beta))


def two_mode_charfunc(rho12: DensityMatrix, f: FilterSpec, beta3, beta4):
    """Tr(rho D(b3) x D(b4)) Omega(b3) Omega(b4) for a two-mode state."""
    if rho12.n_modes != 2:
        raise DimensionMismatch("two_mode_charfunc expects a two-mode state")
    b3, b4 = np.broadcast_arrays(
        np.asarray(beta3, dtype=complex), np.asarray(beta4, dtype=complex)
    )
    d = rho12.dim
    d1, d2 = mode_occupations(rho12)
    e_full = np.abs(rho12.entries.reshape(d, d, d, d))
    diag = np.einsum("mpmp->mp", e_full)
    _check_trust(d, float(diag[-1, :].sum()), b3)
    _check_trust(d, float(diag[:, -1].sum()), b4)
    s3 = displacement_stack(d1, b3.ravel())
    s4 = displacement_stack(d2, b4.ravel())
    e = rho12.entries.reshape(d, d, d, d)[:d1, :d2, :d1, :d2]
    vals = np.einsum("nqmp,mnk,pqk->k", e, s3, s4)
    vals = vals.reshape(b3.shape) * np.exp(f.exponent(b3) + f.exponent(b4))
    return complex(vals) if vals.ndim == 0 else vals


def vacuum_charfunc(f: FilterSpec, beta):
    """Filtered vacuum characteristic function e^{-|b|^2/2} Omega(b).

    Evaluated through a single combined exponent so the s = 1 case is
    identically one in floating point.
    """
    beta = np.asarray(beta, dtype=complex)
    out = np.exp(-np.abs(beta) ** 2 / 2 + f.exponent(beta))
    return complex(out) if out.ndim == 0 else out
