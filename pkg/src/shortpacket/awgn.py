"""Gaussian-channel capacity, dispersion, and the normal approximation of
the maximal coding rate at finite blocklength, together with its two
inversions: packet error probability for a given payload and blocklength,
and minimum blocklength for a target error probability.

Rates are in bits per channel use and every logarithm is base 2, including
the log2(n)/(2n) remainder term.  A :class:`Channel` carries the
channel-use convention explicitly: one complex channel use equals two real
dimensions, so the real-dimension convention halves both capacity and
dispersion.  The convention changes short-packet conclusions by orders of
magnitude, which is why it is a required, visible field rather than a
global setting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.special import log_ndtr, ndtr

from .specfun import q_inv

__all__ = [
    "Convention",
    "Channel",
    "CodeSpec",
    "RateResult",
    "capacity",
    "dispersion",
    "rate_na",
    "eps_star",
    "eps_star_log",
    "min_blocklength",
]

_LOG2_E = math.log2(math.e)

# blocklength ceiling for the bracketing search in min_blocklength; the
# error probability is strictly decreasing in n, so this is unreachable
# for any satisfiable target and exists only to bound the loop
_MAX_BLOCKLENGTH = 1 << 50


class Convention(Enum):
    """Channel-use accounting: one complex symbol, or one real dimension."""

    COMPLEX_CU = "complex"
    REAL_CU = "real"


@dataclass(frozen=True)
class Channel:
    """Gaussian channel at a fixed SNR.

    Args:
        snr: linear signal-to-noise power ratio (not dB), > 0.
        convention: channel-use accounting; the real-dimension convention
            halves capacity and dispersion relative to the complex one.
    """

    snr: float
    convention: Convention = Convention.COMPLEX_CU

    def __post_init__(self) -> None:
        if not (isinstance(self.snr, (int, float)) and math.isfinite(self.snr) and self.snr > 0.0):
            raise ValueError(f"snr must be a positive finite linear ratio, got {self.snr!r}")
        if not isinstance(self.convention, Convention):
            raise ValueError(f"convention must be a Convention member, got {self.convention!r}")


@dataclass(frozen=True)
class CodeSpec:
    """A code operating point: k information bits in n channel uses."""

    k: float
    n: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.k) and self.k > 0.0):
            raise ValueError(f"k must be positive and finite, got {self.k!r}")
        if not (math.isfinite(self.n) and self.n > 0.0):
            raise ValueError(f"n must be positive and finite, got {self.n!r}")


@dataclass(frozen=True)
class RateResult:
    """Normal-approximation rate and its additive decomposition.

    The identity rate = capacity - penalty + correction holds exactly
    (same floating-point operations, no re-derivation).
    """

    rate: float
    capacity: float
    dispersion: float
    penalty: float
    correction: float


def capacity(ch: Channel) -> float:
    """Capacity in bits per channel use: log2(1 + snr), halved under REAL_CU."""
    c = math.log2(1.0 + ch.snr)
    return 0.5 * c if ch.convention is Convention.REAL_CU else c


def dispersion(ch: Channel) -> float:
    """Channel dispersion in bits^2 per channel use.

    snr(2 + snr)/(1 + snr)^2 * log2(e)^2 for complex channel uses, halved
    under REAL_CU (exactly, so the two conventions stay consistent).
    """
    v = ch.snr * (2.0 + ch.snr) / (1.0 + ch.snr) ** 2 * _LOG2_E**2
    return 0.5 * v if ch.convention is Convention.REAL_CU else v


def rate_na(ch: Channel, n: float, eps: float) -> RateResult:
    """Maximal coding rate supported at blocklength n and error probability eps.

    rate = C - sqrt(V/n) * Qinv(eps) + log2(n)/(2n), in bits per channel use.

    Args:
        ch: channel (fixes C and V, including the convention).
        n: blocklength in channel uses, > 0 (real-valued is allowed).
        eps: target packet error probability, in (0, 1).
    """
    if not (math.isfinite(n) and n > 0.0):
        raise ValueError(f"blocklength must be positive and finite, got {n!r}")
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must be in (0, 1), got {eps!r}")
    cap = capacity(ch)
    disp = dispersion(ch)
    penalty = math.sqrt(disp / n) * q_inv(eps)
    correction = math.log2(n) / (2.0 * n)
    return RateResult(
        rate=cap - penalty + correction,
        capacity=cap,
        dispersion=disp,
        penalty=penalty,
        correction=correction,
    )


def _tail_args(ch: Channel, k, n) -> np.ndarray:
    # (nC - k + log2(n)/2) / sqrt(nV); array-safe in k and n
    c = capacity(ch)
    v = dispersion(ch)
    k = np.asarray(k, dtype=float)
    n = np.asarray(n, dtype=float)
    return (n * c - k + 0.5 * np.log2(n)) / np.sqrt(n * v)


def _eps_star_grid(ch: Channel, k, n) -> np.ndarray:
    """Vectorized error probability over arrays of k and/or n (internal)."""
    return ndtr(-_tail_args(ch, k, n))


def eps_star(ch: Channel, code: CodeSpec) -> float:
    """Packet error probability of the best code with k bits in n uses.

    Evaluates Q((nC - k + log2(n)/2) / sqrt(nV)); strictly decreasing in n,
    strictly increasing in k.
    """
    return float(_eps_star_grid(ch, code.k, code.n))


def eps_star_log(ch: Channel, code: CodeSpec) -> float:
    """Natural log of eps_star, finite even where eps_star underflows to 0."""
    return float(log_ndtr(-_tail_args(ch, code.k, code.n)))


def min_blocklength(ch: Channel, k: float, eps_target: float) -> int:
    """Smallest integer n with eps_star(ch, (k, n)) <= eps_target.

    Bracket by doubling, then bisect; both steps lean on eps_star being
    strictly decreasing in n.
    """
    if not (math.isfinite(k) and k > 0.0):
        raise ValueError(f"k must be positive and finite, got {k!r}")
    if not (0.0 < eps_target < 1.0):
        raise ValueError(f"eps_target must be in (0, 1), got {eps_target!r}")

    def eps_at(n: int) -> float:
        return float(_eps_star_grid(ch, k, n))

    if eps_at(1) <= eps_target:
        return 1
    lo, hi = 1, 2
    while eps_at(hi) > eps_target:
        lo, hi = hi, hi * 2
        if hi > _MAX_BLOCKLENGTH:
            raise ValueError(
                f"no blocklength up to {_MAX_BLOCKLENGTH} meets eps_target={eps_target!r}"
            )
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if eps_at(mid) <= eps_target:
            hi = mid
        else:
            lo = mid
    return hi
