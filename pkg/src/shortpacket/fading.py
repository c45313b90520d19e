"""Quasi-static fading metrics: outage probability and outage capacity,
the finite-blocklength error probability obtained by averaging the Gaussian
tail over the fading gain, MIMO outage by Monte-Carlo, diversity versus
multiplexing tradeoff curves, and the noncoherent block-fading pre-log.

Fading formulas count complex channel uses throughout: capacity of a
realization with power gain g is log2(1 + g * snr) bits per complex symbol.
In the quasi-static regime the error probability converges to the outage
probability as blocklength grows -- fading, not thermal noise, dominates --
and the finite-blocklength penalty is only a modest correction on top.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import quad

from ._rand import check_seed, trial_blocks
from .mcsim import SimReport, _check_trials
from .specfun import q_func

__all__ = [
    "QuasiStaticConfig",
    "BlockFadingConfig",
    "DmtMode",
    "DmtCurve",
    "outage_prob_siso",
    "outage_capacity_siso",
    "eps_quasistatic",
    "outage_prob_mimo_mc",
    "dmt_curve",
    "dmt_eval",
    "noncoherent_prelog",
]

_LOG2_E = math.log2(math.e)
_LN2 = math.log(2.0)
_SQRT2 = math.sqrt(2.0)

_MIMO_BLOCK = 1 << 13


@dataclass(frozen=True)
class QuasiStaticConfig:
    """A quasi-static MIMO link: one fading realization per codeword."""

    snr: float
    m_t: int = 1
    m_r: int = 1

    def __post_init__(self) -> None:
        if not (math.isfinite(self.snr) and self.snr > 0.0):
            raise ValueError(f"snr must be a positive finite linear ratio, got {self.snr!r}")
        if not (isinstance(self.m_t, int) and self.m_t >= 1):
            raise ValueError(f"m_t must be an integer >= 1, got {self.m_t!r}")
        if not (isinstance(self.m_r, int) and self.m_r >= 1):
            raise ValueError(f"m_r must be an integer >= 1, got {self.m_r!r}")


@dataclass(frozen=True)
class BlockFadingConfig:
    """Block fading: l independent coherence blocks of n_c uses each."""

    n_c: int
    l: int

    def __post_init__(self) -> None:
        if not (isinstance(self.n_c, int) and self.n_c >= 1):
            raise ValueError(f"n_c must be an integer >= 1, got {self.n_c!r}")
        if not (isinstance(self.l, int) and self.l >= 1):
            raise ValueError(f"l must be an integer >= 1, got {self.l!r}")

    @property
    def blocklength(self) -> int:
        return self.n_c * self.l

    def m_star(self, m_t: int, m_r: int) -> int:
        """Antennas worth using noncoherently: min(m_t, m_r, floor(n_c/2))."""
        return min(m_t, m_r, self.n_c // 2)


class DmtMode(Enum):
    COHERENT = "coherent"
    NONCOHERENT = "noncoherent"


@dataclass(frozen=True)
class DmtCurve:
    """Piecewise-linear diversity-multiplexing tradeoff.

    breakpoints run from (max diversity, r=0) to (d=0, max multiplexing);
    scaling is the factor applied to the multiplexing axis (1 when channel
    state is known at the receiver).
    """

    breakpoints: tuple[tuple[float, float], ...]
    scaling: float

    def __post_init__(self) -> None:
        ds = [d for d, _ in self.breakpoints]
        rs = [r for _, r in self.breakpoints]
        if len(self.breakpoints) < 2 or any(nxt >= cur for cur, nxt in zip(ds, ds[1:])):
            raise ValueError("breakpoints must have strictly decreasing diversity")
        if any(nxt <= cur for cur, nxt in zip(rs, rs[1:])):
            raise ValueError("breakpoints must have strictly increasing multiplexing")


def outage_prob_siso(snr: float, R: float) -> float:
    """Rayleigh outage probability 1 - exp(-(2^R - 1)/snr).

    R is in bits per complex channel use; R = 0 gives 0 exactly.
    """
    if not (math.isfinite(snr) and snr > 0.0):
        raise ValueError(f"snr must be a positive finite linear ratio, got {snr!r}")
    if not (math.isfinite(R) and R >= 0.0):
        raise ValueError(f"R must be >= 0 and finite, got {R!r}")
    threshold = math.expm1(R * _LN2) / snr
    return -math.expm1(-threshold)


def outage_capacity_siso(snr: float, eps: float) -> float:
    """The rate whose outage probability is exactly eps:
    log2(1 - snr * ln(1 - eps))."""
    if not (math.isfinite(snr) and snr > 0.0):
        raise ValueError(f"snr must be a positive finite linear ratio, got {snr!r}")
    if not (0.0 < eps < 1.0):
        raise ValueError(f"eps must be in (0, 1), got {eps!r}")
    return math.log2(1.0 - snr * math.log1p(-eps))


def _qs_limit_at_zero_gain(R: float, corr: float) -> float:
    # the Gaussian-tail integrand at vanishing power gain
    return 1.0 if R > corr else 0.0


def _qs_integrand(u: float, snr: float, R: float, corr: float, n: float) -> float:
    # after the substitution u = exp(-g) the exponential weight disappears:
    # E_g[f(g)] = integral over u in (0, 1) of f(-ln u)
    if u <= 0.0:
        return 0.0
    if u >= 1.0:
        return _qs_limit_at_zero_gain(R, corr)
    g = -math.log(u)
    if g <= 0.0:
        return _qs_limit_at_zero_gain(R, corr)
    x = snr * g
    c = math.log2(1.0 + x)
    v = x * (2.0 + x) / (1.0 + x) ** 2 * _LOG2_E**2
    if v <= 0.0:
        return _qs_limit_at_zero_gain(R, corr)
    return q_func((c + corr - R) / math.sqrt(v / n))


def eps_quasistatic(snr: float, R: float, n: float) -> float:
    """Finite-blocklength error probability on the quasi-static Rayleigh
    channel: the AWGN Gaussian tail averaged over the exponential power gain,

        E_g[ Q( (C(snr*g) + log2(n)/(2n) - R) / sqrt(V(snr*g)/n) ) ],

    with C and V per complex channel use.  Converges to the outage
    probability as n grows.

    Args:
        snr: linear SNR, > 0.
        R: rate in bits per channel use, > 0.
        n: blocklength, >= 1.
    """
    if not (math.isfinite(snr) and snr > 0.0):
        raise ValueError(f"snr must be a positive finite linear ratio, got {snr!r}")
    if not (math.isfinite(R) and R > 0.0):
        raise ValueError(f"R must be positive and finite, got {R!r}")
    if not (math.isfinite(n) and n >= 1.0):
        raise ValueError(f"n must be >= 1, got {n!r}")
    corr = math.log2(n) / (2.0 * n)
    # the integrand transitions around the gain where capacity meets the
    # rate; hand that point to the adaptive rule
    points = None
    g_star = (2.0 ** (R - corr) - 1.0) / snr
    if g_star > 0.0:
        u_star = math.exp(-g_star)
        if 0.0 < u_star < 1.0:
            points = [u_star]
    val, _ = quad(
        _qs_integrand,
        0.0,
        1.0,
        args=(snr, R, corr, n),
        points=points,
        limit=500,
        epsabs=1e-9,
        epsrel=1e-9,
    )
    return min(max(val, 0.0), 1.0)


def _sample_fading_matrices(
    rng: np.random.Generator, blocks: int, l: int, m_t: int, m_r: int
) -> np.ndarray:
    """Single abstraction point for the fading law: i.i.d. unit-variance
    complex-Gaussian entries (Rayleigh).  Shape (blocks, l, m_t, m_r)."""
    z = rng.standard_normal((blocks, l, m_t, m_r, 2))
    return (z[..., 0] + 1j * z[..., 1]) / _SQRT2


def outage_prob_mimo_mc(
    cfg: QuasiStaticConfig, l: int, R: float, trials: int, seed: int = 0
) -> SimReport:
    """Monte-Carlo outage probability of an isotropic-input MIMO link:

        Pr[ (1/l) * sum_k log2 det(I + (snr/m_t) H_k^H H_k) <= R ]

    over l independent fading blocks per trial.  Deterministic in
    (cfg, l, R, trials, seed).
    """
    if not (isinstance(l, int) and l >= 1):
        raise ValueError(f"l must be an integer >= 1, got {l!r}")
    if not (math.isfinite(R) and R >= 0.0):
        raise ValueError(f"R must be >= 0 and finite, got {R!r}")
    trials = _check_trials(trials)
    seed = check_seed(seed)

    a = cfg.snr / cfg.m_t
    eye = np.eye(cfg.m_r)
    count = 0
    for start, stop, rng in trial_blocks(seed, trials, _MIMO_BLOCK):
        m = stop - start
        h = _sample_fading_matrices(rng, _MIMO_BLOCK, l, cfg.m_t, cfg.m_r)
        gram = eye + a * np.einsum("blti,bltj->blij", h.conj(), h)
        _, logdet = np.linalg.slogdet(gram)
        mi = logdet.mean(axis=1) / _LN2
        count += int(np.count_nonzero(mi[:m] <= R))

    p = count / trials
    return SimReport(
        metric_name="mimo_outage_probability",
        estimate=p,
        std_error=math.sqrt(p * (1.0 - p) / trials),
        trials=trials,
        seed=seed,
        config={
            "snr": cfg.snr,
            "m_t": cfg.m_t,
            "m_r": cfg.m_r,
            "fading_blocks": l,
            "rate": R,
        },
    )


def dmt_curve(m_t: int, m_r: int, mode: DmtMode, n_c: int | None = None) -> DmtCurve:
    """Diversity-multiplexing tradeoff breakpoints (d_k, r_k) for
    k = 0..min(m_t, m_r): d_k = (m_t - k)(m_r - k), r_k = scaling * k.

    Coherent mode has scaling 1 (n_c, if given, must be >= m_t for the
    breakpoints to be achievable).  Noncoherent mode requires n_c, scales
    multiplexing by 1 - m_star/n_c with m_star = min(m_t, m_r, floor(n_c/2)),
    and requires n_c >= 2*m_star + m_r + 1.
    """
    if not (isinstance(m_t, int) and m_t >= 1):
        raise ValueError(f"m_t must be an integer >= 1, got {m_t!r}")
    if not (isinstance(m_r, int) and m_r >= 1):
        raise ValueError(f"m_r must be an integer >= 1, got {m_r!r}")
    if not isinstance(mode, DmtMode):
        raise ValueError(f"mode must be a DmtMode member, got {mode!r}")

    if mode is DmtMode.COHERENT:
        if n_c is not None:
            if not (isinstance(n_c, int) and n_c >= m_t):
                raise ValueError(f"coherent curve requires n_c >= m_t = {m_t}, got {n_c!r}")
        scaling = 1.0
    else:
        if n_c is None:
            raise ValueError("noncoherent curve requires n_c")
        if not (isinstance(n_c, int) and n_c >= 1):
            raise ValueError(f"n_c must be an integer >= 1, got {n_c!r}")
        ms = min(m_t, m_r, n_c // 2)
        needed = 2 * ms + m_r + 1
        if n_c < needed:
            raise ValueError(
                f"noncoherent curve requires n_c >= 2*m_star + m_r + 1 = {needed}, got {n_c}"
            )
        scaling = 1.0 - ms / n_c

    points = tuple(
        (float((m_t - k) * (m_r - k)), scaling * k) for k in range(min(m_t, m_r) + 1)
    )
    return DmtCurve(breakpoints=points, scaling=scaling)


def dmt_eval(curve: DmtCurve, d: float) -> float:
    """Multiplexing gain supported at diversity d: linear interpolation
    between breakpoints, exact at the breakpoints themselves."""
    d_max = curve.breakpoints[0][0]
    if not (math.isfinite(d) and 0.0 <= d <= d_max):
        raise ValueError(f"d must be in [0, {d_max}], got {d!r}")
    ds = [p[0] for p in reversed(curve.breakpoints)]
    rs = [p[1] for p in reversed(curve.breakpoints)]
    return float(np.interp(d, ds, rs))


def noncoherent_prelog(m_t: int, m_r: int, n_c: int) -> float:
    """High-SNR capacity pre-log without receiver channel knowledge:
    m_star * (1 - m_star/n_c), m_star = min(m_t, m_r, floor(n_c/2))."""
    if not (isinstance(m_t, int) and m_t >= 1):
        raise ValueError(f"m_t must be an integer >= 1, got {m_t!r}")
    if not (isinstance(m_r, int) and m_r >= 1):
        raise ValueError(f"m_r must be an integer >= 1, got {m_r!r}")
    if not (isinstance(n_c, int) and n_c >= 1):
        raise ValueError(f"n_c must be an integer >= 1, got {n_c!r}")
    ms = min(m_t, m_r, n_c // 2)
    return ms * (1.0 - ms / n_c)
