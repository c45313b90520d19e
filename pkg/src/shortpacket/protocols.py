"""Short-packet protocol analyses built on the finite-blocklength error
probability: two-way exchange optimization, TDD round throughput, downlink
broadcast strategies, and framed slotted ALOHA.

Every protocol here trades the same quantity: at fixed total resources,
longer packets decode more reliably but carry fewer per-link channel uses
(or collide more often).  The optimizers do exhaustive or monotone searches
over small integer spaces, so results are exact for the model rather than
local optima.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .awgn import Channel, CodeSpec, _eps_star_grid, eps_star, eps_star_log

__all__ = [
    "TwoWayConfig",
    "TwoWayResult",
    "TddResult",
    "DownlinkConfig",
    "DownlinkResult",
    "AlohaConfig",
    "AlohaOptResult",
    "twoway_reliability",
    "twoway_optimize",
    "twoway_tdd_eval",
    "downlink_compare",
    "aloha_success",
    "aloha_optimize",
]


@dataclass(frozen=True)
class TwoWayConfig:
    """Two-way packet exchange: k1 bits one way, k2 bits back.

    Exactly one of n_total (maximize reliability at fixed total blocklength)
    or target_reliability (minimize total blocklength) must be set before
    calling twoway_optimize; twoway_reliability needs neither.
    """

    k1: float
    k2: float
    ch: Channel
    n_total: int | None = None
    target_reliability: float | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.k1) and self.k1 > 0.0):
            raise ValueError(f"k1 must be positive and finite, got {self.k1!r}")
        if not (math.isfinite(self.k2) and self.k2 > 0.0):
            raise ValueError(f"k2 must be positive and finite, got {self.k2!r}")
        if not isinstance(self.ch, Channel):
            raise ValueError(f"ch must be a Channel, got {self.ch!r}")
        if self.n_total is not None:
            if not (isinstance(self.n_total, int) and self.n_total >= 2):
                raise ValueError(f"n_total must be an integer >= 2, got {self.n_total!r}")
        if self.target_reliability is not None:
            if not 0.0 < self.target_reliability < 1.0:
                raise ValueError(
                    f"target_reliability must be in (0, 1), got {self.target_reliability!r}"
                )
        if self.n_total is not None and self.target_reliability is not None:
            raise ValueError("set at most one of n_total and target_reliability")


@dataclass(frozen=True)
class TwoWayResult:
    """Optimized exchange.  When feasible is False (target unreachable below
    the search ceiling), the remaining fields describe the best split found
    at the ceiling."""

    feasible: bool
    n: int
    n1: int
    n2: int
    reliability: float
    throughput: float


@dataclass(frozen=True)
class TddResult:
    """One TDD round: packet error probability and per-use throughput."""

    eps: float
    throughput: float


@dataclass(frozen=True)
class DownlinkConfig:
    """Downlink broadcast to M devices, D bits each, per-device slot n."""

    M: int
    D: float
    n: float
    ch: Channel

    def __post_init__(self) -> None:
        if not (isinstance(self.M, int) and self.M >= 1):
            raise ValueError(f"M must be an integer >= 1, got {self.M!r}")
        if not (math.isfinite(self.D) and self.D > 0.0):
            raise ValueError(f"D must be positive and finite, got {self.D!r}")
        if not (math.isfinite(self.n) and self.n >= 1.0):
            raise ValueError(f"n must be >= 1, got {self.n!r}")
        if not isinstance(self.ch, Channel):
            raise ValueError(f"ch must be a Channel, got {self.ch!r}")

    @property
    def frame_length(self) -> float:
        return self.M * self.n

    @property
    def total_bits(self) -> float:
        return self.M * self.D


@dataclass(frozen=True)
class DownlinkResult:
    """Per-device error probability of the two broadcast strategies over the
    same frame: one short packet per device (TDMA) versus one long packet
    carrying every payload (concatenation).  log_eps_concat stays finite
    when eps_concat underflows."""

    eps_tdma: float
    eps_concat: float
    log_eps_concat: float
    per_device_decoded_bits: float


@dataclass(frozen=True)
class AlohaConfig:
    """Framed slotted ALOHA: M devices, D bits per packet, frame of n
    channel uses split into K slots.  K may be left unset when it is the
    optimization variable."""

    M: int
    D: float
    n: float
    ch: Channel
    K: int | None = None

    def __post_init__(self) -> None:
        if not (isinstance(self.M, int) and self.M >= 1):
            raise ValueError(f"M must be an integer >= 1, got {self.M!r}")
        if not (math.isfinite(self.D) and self.D > 0.0):
            raise ValueError(f"D must be positive and finite, got {self.D!r}")
        if not (math.isfinite(self.n) and self.n >= 1.0):
            raise ValueError(f"n must be >= 1, got {self.n!r}")
        if not isinstance(self.ch, Channel):
            raise ValueError(f"ch must be a Channel, got {self.ch!r}")
        if self.K is not None and not (isinstance(self.K, int) and self.K >= 1):
            raise ValueError(f"K must be an integer >= 1, got {self.K!r}")

    @property
    def slot_length(self) -> float:
        """Real-valued slot length n/K (the simulator floors it)."""
        if self.K is None:
            raise ValueError("slot_length requires K to be set")
        return self.n / self.K


@dataclass(frozen=True)
class AlohaOptResult:
    """Optimal slot count and the full (K, success probability) profile."""

    k_opt: int
    profile: tuple[tuple[int, float], ...]


def twoway_reliability(cfg: TwoWayConfig, n1: int, n2: int) -> float:
    """Probability both packets of the exchange decode: the product
    (1 - eps*(k1, n1)) * (1 - eps*(k2, n2))."""
    if n1 < 1 or n2 < 1:
        raise ValueError(f"n1 and n2 must be >= 1, got {n1}, {n2}")
    e1 = eps_star(cfg.ch, CodeSpec(cfg.k1, float(n1)))
    e2 = eps_star(cfg.ch, CodeSpec(cfg.k2, float(n2)))
    return (1.0 - e1) * (1.0 - e2)


def _best_split(cfg: TwoWayConfig, n: int) -> tuple[int, float]:
    # exhaustive scan over n1 = 1..n-1; first argmax, so ties land on
    # the smaller n1 (and on n/2 when the objective is symmetric)
    n1 = np.arange(1, n, dtype=float)
    e1 = _eps_star_grid(cfg.ch, cfg.k1, n1)
    e2 = _eps_star_grid(cfg.ch, cfg.k2, float(n) - n1)
    rel = (1.0 - e1) * (1.0 - e2)
    i = int(np.argmax(rel))
    return int(n1[i]), float(rel[i])


def twoway_optimize(cfg: TwoWayConfig, k_i1: float, n_ceiling: int = 1_000_000) -> TwoWayResult:
    """Optimize the blocklength split of a two-way exchange.

    With cfg.n_total set: maximize exchange reliability over all splits
    n1 + n2 = n_total (ties go to the smaller n1).  With
    cfg.target_reliability set: find the smallest total n whose best split
    meets the target; if no n <= n_ceiling does, the result has
    feasible=False and reports the best split at the ceiling.

    Args:
        cfg: exchange description carrying exactly one objective.
        k_i1: information bits credited per successful exchange, > 0;
            throughput = reliability * k_i1 / n.
        n_ceiling: giving-up point for the minimum-blocklength search.
    """
    if not (math.isfinite(k_i1) and k_i1 > 0.0):
        raise ValueError(f"k_i1 must be positive and finite, got {k_i1!r}")
    if (cfg.n_total is None) == (cfg.target_reliability is None):
        raise ValueError("exactly one of n_total and target_reliability must be set")

    if cfg.n_total is not None:
        n = cfg.n_total
        n1, rel = _best_split(cfg, n)
        return TwoWayResult(
            feasible=True,
            n=n,
            n1=n1,
            n2=n - n1,
            reliability=rel,
            throughput=rel * k_i1 / n,
        )

    target = cfg.target_reliability
    if n_ceiling < 2:
        raise ValueError(f"n_ceiling must be >= 2, got {n_ceiling!r}")

    # bracket by doubling, then bisect; the best achievable reliability is
    # nondecreasing in n (any split at n is available at n+1 with one spare
    # use added where it cannot hurt)
    lo = 1
    hi = 2
    _, rel = _best_split(cfg, hi)
    while rel <= target:
        if hi >= n_ceiling:
            n1, rel = _best_split(cfg, n_ceiling)
            return TwoWayResult(
                feasible=False,
                n=n_ceiling,
                n1=n1,
                n2=n_ceiling - n1,
                reliability=rel,
                throughput=rel * k_i1 / n_ceiling,
            )
        lo = hi
        hi = min(hi * 2, n_ceiling)
        _, rel = _best_split(cfg, hi)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        _, rel = _best_split(cfg, mid)
        if rel > target:
            hi = mid
        else:
            lo = mid
    n1, rel = _best_split(cfg, hi)
    return TwoWayResult(
        feasible=True,
        n=hi,
        n1=n1,
        n2=hi - n1,
        reliability=rel,
        throughput=rel * k_i1 / hi,
    )


def twoway_tdd_eval(k: float, k_i: float, n_slot: float, ch: Channel) -> TddResult:
    """One TDD round: k total bits (payload plus protocol overhead) in a
    slot of n_slot uses, of which k_i are credited information bits.

    throughput = (1 - eps*(k, n_slot)) * k_i / n_slot.
    """
    if not (math.isfinite(k_i) and 0.0 < k_i <= k):
        raise ValueError(f"k_i must satisfy 0 < k_i <= k, got k_i={k_i!r}, k={k!r}")
    eps = eps_star(ch, CodeSpec(k, n_slot))
    return TddResult(eps=eps, throughput=(1.0 - eps) * k_i / n_slot)


def downlink_compare(cfg: DownlinkConfig) -> DownlinkResult:
    """Per-device error probability: M short packets of (D, n) versus one
    concatenated packet of (M*D, M*n) occupying the same frame."""
    eps_tdma = eps_star(cfg.ch, CodeSpec(cfg.D, cfg.n))
    log_concat = eps_star_log(cfg.ch, CodeSpec(cfg.M * cfg.D, cfg.M * cfg.n))
    return DownlinkResult(
        eps_tdma=eps_tdma,
        eps_concat=math.exp(log_concat),
        log_eps_concat=log_concat,
        per_device_decoded_bits=cfg.M * cfg.D,
    )


def _aloha_profile(cfg: AlohaConfig, ks: np.ndarray, perfect: bool) -> np.ndarray:
    # p_success(K) = (M/K)(1 - 1/K)^(M-1) * (1 - eps*(D, n/K));
    # expected successful packets per slot, which is also the per-slot
    # throughput of the frame
    ks = ks.astype(float)
    collision = (cfg.M / ks) * (1.0 - 1.0 / ks) ** (cfg.M - 1)
    if perfect:
        return collision
    eps = _eps_star_grid(cfg.ch, cfg.D, cfg.n / ks)
    return collision * (1.0 - eps)


def aloha_success(cfg: AlohaConfig, assume_perfect_decoding: bool = False) -> float:
    """Per-slot success probability of framed slotted ALOHA at the
    configured slot count K.

    assume_perfect_decoding drops the finite-blocklength decoding factor,
    leaving only the collision term.
    """
    if cfg.K is None:
        raise ValueError("aloha_success requires cfg.K to be set")
    return float(_aloha_profile(cfg, np.array([cfg.K]), assume_perfect_decoding)[0])


def aloha_optimize(
    cfg: AlohaConfig, k_max: int | None = None, assume_perfect_decoding: bool = False
) -> AlohaOptResult:
    """Exhaustive search for the slot count maximizing per-slot success.

    Scans K = 1..k_max (default 4*M); ties go to the smaller K.  Returns
    the winner and the full profile for inspection or plotting.
    """
    if k_max is None:
        k_max = 4 * cfg.M
    if not (isinstance(k_max, int) and k_max >= 1):
        raise ValueError(f"k_max must be an integer >= 1, got {k_max!r}")
    ks = np.arange(1, k_max + 1)
    ps = _aloha_profile(cfg, ks, assume_perfect_decoding)
    i = int(np.argmax(ps))
    profile = tuple((int(k), float(p)) for k, p in zip(ks, ps))
    return AlohaOptResult(k_opt=int(ks[i]), profile=profile)
