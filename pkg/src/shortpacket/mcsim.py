"""Seeded packet-level Monte-Carlo simulators for the protocol analyses.

Decoding is abstracted as a Bernoulli failure with the finite-blocklength
error probability of the packet, so these simulators validate the protocol
combinatorics (collisions, split blocklengths, request/response coupling)
independently of the closed-form expressions they are checked against.

Determinism contract: identical (config, seed, trials) produce bit-identical
reports, regardless of execution order, because every trial's draws come
from a counter-based stream keyed by the seed and the trial's block index
(see _rand).  Aggregation uses exact integer accumulation, so it is
order-independent too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from ._rand import check_seed, trial_blocks
from .awgn import CodeSpec, eps_star
from .protocols import AlohaConfig, TwoWayConfig

__all__ = [
    "SimConfigError",
    "SimReport",
    "AlohaSimReports",
    "MIN_TRIALS",
    "sim_aloha",
    "sim_twoway",
]

# below this the normal-theory standard error is not a trustworthy summary
MIN_TRIALS = 10_000

_BLOCK = 1 << 16


class SimConfigError(ValueError):
    """A Monte-Carlo run was configured too weakly to be meaningful."""


@dataclass(frozen=True)
class SimReport:
    """One Monte-Carlo estimate with its provenance.

    config echoes the inputs that produced the estimate so a report is
    self-describing; std_error is the normal-theory standard error of the
    estimate.
    """

    metric_name: str
    estimate: float
    std_error: float
    trials: int
    seed: int
    config: dict[str, Any]


@dataclass(frozen=True)
class AlohaSimReports:
    """The two metrics of one ALOHA run, from the same trials: expected
    successes per slot, and per-device delivery probability.  They satisfy
    per_slot.estimate * K == per_device.estimate * M."""

    per_slot_throughput: SimReport
    per_device_success: SimReport


def _check_trials(trials: int) -> int:
    if not isinstance(trials, (int, np.integer)) or isinstance(trials, bool):
        raise SimConfigError(f"trials must be an integer, got {trials!r}")
    trials = int(trials)
    if trials < MIN_TRIALS:
        raise SimConfigError(f"trials must be >= {MIN_TRIALS}, got {trials}")
    return trials


def sim_aloha(cfg: AlohaConfig, trials: int, seed: int = 0) -> AlohaSimReports:
    """Simulate framed slotted ALOHA for `trials` frames.

    Each frame: every one of the M devices picks one of the K slots
    uniformly; a packet alone in its slot decodes with probability
    1 - eps*(D, floor(n/K)) (collided packets are always lost).

    Draw layout per frame: M slot choices, then M decoding uniforms.
    """
    if cfg.K is None:
        raise ValueError("sim_aloha requires cfg.K to be set")
    trials = _check_trials(trials)
    seed = check_seed(seed)
    n_slot = int(cfg.n // cfg.K)
    if n_slot < 1:
        raise ValueError(f"slot length floor(n/K) must be >= 1, got {n_slot}")
    p_decode = 1.0 - eps_star(cfg.ch, CodeSpec(cfg.D, float(n_slot)))

    sum_s = 0
    sum_s2 = 0
    for start, stop, rng in trial_blocks(seed, trials, _BLOCK):
        m = stop - start
        slots = rng.integers(0, cfg.K, size=(_BLOCK, cfg.M))
        u = rng.random((_BLOCK, cfg.M))
        slots = slots[:m]
        u = u[:m]
        occupancy = (slots[:, :, None] == np.arange(cfg.K)).sum(axis=1)
        alone = np.take_along_axis(occupancy, slots, axis=1) == 1
        success = alone & (u < p_decode)
        s = success.sum(axis=1)
        sum_s += int(s.sum())
        sum_s2 += int((s * s).sum())

    mean_s = sum_s / trials
    if trials > 1:
        var_s = max((sum_s2 - sum_s * sum_s / trials) / (trials - 1), 0.0)
    else:
        var_s = 0.0
    sd_s = math.sqrt(var_s)
    config = {
        "devices": cfg.M,
        "bits_per_packet": cfg.D,
        "frame_length": cfg.n,
        "slots": cfg.K,
        "slot_length": n_slot,
        "snr": cfg.ch.snr,
        "convention": cfg.ch.convention.value,
    }
    per_slot = SimReport(
        metric_name="per_slot_throughput",
        estimate=mean_s / cfg.K,
        std_error=sd_s / (cfg.K * math.sqrt(trials)),
        trials=trials,
        seed=seed,
        config=config,
    )
    per_device = SimReport(
        metric_name="per_device_success",
        estimate=mean_s / cfg.M,
        std_error=sd_s / (cfg.M * math.sqrt(trials)),
        trials=trials,
        seed=seed,
        config=config,
    )
    return AlohaSimReports(per_slot_throughput=per_slot, per_device_success=per_device)


def sim_twoway(cfg: TwoWayConfig, n1: int, n2: int, trials: int, seed: int = 0) -> SimReport:
    """Simulate the two-way exchange at a fixed split (n1, n2).

    Each trial draws two uniforms; leg i fails when its uniform falls below
    eps*(ki, ni), and the exchange succeeds only if both legs decode.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError(f"n1 and n2 must be >= 1, got {n1}, {n2}")
    trials = _check_trials(trials)
    seed = check_seed(seed)
    e1 = eps_star(cfg.ch, CodeSpec(cfg.k1, float(n1)))
    e2 = eps_star(cfg.ch, CodeSpec(cfg.k2, float(n2)))

    successes = 0
    for start, stop, rng in trial_blocks(seed, trials, _BLOCK):
        m = stop - start
        u = rng.random((_BLOCK, 2))[:m]
        ok = (u[:, 0] >= e1) & (u[:, 1] >= e2)
        successes += int(np.count_nonzero(ok))

    p = successes / trials
    return SimReport(
        metric_name="exchange_reliability",
        estimate=p,
        std_error=math.sqrt(p * (1.0 - p) / trials),
        trials=trials,
        seed=seed,
        config={
            "k1": cfg.k1,
            "k2": cfg.k2,
            "n1": n1,
            "n2": n2,
            "snr": cfg.ch.snr,
            "convention": cfg.ch.convention.value,
        },
    )
