"""Sampling oracle for every analytic link metric.

Determinism contract: every reported Estimate is a pure function of
(seed, trials, batch_size, parameters, metric).  Trials are split into
batches; batch b draws from its own counter-based Philox stream keyed by
(seed, b) through a NumPy SeedSequence spawn key, so the draws for a trial
depend only on the seed and the trial's position.  Batch partial sums are
combined with math.fsum, which is exactly rounded and therefore independent
of combination order - running with one worker thread or many produces
bit-identical estimates.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .plc_link import PlcLinkParams, snr_scale
from .relay import RelaySystemParams, rate_to_snr_threshold
from .vlc_link import VlcLinkParams, channel_gain

__all__ = ["METRICS", "MIN_TRIALS", "McConfig", "Estimate", "sample_plc_snr", "sample_vlc_snr", "estimate"]

METRICS = (
    "plc_avg_capacity",
    "vlc_avg_capacity",
    "e2e_avg_capacity",
    "plc_outage",
    "vlc_outage",
    "e2e_outage",
)

MIN_TRIALS = 1_000


@dataclass(frozen=True)
class McConfig:
    """Trial count, seed and reduction granularity of a Monte Carlo run."""

    trials: int
    seed: int = 0
    batch_size: int = 65_536

    def __post_init__(self) -> None:
        if isinstance(self.trials, bool) or not isinstance(self.trials, (int, np.integer)):
            raise ParameterError("McConfig.trials must be an integer")
        if self.trials < MIN_TRIALS:
            raise ParameterError(
                f"McConfig.trials must be at least {MIN_TRIALS} for a reported estimate"
            )
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= int(self.seed) < 2 ** 64:
            raise ParameterError("McConfig.seed must be a 64-bit unsigned integer")
        if not isinstance(self.batch_size, (int, np.integer)) or self.batch_size < 1:
            raise ParameterError("McConfig.batch_size must be a positive integer")


@dataclass(frozen=True)
class Estimate:
    """A Monte Carlo point estimate with its standard error."""

    mean: float
    std_error: float
    trials: int
    seed: int


def sample_plc_snr(p: PlcLinkParams, u):
    """Relay SNR for a unit-normal draw u: a * 10**((mu + sigma*u)/5)."""
    return snr_scale(p) * 10.0 ** ((p.fading_mu_db + p.fading_sigma_db * u) / 5.0)


def sample_vlc_snr(p: VlcLinkParams, v):
    """Destination SNR for a uniform(0,1) draw v.

    The user radius r_k = r * sqrt(v) inverts the disc-uniform location CDF;
    the SNR is (P_r / sigma_d^2) * h(r_k)^2.
    """
    gain = channel_gain(p.cell_radius_m * np.sqrt(v), p)
    return p.tx_power_w / p.noise_variance * gain * gain


def _batch_rng(seed: int, batch_index: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(batch_index,))
    return np.random.Generator(np.random.Philox(sequence))


def _batch_stats(
    metric: str,
    system: RelaySystemParams,
    cfg: McConfig,
    batch_index: int,
    snr_threshold: float,
) -> tuple[float, float, float, float]:
    start = batch_index * cfg.batch_size
    count = min(cfg.batch_size, cfg.trials - start)
    rng = _batch_rng(int(cfg.seed), batch_index)
    # Fixed draw order per batch: normals for the PLC hop, then uniforms for
    # the VLC hop, each only when the metric needs that hop.
    gamma_plc = gamma_vlc = None
    if metric.startswith(("plc", "e2e")):
        gamma_plc = sample_plc_snr(system.plc, rng.standard_normal(count))
    if metric.startswith(("vlc", "e2e")):
        gamma_vlc = sample_vlc_snr(system.vlc, rng.random(count))

    if metric == "plc_avg_capacity":
        values = np.log2(1.0 + gamma_plc)
    elif metric == "vlc_avg_capacity":
        values = np.log2(1.0 + gamma_vlc)
    elif metric == "e2e_avg_capacity":
        values = system.duplex_factor * np.minimum(
            np.log2(1.0 + gamma_plc), np.log2(1.0 + gamma_vlc)
        )
    elif metric == "plc_outage":
        values = (gamma_plc < snr_threshold).astype(float)
    elif metric == "vlc_outage":
        values = (gamma_vlc < snr_threshold).astype(float)
    else:  # e2e_outage
        values = ((gamma_plc < snr_threshold) | (gamma_vlc < snr_threshold)).astype(float)

    return (
        float(np.sum(values)),
        float(np.sum(values * values)),
        float(values.min()),
        float(values.max()),
    )


def estimate(
    metric: str,
    system: RelaySystemParams,
    cfg: McConfig,
    workers: int = 1,
) -> Estimate:
    """Monte Carlo mean and standard error of one metric.

    End-to-end metrics draw both hops independently in every trial and apply
    the decode-and-forward composition per draw; outage metrics are indicator
    means against the SNR threshold implied by the system's rate target.
    """
    if metric not in METRICS:
        raise ParameterError(f"unknown metric {metric!r}; expected one of {METRICS}")
    if workers < 1:
        raise ParameterError("workers must be a positive integer")
    threshold = rate_to_snr_threshold(system.rate_threshold_bits, system.duplex_factor)
    n_batches = -(-cfg.trials // cfg.batch_size)

    def run(batch_index: int) -> tuple[float, float, float, float]:
        return _batch_stats(metric, system, cfg, batch_index, threshold)

    if workers == 1 or n_batches == 1:
        partials = [run(b) for b in range(n_batches)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(run, range(n_batches)))

    total = math.fsum(p[0] for p in partials)
    total_sq = math.fsum(p[1] for p in partials)
    low = min(p[2] for p in partials)
    high = max(p[3] for p in partials)
    trials = cfg.trials
    if low == high:
        # Degenerate sample: the mean is the common value, with no spread.
        return Estimate(mean=low, std_error=0.0, trials=trials, seed=int(cfg.seed))
    mean = total / trials
    variance = max(0.0, (total_sq - total * total / trials) / (trials - 1))
    return Estimate(
        mean=mean,
        std_error=math.sqrt(variance / trials),
        trials=trials,
        seed=int(cfg.seed),
    )
