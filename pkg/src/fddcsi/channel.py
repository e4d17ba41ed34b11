"""Time-varying, structured-sparse multi-antenna channel impulse responses.

All antennas share one binary support over the delay taps.  Per tap, the
support follows a two-state Markov chain whose stationary activity probability
is a model parameter, and the complex amplitudes follow a first-order
autoregression with the Doppler-derived correlation coefficient.  Amplitudes
evolve on every tap, active or not, so a tap re-entering the support carries a
plausible value; the support merely gates which amplitudes appear in the CIR.
"""

import math
from dataclasses import dataclass

import numpy as np

from .numerics import bessel_j0


@dataclass(frozen=True)
class ChannelParams:
    """Statistical description of the stacked multi-antenna CIR."""

    n_antennas: int
    n_taps: int
    activity: float  # stationary probability that a delay tap is active
    p01: float  # per-slot probability of an active tap switching off
    doppler_hz: float
    slot_duration_s: float
    innovation_var: float = 1.0

    def __post_init__(self):
        if self.n_antennas < 1 or self.n_taps < 1:
            raise ValueError("antenna and tap counts must be positive")
        if not 0.0 < self.activity < 1.0:
            raise ValueError("activity must lie strictly inside (0, 1)")
        if not 0.0 <= self.p01 <= 1.0:
            raise ValueError("p01 must lie in [0, 1]")
        if not 0.0 <= self.p10 <= 1.0:
            raise ValueError("derived p10 = activity*p01/(1-activity) falls outside [0, 1]")
        if self.doppler_hz < 0:
            raise ValueError("doppler_hz must be non-negative")
        if self.slot_duration_s <= 0:
            raise ValueError("slot_duration_s must be positive")
        if self.innovation_var <= 0:
            raise ValueError("innovation_var must be positive")

    @property
    def p10(self):
        """Off-to-on transition probability keeping the activity stationary."""
        return self.activity * self.p01 / (1.0 - self.activity)


@dataclass(frozen=True)
class ChannelState:
    """One slot of the channel; values are never mutated after construction.

    `cir` stacks the per-antenna responses antenna-major: entry m*L + l holds
    tap l of antenna m, and equals support[l] * amplitudes[m, l].
    """

    slot: int
    support: np.ndarray  # (L,) bool, shared by all antennas
    amplitudes: np.ndarray  # (M, L) complex
    cir: np.ndarray  # (L*M,) complex


def _assemble(slot, support, amplitudes):
    cir = (amplitudes * support).reshape(-1)
    return ChannelState(slot=slot, support=support, amplitudes=amplitudes, cir=cir)


def rho_from_doppler(doppler_hz, slot_duration_s):
    """Slot-to-slot amplitude correlation J0(2*pi*f_d*tau) for Doppler f_d."""
    if doppler_hz < 0:
        raise ValueError("doppler_hz must be non-negative")
    if slot_duration_s <= 0:
        raise ValueError("slot_duration_s must be positive")
    return bessel_j0(2.0 * math.pi * doppler_hz * slot_duration_s)


def _complex_normal(rng, shape, var):
    scale = math.sqrt(var / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def init_state(params, rng):
    """Draw a stationary initial state.

    Consumes the generator in a fixed order: support first (one uniform per
    tap), then amplitudes antenna-major (real parts, then imaginary parts).
    """
    support = rng.random(params.n_taps) < params.activity
    amplitudes = _complex_normal(
        rng, (params.n_antennas, params.n_taps), params.innovation_var
    )
    return _assemble(0, support, amplitudes)


def evolve_state(state, params, rho, rng):
    """Advance the channel by one slot.

    Each active tap switches off with probability p01 and each inactive tap
    switches on with probability p10; every amplitude, gated or not, updates
    as a <- rho*a + sqrt(1-rho^2)*w with w drawn CN(0, innovation_var).  The
    generator is consumed in the same fixed order as `init_state`.
    """
    if not -1.0 <= rho <= 1.0:
        raise ValueError("rho must lie in [-1, 1]")
    u = rng.random(params.n_taps)
    support = np.where(state.support, u >= params.p01, u < params.p10)
    w = _complex_normal(rng, state.amplitudes.shape, params.innovation_var)
    amplitudes = rho * state.amplitudes + math.sqrt(1.0 - rho * rho) * w
    return _assemble(state.slot + 1, support, amplitudes)


def stacked_cir(state):
    """Concatenation of the per-antenna CIRs in antenna order."""
    return state.cir


def differential_sparsity(params, rng, n_slots=10_000, energy_fraction=0.9, quantile=0.9):
    """Empirical per-antenna sparsity of the slot-to-slot CIR difference.

    For each evolved slot, counts how many delay taps are needed to capture
    `energy_fraction` of the difference energy (per-tap energy summed over
    antennas) and returns the `quantile` of those counts, at least 1.  Taps
    entering or leaving the support dominate the difference energy, while
    persistently active taps only contribute the small amplitude drift, so
    the count tracks support churn rather than the raw nonzero count.
    """
    if n_slots < 1:
        raise ValueError("n_slots must be positive")
    rho = rho_from_doppler(params.doppler_hz, params.slot_duration_s)
    state = init_state(params, rng)
    counts = np.zeros(n_slots)
    for i in range(n_slots):
        nxt = evolve_state(state, params, rho, rng)
        diff = nxt.cir - state.cir
        per_tap = np.sum(
            np.abs(diff.reshape(params.n_antennas, params.n_taps)) ** 2, axis=0
        )
        total = per_tap.sum()
        if total > 0.0:
            cumulative = np.cumsum(np.sort(per_tap)[::-1])
            counts[i] = np.searchsorted(cumulative, energy_fraction * total) + 1
        state = nxt
    return max(1, int(math.ceil(np.quantile(counts, quantile))))
