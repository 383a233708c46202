"""Single 1D GLS chaotic neuron: map iteration, firing loop, feature extraction.

A neuron is a piecewise-linear chaotic map on [0, 1) parameterised by a
breakpoint ``b``. Presented with a stimulus x in [0, 1], it iterates from its
initial activity ``q`` until the orbit lands within ``epsilon`` of x, at which
point the stimulus counts as recognised and firing stops. Four quantities of
the firing episode form the feature vector: firing time N, firing rate R,
energy E, and the Shannon entropy H of the binary symbol sequence cut at b.

Feature convention: the firing window consists of the N states the neuron
passed through *before* recognition, i.e. z(0)=q, z(1), ..., z(N-1). The
recognising state z(N) terminates firing and is excluded from R/E/H. A
stimulus recognised immediately (|q - x| < epsilon) has N=0 and an all-zero
feature vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError, NonConvergenceError

# Largest double below 1.0; map results are folded onto [0, 1) with this cap.
ONE_BELOW = math.nextafter(1.0, 0.0)

DEFAULT_MAX_ITERATIONS = 100_000


class MapKind(str, Enum):
    """Which GLS family member drives the neuron."""

    SKEW_TENT = "skew_tent"
    SKEW_BINARY = "skew_binary"


@dataclass(frozen=True)
class ChaosConfig:
    """Hyperparameters shared by every neuron in a layer.

    q: initial neural activity, in (0, 1)
    b: discrimination threshold (map breakpoint and symbol cut), in (0, 1)
    epsilon: half-width of the recognition neighbourhood, in (0, 0.5]
    map_kind: skew-tent (default) or skew-binary map
    max_iterations: hard cap on the firing loop; exceeding it is an error
    """

    q: float
    b: float
    epsilon: float
    map_kind: MapKind = MapKind.SKEW_TENT
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def __post_init__(self):
        for name in ("q", "b", "epsilon"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise DomainError(f"{name} must be finite, got {v!r}")
        if not 0.0 < self.q < 1.0:
            raise DomainError(f"q must lie in (0, 1), got {self.q}")
        if not 0.0 < self.b < 1.0:
            raise DomainError(f"b must lie in (0, 1), got {self.b}")
        if not 0.0 < self.epsilon <= 0.5:
            raise DomainError(f"epsilon must lie in (0, 0.5], got {self.epsilon}")
        if self.max_iterations < 1:
            raise DomainError("max_iterations must be >= 1")


@dataclass(frozen=True)
class NeuralTrace:
    """One firing episode: the visited states z(1)..z(N) after the initial activity.

    The recognising state is last: |values[-1] - stimulus| < epsilon whenever
    N >= 1. An immediately recognised stimulus yields an empty trace.
    """

    stimulus: float
    values: np.ndarray = field(repr=False)

    @property
    def firing_time(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class CfxFeature:
    """The 4-vector extracted from one firing episode."""

    firing_time: int
    firing_rate: float
    energy: float
    entropy: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [float(self.firing_time), self.firing_rate, self.energy, self.entropy]
        )


def iterate_map(z: float, config: ChaosConfig) -> float:
    """Apply one step of the configured GLS map.

    Skew tent:   z/b on [0, b),  (1-z)/(1-b) on [b, 1)
    Skew binary: z/b on [0, b),  (z-b)/(1-b) on [b, 1)

    The tent branch maps z=b to exactly 1.0, which is outside the state
    space; results >= 1.0 are folded to the largest double below 1.
    """
    if not 0.0 <= z < 1.0:
        raise DomainError(f"state must lie in [0, 1), got {z}")
    b = config.b
    if z < b:
        nxt = z / b
    elif config.map_kind is MapKind.SKEW_TENT:
        nxt = (1.0 - z) / (1.0 - b)
    else:
        nxt = (z - b) / (1.0 - b)
    if nxt >= 1.0:
        nxt = ONE_BELOW
    return nxt


def fire(stimulus: float, config: ChaosConfig) -> NeuralTrace:
    """Run the firing loop for one stimulus.

    Starting from z(0)=q, iterates the map until the first state inside the
    epsilon-neighbourhood of the stimulus. Returns the trace z(1)..z(N); an
    immediately recognised stimulus (|q - stimulus| < epsilon) gives N=0.

    Raises NonConvergenceError if no state enters the neighbourhood within
    config.max_iterations: floating-point orbits can collapse onto cycles, so
    the topological-transitivity guarantee of the exact dynamics does not
    always hold numerically.
    """
    if not 0.0 <= stimulus <= 1.0 or not math.isfinite(stimulus):
        raise DomainError(f"stimulus must lie in [0, 1], got {stimulus}")
    if abs(config.q - stimulus) < config.epsilon:
        return NeuralTrace(stimulus=stimulus, values=np.empty(0))
    z = config.q
    values = []
    for _ in range(config.max_iterations):
        z = iterate_map(z, config)
        values.append(z)
        if abs(z - stimulus) < config.epsilon:
            return NeuralTrace(stimulus=stimulus, values=np.asarray(values))
    raise NonConvergenceError(
        f"no state within {config.epsilon} of stimulus {stimulus} "
        f"after {config.max_iterations} iterations"
    )


def extract_features(trace: NeuralTrace, config: ChaosConfig) -> CfxFeature:
    """Compute (N, R, E, H) for a trace produced by ``fire`` under ``config``.

    The firing window is z(0)=q followed by trace.values[:-1]; its length
    equals the firing time N. Over the window:

      R = fraction of states >= b
      E = sum of squared states
      H = binary Shannon entropy (bits) of the symbol sequence 0/1 cut at b

    N=0 yields the all-zero feature vector.
    """
    n = trace.firing_time
    if n == 0:
        return CfxFeature(0, 0.0, 0.0, 0.0)
    window = [config.q]
    window.extend(trace.values[:-1].tolist())
    ones = 0
    energy = 0.0
    for v in window:
        if v >= config.b:
            ones += 1
        energy += v * v
    rate = ones / n
    entropy = 0.0
    for count in (n - ones, ones):
        if count:
            p = count / n
            entropy -= p * math.log2(p)
    return CfxFeature(n, rate, energy, entropy)
