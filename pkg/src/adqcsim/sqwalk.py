"""Stochastic single-qubit gate generation by random gate products.

Each ancilla round applies one of two fixed register gates {u0, u1} with
probabilities {p0, 1-p0}.  The running product is compared against a target
unitary with the phase-invariant trace distance; the walk stops when it
gets within epsilon.  Ensembles of such walks have approximately
geometric/exponential step-count distributions, summarized here with
histograms, an exponential fit, and a log-linearity diagnostic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .interaction import delta_gate
from .kraus import kraus_for
from .qmath import (
    as_unitary,
    computational_basis,
    hadamard,
    plus_state,
    rx,
    tensor,
    x_basis,
)
from .seeding import derive_rng

DEFAULT_EPSILON = 0.05
DEFAULT_MAX_STEPS = 1_000_000
_RAND_CHUNK = 4096


@dataclass(frozen=True)
class WalkConfig:
    """Gates, branch probability, target and stopping rule for one walk."""

    u0: np.ndarray
    u1: np.ndarray
    target: np.ndarray = field(default_factory=lambda: rx(np.pi / 2))
    p0: float = 0.5
    epsilon: float = DEFAULT_EPSILON
    max_steps: int = DEFAULT_MAX_STEPS
    seed: int = 0

    def validated(self) -> "WalkConfig":
        as_unitary(self.u0)
        as_unitary(self.u1)
        as_unitary(self.target)
        if not 0.0 <= self.p0 <= 1.0:
            raise ValueError("p0 must lie in [0, 1]")
        if not 0.0 < self.epsilon <= 1.0:
            raise ValueError("epsilon must lie in (0, 1]")
        if self.max_steps < 1:
            raise ValueError("max_steps must be positive")
        return self


@dataclass(frozen=True)
class WalkResult:
    steps: int
    hit: bool
    final_distance: float


def run_walk(cfg: WalkConfig, rng: np.random.Generator) -> WalkResult:
    """Multiply random gates until the product is epsilon-close to the target.

    The distance is checked before the first multiplication, so a target
    within epsilon of the identity reports steps = 0.
    """
    cfg.validated()
    (a00, a01), (a10, a11) = np.asarray(cfg.u0, dtype=complex)
    (b00, b01), (b10, b11) = np.asarray(cfg.u1, dtype=complex)
    t = np.asarray(cfg.target, dtype=complex)
    tc00, tc01, tc10, tc11 = t[0, 0].conjugate(), t[0, 1].conjugate(), t[1, 0].conjugate(), t[1, 1].conjugate()

    # trace_distance(V, T) <= eps  iff  |Tr(T^dag V)| >= 2 - 2 eps^2
    thresh = 2.0 - 2.0 * cfg.epsilon * cfg.epsilon
    p0 = cfg.p0

    v00, v01, v10, v11 = 1 + 0j, 0j, 0j, 1 + 0j
    tr = tc00 * v00 + tc10 * v01 + tc01 * v10 + tc11 * v11
    if abs(tr) >= thresh:
        return WalkResult(0, True, _distance_from_trace(abs(tr)))

    buf = rng.random(_RAND_CHUNK)
    bi = 0
    nbuf = buf.size
    for k in range(1, cfg.max_steps + 1):
        if bi == nbuf:
            buf = rng.random(_RAND_CHUNK)
            bi = 0
        if buf[bi] < p0:
            w00 = a00 * v00 + a01 * v10
            w01 = a00 * v01 + a01 * v11
            w10 = a10 * v00 + a11 * v10
            w11 = a10 * v01 + a11 * v11
        else:
            w00 = b00 * v00 + b01 * v10
            w01 = b00 * v01 + b01 * v11
            w10 = b10 * v00 + b11 * v10
            w11 = b10 * v01 + b11 * v11
        bi += 1
        v00, v01, v10, v11 = w00, w01, w10, w11
        tr = tc00 * v00 + tc10 * v01 + tc01 * v10 + tc11 * v11
        if abs(tr) >= thresh:
            return WalkResult(k, True, _distance_from_trace(abs(tr)))
    return WalkResult(cfg.max_steps, False, _distance_from_trace(abs(tr)))


def _distance_from_trace(abs_trace: float) -> float:
    return float(np.sqrt(max(0.0, (2.0 - abs_trace) / 2.0)))


def run_ensemble(cfg: WalkConfig, trials: int) -> list[WalkResult]:
    """Independent walks with per-trial derived generators, ordered by trial.

    Trial t uses the stream derive_rng(cfg.seed, t), so results do not
    depend on execution order or batching.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    return [run_walk(cfg, derive_rng(cfg.seed, t)) for t in range(trials)]


def one_parameter_config(
    epsilon: float = DEFAULT_EPSILON, seed: int = 0, max_steps: int = DEFAULT_MAX_STEPS
) -> WalkConfig:
    """Walk gates from the maximally biased one-parameter interaction.

    The gates are re-derived from the Kraus operators of
    E = (H x H) delta(0, 0, pi/16) with ancilla |+> measured in the x basis,
    which yields u_b = H rz(+/- pi/8) with p = 1/2 each.
    """
    e = tensor(hadamard(), hadamard()) @ delta_gate(0.0, 0.0, np.pi / 16)
    outs = kraus_for(e, plus_state(), x_basis())
    return WalkConfig(
        u0=outs[0].unitary_part,
        u1=outs[1].unitary_part,
        p0=outs[0].probability,
        epsilon=epsilon,
        max_steps=max_steps,
        seed=seed,
    )


def two_parameter_config(
    epsilon: float = DEFAULT_EPSILON, seed: int = 0, max_steps: int = DEFAULT_MAX_STEPS
) -> WalkConfig:
    """Walk gates from the two-parameter interaction delta(pi/16, 0, pi/16).

    Ancilla |+> with a computational measurement yields
    u_b = rz(+/- pi/8) rx(pi/8) with p = 1/2 each.
    """
    e = delta_gate(np.pi / 16, 0.0, np.pi / 16)
    outs = kraus_for(e, plus_state(), computational_basis())
    return WalkConfig(
        u0=outs[0].unitary_part,
        u1=outs[1].unitary_part,
        p0=outs[0].probability,
        epsilon=epsilon,
        max_steps=max_steps,
        seed=seed,
    )


@dataclass(frozen=True)
class Histogram:
    bin_count: int
    bin_edges: np.ndarray
    counts: np.ndarray
    total: int


def histogram(samples: list[int] | np.ndarray, bins: int = 20) -> Histogram:
    """Equal-width histogram over [min, max + 1)."""
    if bins < 1:
        raise ValueError("bins must be >= 1")
    s = np.asarray(samples, dtype=float)
    if s.size == 0:
        raise ValueError("samples must be non-empty")
    edges = np.linspace(s.min(), s.max() + 1.0, bins + 1)
    counts, _ = np.histogram(s, bins=edges)
    return Histogram(bins, edges, counts.astype(int), int(s.size))


def log_bin_counts(h: Histogram) -> list[tuple[float, float]]:
    """(bin center, ln count) pairs, skipping empty bins."""
    centers = 0.5 * (h.bin_edges[:-1] + h.bin_edges[1:])
    return [
        (float(c), float(np.log(n))) for c, n in zip(centers, h.counts) if n > 0
    ]


def fit_exponential(samples: list[int] | np.ndarray) -> float:
    """Rate of the mean-parametrised exponential: lambda = 1 / mean."""
    s = np.asarray(samples, dtype=float)
    if s.size == 0:
        raise ValueError("samples must be non-empty")
    m = s.mean()
    if m <= 0:
        raise ValueError("samples must have positive mean")
    return float(1.0 / m)


def log_linear_r2(h: Histogram, min_count: int = 5) -> float:
    """R^2 of a least-squares line through (center, ln count) for busy bins."""
    pts = [
        (c, l)
        for (c, l), n in zip(log_bin_counts(h), h.counts[h.counts > 0])
        if n >= min_count
    ]
    if len(pts) < 3:
        raise ValueError("need at least 3 bins with enough counts")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    return 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0