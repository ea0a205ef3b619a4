"""Right-censored survival data: containers, simulation, CSV round-trip.

An observation is ``(y, delta, z)`` with ``y = min(T, C, tau)`` the followed
time, ``delta = 1`` when the event was observed (``T <= C`` and ``T <= tau``)
and ``z`` a covariate vector.  Event times are simulated by the
inverse-cumulative-hazard transform ``T = H^{-1}(E exp(-theta0' z))`` with
``E ~ Exponential(1)``, so any baseline with an invertible cumulative hazard
works.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DataFormatError, ParameterError

__all__ = [
    "BaselineHazard",
    "constant_hazard",
    "weibull_hazard",
    "CensoringSpec",
    "exponential_censoring",
    "no_censoring",
    "SurvivalObservation",
    "SurvivalDataset",
    "SimulationConfig",
    "simulate_dataset",
    "write_dataset_csv",
    "read_dataset_csv",
]


@dataclass(frozen=True)
class BaselineHazard:
    """Parametric baseline with closed-form cumulative hazard.

    ``constant``: hazard ``rate``, cumulative ``rate * t``.
    ``weibull``: cumulative ``(t / scale) ** shape``.
    """

    kind: str
    rate: float = 1.0
    shape: float = 1.0
    scale: float = 1.0

    def __post_init__(self):
        if self.kind not in ("constant", "weibull"):
            raise ParameterError(f"unknown baseline kind {self.kind!r}")
        if self.kind == "constant" and not self.rate > 0:
            raise ParameterError(f"baseline rate must be > 0, got {self.rate!r}")
        if self.kind == "weibull" and not (self.shape > 0 and self.scale > 0):
            raise ParameterError("weibull baseline needs shape > 0 and scale > 0")

    def cumulative(self, t):
        """Cumulative hazard at t (vectorized)."""
        t = np.asarray(t, dtype=float)
        if self.kind == "constant":
            return self.rate * t
        return (t / self.scale) ** self.shape

    def inverse_cumulative(self, u):
        """Inverse of the cumulative hazard (vectorized)."""
        u = np.asarray(u, dtype=float)
        if self.kind == "constant":
            return u / self.rate
        return self.scale * u ** (1.0 / self.shape)

    @property
    def label(self) -> str:
        if self.kind == "constant":
            return f"constant(rate={self.rate!r})"
        return f"weibull(shape={self.shape!r},scale={self.scale!r})"


def constant_hazard(rate: float = 1.0) -> BaselineHazard:
    return BaselineHazard("constant", rate=float(rate))


def weibull_hazard(shape: float, scale: float = 1.0) -> BaselineHazard:
    return BaselineHazard("weibull", shape=float(shape), scale=float(scale))


@dataclass(frozen=True)
class CensoringSpec:
    """Independent censoring: exponential with given rate, or none (only the
    administrative horizon tau censors)."""

    kind: str
    rate: float | None = None

    def __post_init__(self):
        if self.kind not in ("exponential", "none"):
            raise ParameterError(f"unknown censoring kind {self.kind!r}")
        if self.kind == "exponential" and not (self.rate is not None and self.rate > 0):
            raise ParameterError(f"censoring rate must be > 0, got {self.rate!r}")

    @property
    def label(self) -> str:
        if self.kind == "exponential":
            return f"exponential(rate={self.rate!r})"
        return "none"


def exponential_censoring(rate: float) -> CensoringSpec:
    return CensoringSpec("exponential", rate=float(rate))


def no_censoring() -> CensoringSpec:
    return CensoringSpec("none")


@dataclass(frozen=True)
class SurvivalObservation:
    y: float
    delta: int
    z: np.ndarray


@dataclass(frozen=True)
class SurvivalDataset:
    """Immutable right-censored sample.

    ``y``: (n,) follow-up times, ``delta``: (n,) event indicators in {0, 1},
    ``z``: (n, d) covariates, ``tau``: follow-up horizon with all y <= tau.
    """

    y: np.ndarray
    delta: np.ndarray
    z: np.ndarray
    tau: float

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float)
        delta = np.asarray(self.delta, dtype=float)
        z = np.asarray(self.z, dtype=float)
        if z.ndim == 1:
            z = z[:, None]
        if y.ndim != 1 or delta.shape != y.shape or z.shape[0] != y.shape[0]:
            raise ParameterError(
                f"inconsistent shapes: y {y.shape}, delta {delta.shape}, z {z.shape}"
            )
        if y.size == 0:
            raise ParameterError("dataset must contain at least one observation")
        if not np.all(np.isfinite(y)) or np.any(y < 0):
            raise ParameterError("times must be finite and non-negative")
        if not np.all((delta == 0) | (delta == 1)):
            raise ParameterError("event indicators must be 0 or 1")
        if not np.all(np.isfinite(z)):
            raise ParameterError("covariates must be finite")
        if not (np.isfinite(self.tau) and self.tau > 0):
            raise ParameterError(f"tau must be positive and finite, got {self.tau!r}")
        if np.any(y > self.tau):
            raise ParameterError("all follow-up times must satisfy y <= tau")
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "tau", float(self.tau))

    @property
    def n(self) -> int:
        return self.y.shape[0]

    @property
    def d(self) -> int:
        return self.z.shape[1]

    @property
    def n_events(self) -> int:
        return int(self.delta.sum())

    def observation(self, i: int) -> SurvivalObservation:
        return SurvivalObservation(float(self.y[i]), int(self.delta[i]), self.z[i].copy())


@dataclass(frozen=True)
class SimulationConfig:
    """Design of one simulated dataset.

    ``covariate_law``: ``uniform`` (each coordinate U(0,1)) or ``rademacher``
    (each coordinate +-1).  ``tau = inf`` means no administrative cutoff; the
    stored dataset horizon is then the largest observed time.
    """

    theta0: np.ndarray
    n: int
    baseline: BaselineHazard = field(default_factory=constant_hazard)
    covariate_law: str = "uniform"
    censoring: CensoringSpec = field(default_factory=lambda: exponential_censoring(0.35))
    tau: float = math.inf

    def __post_init__(self):
        theta0 = np.atleast_1d(np.asarray(self.theta0, dtype=float))
        if theta0.ndim != 1 or not np.all(np.isfinite(theta0)):
            raise ParameterError("theta0 must be a finite vector")
        object.__setattr__(self, "theta0", theta0)
        if int(self.n) != self.n or self.n < 2:
            raise ParameterError(f"n must be an integer >= 2, got {self.n!r}")
        if self.covariate_law not in ("uniform", "rademacher"):
            raise ParameterError(f"unknown covariate law {self.covariate_law!r}")
        if not self.tau > 0:
            raise ParameterError(f"tau must be > 0, got {self.tau!r}")

    @property
    def d(self) -> int:
        return self.theta0.shape[0]


def simulate_dataset(config: SimulationConfig, rng: np.random.Generator) -> SurvivalDataset:
    """Draw one dataset under the configured design.

    Draw order is fixed (covariates, then event exponentials, then censoring
    times), so a fixed generator state reproduces the dataset bit for bit.
    """
    n, d = config.n, config.d
    if config.covariate_law == "uniform":
        z = rng.uniform(0.0, 1.0, (n, d))
    else:
        z = rng.choice([-1.0, 1.0], size=(n, d))
    e = rng.exponential(1.0, n)
    t = config.baseline.inverse_cumulative(e * np.exp(-(z @ config.theta0)))
    if config.censoring.kind == "exponential":
        c = rng.exponential(1.0 / config.censoring.rate, n)
    else:
        c = np.full(n, np.inf)
    y = np.minimum(np.minimum(t, c), config.tau)
    delta = ((t <= c) & (t <= config.tau)).astype(float)
    tau = config.tau if math.isfinite(config.tau) else float(y.max())
    return SurvivalDataset(y=y, delta=delta, z=z, tau=tau)


def write_dataset_csv(dataset: SurvivalDataset, path) -> None:
    """Write ``y,delta,z1,...,zd`` rows; floats use shortest round-trip form."""
    header = ["y", "delta"] + [f"z{j + 1}" for j in range(dataset.d)]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for i in range(dataset.n):
            row = [repr(float(dataset.y[i])), str(int(dataset.delta[i]))]
            row += [repr(float(v)) for v in dataset.z[i]]
            writer.writerow(row)


def read_dataset_csv(path) -> SurvivalDataset:
    """Parse a ``y,delta,z1,...,zd`` file; malformed content raises
    DataFormatError naming the offending line."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataFormatError(f"{path}: empty file")
        d = len(header) - 2
        expected = ["y", "delta"] + [f"z{j + 1}" for j in range(d)]
        if d < 1 or header != expected:
            raise DataFormatError(
                f"{path}: line 1: expected header y,delta,z1,...,zd, got {','.join(header)!r}"
            )
        ys, deltas, zs = [], [], []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != d + 2:
                raise DataFormatError(
                    f"{path}: line {lineno}: expected {d + 2} fields, got {len(row)}"
                )
            try:
                y = float(row[0])
                delta = float(row[1])
                z = [float(v) for v in row[2:]]
            except ValueError as exc:
                raise DataFormatError(f"{path}: line {lineno}: {exc}")
            if delta not in (0.0, 1.0):
                raise DataFormatError(
                    f"{path}: line {lineno}: delta must be 0 or 1, got {row[1]!r}"
                )
            ys.append(y)
            deltas.append(delta)
            zs.append(z)
    if not ys:
        raise DataFormatError(f"{path}: no data rows")
    y = np.array(ys)
    try:
        return SurvivalDataset(y=y, delta=np.array(deltas), z=np.array(zs), tau=float(y.max()))
    except ParameterError as exc:
        raise DataFormatError(f"{path}: {exc}")
