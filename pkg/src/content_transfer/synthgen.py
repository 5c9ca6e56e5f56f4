"""Synthetic data with known ground truth: Gaussian benchmarks with
analytic MI/CMI, noise padding, permutation nulls, planted-influence
stream networks, and the coincidental-switch scenario where time-delayed
MI is high while transfer entropy is low.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .estimators import JointSamples
from .triples import Event, EventStream


@dataclass(frozen=True)
class GaussianSpec:
    """Zero-or-given-mean Gaussian with covariance split into x/y/z blocks."""

    mean: np.ndarray
    covariance: np.ndarray
    block_dims: tuple[int, ...]

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=np.float64)
        cov = np.asarray(self.covariance, dtype=np.float64)
        if mean.ndim != 1 or cov.shape != (mean.size, mean.size):
            raise ValueError("mean must be a vector and covariance a matching square matrix")
        if not np.allclose(cov, cov.T):
            raise ValueError("covariance must be symmetric")
        try:
            np.linalg.cholesky(cov)
        except np.linalg.LinAlgError:
            raise ValueError("covariance must be positive definite") from None
        dims = tuple(int(d) for d in self.block_dims)
        if len(dims) not in (2, 3) or any(d < 1 for d in dims):
            raise ValueError("block_dims must be 2 or 3 positive sizes")
        if sum(dims) != mean.size:
            raise ValueError("block sizes must sum to the total dimension")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)
        object.__setattr__(self, "block_dims", dims)

    def _block_slices(self):
        edges = np.cumsum((0,) + self.block_dims)
        return [slice(edges[i], edges[i + 1]) for i in range(len(self.block_dims))]


def reference_spec() -> GaussianSpec:
    """The 1-d x/y/z benchmark with strongly correlated x-y and weakly
    correlated z; analytic CMI 0.35665, MI 0.41313."""
    cov = np.array([[4.0, 3.0, 1.0], [3.0, 4.0, 1.0], [1.0, 1.0, 2.0]])
    return GaussianSpec(mean=np.zeros(3), covariance=cov, block_dims=(1, 1, 1))


def gaussian_samples(spec: GaussianSpec, n: int, seed: int) -> JointSamples:
    """n i.i.d. draws via the Cholesky factor, deterministic per seed."""
    if n < 1:
        raise ValueError("n must be >= 1")
    chol = np.linalg.cholesky(spec.covariance)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    draws = spec.mean + rng.standard_normal((n, spec.mean.size)) @ chol.T
    slices = spec._block_slices()
    if len(slices) == 2:
        return JointSamples(draws[:, slices[0]], draws[:, slices[1]])
    return JointSamples(draws[:, slices[0]], draws[:, slices[1]], draws[:, slices[2]])


def _logdet(mat: np.ndarray) -> float:
    sign, logdet = np.linalg.slogdet(np.atleast_2d(mat))
    if sign <= 0:
        raise ValueError("sub-block covariance is singular or indefinite")
    return logdet


def analytic_gaussian_mi(spec: GaussianSpec) -> float:
    """Exact Gaussian MI of the x and y blocks, in nats."""
    sl = spec._block_slices()
    sx, sy = sl[0], sl[1]
    cov = spec.covariance
    xy = np.r_[np.arange(sx.start, sx.stop), np.arange(sy.start, sy.stop)]
    return 0.5 * (
        _logdet(cov[sx, sx]) + _logdet(cov[sy, sy]) - _logdet(cov[np.ix_(xy, xy)])
    )


def analytic_gaussian_cmi(spec: GaussianSpec) -> float:
    """Exact Gaussian CMI of x and y given z, in nats:
    0.5 * ln(|S_xz| |S_yz| / (|S_z| |S|))."""
    if len(spec.block_dims) != 3:
        raise ValueError("conditional MI requires a z block")
    sx, sy, sz = spec._block_slices()
    cov = spec.covariance
    xz = np.r_[np.arange(sx.start, sx.stop), np.arange(sz.start, sz.stop)]
    yz = np.r_[np.arange(sy.start, sy.stop), np.arange(sz.start, sz.stop)]
    return 0.5 * (
        _logdet(cov[np.ix_(xz, xz)])
        + _logdet(cov[np.ix_(yz, yz)])
        - _logdet(cov[sz, sz])
        - _logdet(cov)
    )


def pad_noise_dims(samples: JointSamples, extra_per_block: int, sigma: float, seed: int) -> JointSamples:
    """Append independent zero-mean Gaussian coordinates of scale sigma to
    every block. sigma=0 yields constant padding, which leaves all distances
    and therefore all downstream estimates bit-identical."""
    if extra_per_block < 0:
        raise ValueError("extra_per_block must be nonnegative")
    if extra_per_block == 0:
        return samples
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    n = samples.n

    def pad(block):
        extra = sigma * rng.standard_normal((n, extra_per_block))
        return np.hstack([block, extra])

    z = None if samples.z is None else pad(samples.z)
    return JointSamples(pad(samples.x), pad(samples.y), z)


def permute_null(samples: JointSamples, seed: int) -> JointSamples:
    """Destroy cross-block dependence: one shared random permutation of the
    y-block rows and an independent one for z, preserving all marginals."""
    if samples.n < 2:
        raise ValueError("need at least 2 samples to permute")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    y = samples.y[rng.permutation(samples.n)]
    z = None if samples.z is None else samples.z[rng.permutation(samples.n)]
    return JointSamples(samples.x, y, z)


@dataclass(frozen=True)
class PlantedEdge:
    source: str
    target: str
    copy_probability: float

    def __post_init__(self):
        if not 0.0 <= self.copy_probability <= 1.0:
            raise ValueError("copy_probability must be in [0, 1]")


@dataclass(frozen=True)
class PlantedNetworkSpec:
    """Desk-scale ground-truth network: background users emit from their own
    topic mixtures; each planted edge makes the target copy the source's most
    recent vector (plus noise) with the given probability."""

    n_users: int
    edges: tuple[PlantedEdge, ...]
    topic_dim: int = 8
    events_per_user: int = 300
    noise_scale: float = 0.1
    event_scale: float = 0.7
    mean_interval: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.n_users < 1:
            raise ValueError("n_users must be >= 1")
        object.__setattr__(self, "edges", tuple(self.edges))
        names = set(self.user_names())
        for e in self.edges:
            if e.source not in names or e.target not in names:
                raise ValueError(f"edge {e.source}->{e.target} references unknown user")
            if e.source == e.target:
                raise ValueError("self edges are not allowed")

    def user_names(self) -> list[str]:
        return [f"u{i:03d}" for i in range(self.n_users)]


def planted_streams(spec: PlantedNetworkSpec) -> list[EventStream]:
    """Generate per-user renewal-process streams, then rewrite planted-edge
    targets so that a source event landing between two target events is
    copied (with noise) with the configured probability."""
    root = np.random.SeedSequence(spec.seed)
    user_seeds = root.spawn(spec.n_users)
    edge_seeds = root.spawn(spec.n_users + len(spec.edges))[spec.n_users :]
    names = spec.user_names()

    times: dict[str, np.ndarray] = {}
    vectors: dict[str, np.ndarray] = {}
    for name, child in zip(names, user_seeds):
        rng = np.random.default_rng(child)
        gaps = rng.exponential(spec.mean_interval, size=spec.events_per_user)
        times[name] = np.cumsum(gaps)
        base = rng.standard_normal(spec.topic_dim)
        vectors[name] = base + spec.event_scale * rng.standard_normal(
            (spec.events_per_user, spec.topic_dim)
        )

    for edge, child in zip(spec.edges, edge_seeds):
        rng = np.random.default_rng(child)
        st, sv = times[edge.source], vectors[edge.source]
        tt, tv = times[edge.target], vectors[edge.target]
        prev = -np.inf
        for i, t in enumerate(tt):
            j = np.searchsorted(st, t, side="left") - 1
            if j >= 0 and st[j] > prev and rng.random() < edge.copy_probability:
                tv[i] = sv[j] + spec.noise_scale * rng.standard_normal(spec.topic_dim)
            prev = t

    streams = []
    for name in names:
        events = [
            Event(user=name, time=float(t), vector=v)
            for t, v in zip(times[name], vectors[name])
        ]
        streams.append(EventStream(user=name, events=events))
    return streams


def switching_scenario(seed: int, n_events: int = 150):
    """Two independent streams that each repeat one message vector and then
    switch to a new one at nearly the same moment. Y's past is then highly
    informative about X's future (high time-delayed MI) while adding nothing
    beyond X's own past (low transfer entropy)."""
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    dim = 4
    basis = np.eye(dim)
    a, b, c, d = basis
    half = n_events // 2
    wobble = 0.02

    y_events = []
    x_events = []
    for j in range(n_events):
        base_t = 2.0 * j
        y_vec = (a if j < half else b) + wobble * rng.standard_normal(dim)
        x_vec = (c if j < half + 1 else d) + wobble * rng.standard_normal(dim)
        y_events.append(Event(user="Y", time=base_t + 0.5, vector=y_vec))
        x_events.append(Event(user="X", time=base_t + 1.0, vector=x_vec))
    return EventStream("X", x_events), EventStream("Y", y_events)
