"""Build joint samples (x_future, y_past, x_past) from two users' sorted
event streams under strict temporal ordering: for each consecutive pair of
target events, a triple is emitted only if the source posted strictly in
between, and only the source's most recent such event is used.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass

import numpy as np

from .estimators import JointSamples


@dataclass(frozen=True)
class Event:
    """One timestamped content vector emitted by one user."""

    user: str
    time: float
    vector: np.ndarray

    def __post_init__(self):
        if not np.isfinite(self.time):
            raise ValueError("event time must be finite")
        vec = np.asarray(self.vector, dtype=np.float64)
        if vec.ndim != 1 or not np.all(np.isfinite(vec)):
            raise ValueError("event vector must be a finite 1-d array")
        vec.setflags(write=False)
        object.__setattr__(self, "time", float(self.time))
        object.__setattr__(self, "vector", vec)


@dataclass(frozen=True)
class EventStream:
    """A single user's events, sorted ascending by time.

    Equal timestamps keep their input order (stable sort); all events in a
    stream belong to one user, so the (user, input order) tie rule reduces
    to input order here.
    """

    user: str
    events: tuple[Event, ...]

    def __post_init__(self):
        events = tuple(sorted(self.events, key=lambda e: e.time))
        dims = {e.vector.size for e in events}
        if len(dims) > 1:
            raise ValueError("all events in a stream must share one vector dimension")
        for e in events:
            if e.user != self.user:
                raise ValueError(f"event user {e.user!r} does not match stream user {self.user!r}")
        object.__setattr__(self, "events", events)

    def __len__(self) -> int:
        return len(self.events)

    def times(self) -> list[float]:
        return [e.time for e in self.events]

    def vectors(self) -> np.ndarray:
        return np.array([e.vector for e in self.events])


@dataclass(frozen=True)
class TripleSet:
    """Joint samples for one ordered pair: source's past against the
    target's future, conditioned on the target's own past."""

    source: str
    target: str
    samples: JointSamples | None

    @property
    def count(self) -> int:
        return 0 if self.samples is None else self.samples.n


def build_triples(target: EventStream, source: EventStream) -> TripleSet:
    """Emit (x_future, y_past, x_past) for every consecutive target pair
    (t1, t2) with a source event strictly inside (t1, t2); the most recent
    qualifying source event supplies y_past. Ordered by t2."""
    if len(target) >= 1 and len(source) >= 1:
        if target.events[0].vector.size != source.events[0].vector.size:
            raise ValueError("target and source vector dimensions differ")
    src_times = source.times()
    xf, yp, xp = [], [], []
    for prev, nxt in zip(target.events, target.events[1:]):
        j = bisect_left(src_times, nxt.time) - 1
        if j >= 0 and src_times[j] > prev.time:
            xf.append(nxt.vector)
            yp.append(source.events[j].vector)
            xp.append(prev.vector)
    if not xf:
        return TripleSet(source=source.user, target=target.user, samples=None)
    samples = JointSamples(np.array(xf), np.array(yp), np.array(xp))
    return TripleSet(source=source.user, target=target.user, samples=samples)


def self_pairs(target: EventStream) -> JointSamples | None:
    """Consecutive-event (future, past) pairs for self-predictability
    scoring; None when fewer than two events exist."""
    if len(target) < 2:
        return None
    vecs = target.vectors()
    return JointSamples(vecs[1:], vecs[:-1])
