"""Finite-trace boolean monitor with pointwise sampled semantics.

A trace is a finite sequence of samples at strictly increasing times starting
at 0. Temporal operators quantify over the samples at or after the evaluation
index whose timestamps fall in the closed window
``[times[at] + lo, times[at] + hi]``: always holds when every such sample
satisfies the operand (vacuously true for an empty window) and eventually
holds when at least one does (false for an empty window).

Sampled timestamps are float64 multiples of a step, so window membership
uses a small absolute tolerance (``WINDOW_EPS``) on both closed endpoints;
exact comparison would drop endpoint samples for steps like 0.1 that have no
exact binary representation. Evaluation refuses to answer when the trace is
shorter than the formula horizon past the evaluation point, rather than
guessing at unseen samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

from .errors import InsufficientHorizon, UnknownSignal
from .model import Predicate
from .mtl import Always, And, Atom, Eventually, Formula, Implies, Not, horizon

WINDOW_EPS = 1e-9


@dataclass(frozen=True)
class Trace:
    """Sampled signals on a shared, strictly increasing time base."""

    times: tuple[float, ...]
    signals: dict[str, tuple[float, ...]] = field(default_factory=dict)

    def __post_init__(self):
        times = tuple(float(t) for t in self.times)
        if not times:
            raise ValueError("a trace needs at least one sample")
        if times[0] != 0.0:
            raise ValueError(f"trace time must start at 0, got {times[0]}")
        for i in range(1, len(times)):
            if times[i] <= times[i - 1]:
                raise ValueError(
                    f"trace times must strictly increase (sample {i}: "
                    f"{times[i]} after {times[i - 1]})"
                )
        signals = {}
        for name, values in self.signals.items():
            values = tuple(float(v) for v in values)
            if len(values) != len(times):
                raise ValueError(
                    f"signal {name!r} has {len(values)} samples, expected {len(times)}"
                )
            if any(not math.isfinite(v) for v in values):
                raise ValueError(f"signal {name!r} contains non-finite samples")
            signals[name] = values
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "signals", signals)

    @property
    def duration(self) -> float:
        return self.times[-1]

    def __len__(self) -> int:
        return len(self.times)

    def __hash__(self) -> int:
        return hash((self.times, tuple(sorted(self.signals.items()))))


@dataclass(frozen=True)
class HorizonCheck:
    ok: bool
    required: float
    available: float


def check_horizon(f: Formula, trace: Trace) -> HorizonCheck:
    """Report whether the trace is long enough to decide ``f`` at sample 0."""
    required = horizon(f)
    return HorizonCheck(trace.duration + WINDOW_EPS >= required, required, trace.duration)


def evaluate(f: Formula, trace: Trace, at: int = 0) -> bool:
    """Decide ``f`` on the trace at sample index ``at``.

    Raises :class:`UnknownSignal` when the formula mentions a signal the
    trace does not carry, and :class:`InsufficientHorizon` when
    ``times[at] + horizon(f)`` exceeds the last timestamp.
    """
    if not 0 <= at < len(trace):
        raise ValueError(f"sample index {at} outside the trace (0..{len(trace) - 1})")
    for name in _signal_names(f):
        if name not in trace.signals:
            raise UnknownSignal(f"trace has no signal {name!r}")
    required = trace.times[at] + horizon(f)
    if required > trace.duration + WINDOW_EPS:
        raise InsufficientHorizon(required, trace.duration)
    return _eval(f, trace, at)


def _eval(f: Formula, trace: Trace, at: int) -> bool:
    if isinstance(f, Atom):
        return _holds(f.predicate, trace, at)
    if isinstance(f, Not):
        return not _eval(f.operand, trace, at)
    if isinstance(f, And):
        return _eval(f.left, trace, at) and _eval(f.right, trace, at)
    if isinstance(f, Implies):
        return (not _eval(f.left, trace, at)) or _eval(f.right, trace, at)
    if isinstance(f, Always):
        return all(
            _eval(f.operand, trace, j) for j in _window(trace, at, f.interval)
        )
    if isinstance(f, Eventually):
        return any(
            _eval(f.operand, trace, j) for j in _window(trace, at, f.interval)
        )
    raise TypeError(f"not a formula: {f!r}")


def _holds(p: Predicate, trace: Trace, at: int) -> bool:
    return p.holds(trace.signals[p.signal][at])


def _window(trace: Trace, at: int, interval) -> range:
    lo = trace.times[at] + interval.lo - WINDOW_EPS
    hi = trace.times[at] + interval.hi + WINDOW_EPS
    times = trace.times
    n = len(times)
    start = at
    while start < n and times[start] < lo:
        start += 1
    stop = start
    while stop < n and times[stop] <= hi:
        stop += 1
    return range(start, stop)


def _signal_names(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.predicate.signal}
    if isinstance(f, Not):
        return _signal_names(f.operand)
    if isinstance(f, (And, Implies)):
        return _signal_names(f.left) | _signal_names(f.right)
    if isinstance(f, (Always, Eventually)):
        return _signal_names(f.operand)
    raise TypeError(f"not a formula: {f!r}")
