"""Seeded exemplar and counterexemplar traces for single-template formulas.

The generator handles the five single-template shapes: a bare comparison, a
bounded always or eventually over a comparison, and the two stacked forms
(eventually-always, always-eventually). It draws a base signal from one of
three archetypes (drift ramp with low-frequency sinusoids, piecewise
plateaus, centered wave), then repairs it so the requested verdict holds
with a clearance of at least 2% of the value range on the deciding samples,
and finally verifies the verdict with the monitor before handing the trace
out. Counterexemplars reuse the same machinery on the dual shape (negated
comparison, always and eventually swapped), so a falsifying trace is just a
satisfying trace of the negation.

Generation is deterministic: the stream for trace ``i`` is seeded with
``(seed, i, attempt, verdict)``, so identical inputs reproduce identical
traces bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .errors import DurationTooShort, GenerationFailed, ThresholdOutOfRange
from .model import Interval, Predicate
from .monitor import Trace, evaluate
from .mtl import Always, Atom, Eventually, Formula, horizon

CLEARANCE_FRACTION = 0.02
MAX_ATTEMPTS = 32

ARCHETYPES = ("drift", "steps", "wave")


@dataclass(frozen=True)
class GeneratorConfig:
    """Sampling step, trace length and value range for generated traces.

    ``duration`` defaults to the formula horizon plus 10 seconds.
    ``value_range`` defaults to the threshold plus or minus
    ``max(1, |threshold|)``.
    """

    dt: float = 0.5
    duration: float | None = None
    value_range: tuple[float, float] | None = None


@dataclass(frozen=True)
class Exemplar:
    trace: Trace
    archetype: str
    index: int


@dataclass(frozen=True)
class _Shape:
    kind: str  # now | safety | reachability | stabilization | recurrence
    predicate: Predicate
    outer: Interval | None = None
    inner: Interval | None = None


def _shape_of(f: Formula) -> _Shape:
    if isinstance(f, Atom):
        return _Shape("now", f.predicate)
    if isinstance(f, Always) and isinstance(f.operand, Atom):
        return _Shape("safety", f.operand.predicate, f.interval)
    if isinstance(f, Eventually) and isinstance(f.operand, Atom):
        return _Shape("reachability", f.operand.predicate, f.interval)
    if (
        isinstance(f, Eventually)
        and isinstance(f.operand, Always)
        and isinstance(f.operand.operand, Atom)
    ):
        return _Shape(
            "stabilization", f.operand.operand.predicate, f.interval, f.operand.interval
        )
    if (
        isinstance(f, Always)
        and isinstance(f.operand, Eventually)
        and isinstance(f.operand.operand, Atom)
    ):
        return _Shape(
            "recurrence", f.operand.operand.predicate, f.interval, f.operand.interval
        )
    raise ValueError(
        "exemplars are only generated for single-template formulas "
        "(a comparison under at most two stacked temporal operators)"
    )


_DUAL_KIND = {
    "now": "now",
    "safety": "reachability",
    "reachability": "safety",
    "stabilization": "recurrence",
    "recurrence": "stabilization",
}

_NEGATED_RELATION = {"<": ">=", ">": "<=", "<=": ">", ">=": "<"}


def _dual(shape: _Shape) -> _Shape:
    negated = Predicate(
        shape.predicate.signal,
        _NEGATED_RELATION[shape.predicate.relation],
        shape.predicate.threshold,
    )
    return _Shape(_DUAL_KIND[shape.kind], negated, shape.outer, shape.inner)


def generate(
    f: Formula, count: int, seed: int, config: GeneratorConfig | None = None
) -> list[Trace]:
    """``count`` pairwise distinct traces satisfying ``f``."""
    return [e.trace for e in synthesize(f, count, seed, config, satisfy=True)]


def counterexemplar(
    f: Formula, count: int, seed: int, config: GeneratorConfig | None = None
) -> list[Trace]:
    """``count`` pairwise distinct traces falsifying ``f``."""
    return [e.trace for e in synthesize(f, count, seed, config, satisfy=False)]


def synthesize(
    f: Formula,
    count: int,
    seed: int,
    config: GeneratorConfig | None = None,
    satisfy: bool = True,
) -> list[Exemplar]:
    """Generate tagged exemplars; :func:`generate` returns just the traces."""
    if count < 1:
        raise ValueError("count must be a positive integer")
    shape = _shape_of(f)
    target_shape = shape if satisfy else _dual(shape)
    cfg = config or GeneratorConfig()
    times, vmin, vmax = _resolve(f, target_shape, cfg)

    out: list[Exemplar] = []
    taken: set[tuple] = set()
    for index in range(count):
        archetype = ARCHETYPES[index % len(ARCHETYPES)]
        exemplar = None
        for attempt in range(MAX_ATTEMPTS):
            rng = np.random.default_rng(
                [seed % (2**32), index, attempt, int(satisfy)]
            )
            values = _base_signal(rng, times, vmin, vmax, archetype)
            _repair(rng, times, values, target_shape, vmin, vmax)
            trace = Trace(
                times=tuple(times.tolist()),
                signals={shape.predicate.signal: tuple(values.tolist())},
            )
            if evaluate(f, trace) is not satisfy:
                continue
            key = trace.signals[shape.predicate.signal]
            if key in taken:
                continue
            taken.add(key)
            exemplar = Exemplar(trace, archetype, index)
            break
        if exemplar is None:
            verdict = "satisfying" if satisfy else "falsifying"
            raise GenerationFailed(
                f"no {verdict} trace found in {MAX_ATTEMPTS} attempts "
                f"(trace {index + 1} of {count})"
            )
        out.append(exemplar)
    return out


# --- configuration -----------------------------------------------------------

def _resolve(f: Formula, shape: _Shape, cfg: GeneratorConfig):
    if cfg.dt <= 0 or not math.isfinite(cfg.dt):
        raise ValueError(f"dt must be a positive number, got {cfg.dt!r}")
    needed = horizon(f)
    duration = cfg.duration if cfg.duration is not None else needed + 10.0
    if duration < needed:
        raise DurationTooShort(
            f"duration {duration} s is shorter than the formula horizon {needed} s"
        )
    thr = shape.predicate.threshold
    if cfg.value_range is not None:
        vmin, vmax = float(cfg.value_range[0]), float(cfg.value_range[1])
        if not vmin < vmax:
            raise ValueError(f"empty value range [{vmin}, {vmax}]")
    else:
        delta = max(1.0, abs(thr))
        vmin, vmax = thr - delta, thr + delta
    if not vmin < thr < vmax:
        raise ThresholdOutOfRange(
            f"threshold {thr} must lie strictly inside the value range [{vmin}, {vmax}]"
        )
    clearance = CLEARANCE_FRACTION * (vmax - vmin)
    upward = shape.predicate.relation in (">", ">=")
    headroom = (vmax - thr) if upward else (thr - vmin)
    if headroom <= clearance:
        raise ThresholdOutOfRange(
            f"threshold {thr} leaves no room for the required clearance "
            f"of {clearance} inside [{vmin}, {vmax}]"
        )
    # Sample count covers the requested duration and never undershoots the
    # horizon, even when the duration is not a multiple of dt.
    n = max(
        math.ceil(duration / cfg.dt - 1e-9),
        math.ceil(needed / cfg.dt - 1e-9),
    )
    times = np.arange(n + 1, dtype=np.float64) * cfg.dt
    return times, vmin, vmax


# --- base archetypes -----------------------------------------------------------

def _base_signal(rng, times, vmin: float, vmax: float, archetype: str) -> np.ndarray:
    span = vmax - vmin
    total = float(times[-1]) if times[-1] > 0 else 1.0
    if archetype == "drift":
        start = rng.uniform(vmin, vmax)
        end = rng.uniform(vmin, vmax)
        values = start + (end - start) * (times / total)
        for _ in range(int(rng.integers(1, 4))):
            amp = rng.uniform(0.03, 0.15) * span
            period = rng.uniform(total / 4.0, total)
            phase = rng.uniform(0.0, 2.0 * np.pi)
            values = values + amp * np.sin(2.0 * np.pi * times / period + phase)
    elif archetype == "steps":
        segments = int(rng.integers(2, 7))
        cuts = np.sort(rng.uniform(0.0, total, segments - 1))
        levels = rng.uniform(vmin, vmax, segments)
        values = np.empty_like(times)
        bounds = np.concatenate(([0.0], cuts, [total + 1.0]))
        for i in range(segments):
            mask = (times >= bounds[i]) & (times < bounds[i + 1])
            values[mask] = levels[i]
        values[-1] = levels[-1]
    else:  # wave
        mid = (vmin + vmax) / 2.0
        amp = rng.uniform(0.2, 0.45) * span
        period = rng.uniform(total / 3.0, total * 1.5)
        phase = rng.uniform(0.0, 2.0 * np.pi)
        slope = rng.uniform(-0.1, 0.1) * span / total
        values = mid + amp * np.sin(2.0 * np.pi * times / period + phase) + slope * times
    return np.clip(values, vmin, vmax)


# --- repair -----------------------------------------------------------------------

def _repair(rng, times, values, shape: _Shape, vmin: float, vmax: float) -> None:
    span = vmax - vmin
    clearance = CLEARANCE_FRACTION * span
    thr = shape.predicate.threshold
    upward = shape.predicate.relation in (">", ">=")

    def target() -> float:
        headroom = (vmax - thr) if upward else (thr - vmin)
        depth = clearance + rng.uniform(0.0, max(headroom * 0.6 - clearance, 0.0))
        return thr + depth if upward else thr - depth

    def clamp(indices) -> None:
        floor = thr + clearance if upward else None
        if upward:
            values[indices] = np.maximum(values[indices], floor)
        else:
            values[indices] = np.minimum(values[indices], thr - clearance)

    def span_indices(lo: float, hi: float) -> np.ndarray:
        return np.nonzero((times >= lo - 1e-9) & (times <= hi + 1e-9))[0]

    if shape.kind == "now":
        values[0] = target()
    elif shape.kind == "safety":
        clamp(span_indices(shape.outer.lo, shape.outer.hi))
    elif shape.kind == "reachability":
        window = span_indices(shape.outer.lo, shape.outer.hi)
        if window.size:
            j = int(rng.choice(window))
            width = int(rng.integers(0, 3))
            lo = max(j - width, window[0])
            hi = min(j + width, window[-1])
            values[lo : hi + 1] = target()
    elif shape.kind == "stabilization":
        window = span_indices(shape.outer.lo, shape.outer.hi)
        if window.size:
            j = int(rng.choice(window))
            hold = span_indices(
                times[j] + shape.inner.lo, times[j] + shape.inner.hi
            )
            clamp(hold)
    else:  # recurrence
        lo = shape.outer.lo + shape.inner.lo
        hi = shape.outer.hi + shape.inner.hi
        covered = span_indices(lo, hi)
        if covered.size:
            width = shape.inner.hi - shape.inner.lo
            dt = float(times[1] - times[0]) if len(times) > 1 else 1.0
            step = max(1, int(math.floor(width / dt + 1e-9)))
            if width < dt:
                clamp(covered)
            else:
                clamp(covered[::step])


__all__ = [
    "ARCHETYPES",
    "CLEARANCE_FRACTION",
    "Exemplar",
    "GeneratorConfig",
    "counterexemplar",
    "generate",
    "synthesize",
]
