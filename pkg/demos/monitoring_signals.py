"""
Checking recorded signals against formulas
==========================================

Synthesizes a couple of engine-like signals with numpy and runs the
monitor over them, including the horizon bookkeeping that tells you
whether a trace is long enough to judge at all.
"""

import numpy as np

from mtlspec import Trace, check_horizon, evaluate, horizon, parse_formula

rng = np.random.default_rng(7)

# A 60-second drive sampled at 2 Hz: speed ramps up and settles, rpm
# follows with noise.
times = np.arange(0.0, 60.0, 0.5)
speed = 70.0 * (1.0 - np.exp(-times / 8.0)) + rng.normal(0.0, 0.8, times.size)
rpm = 35.0 * speed + rng.normal(0.0, 40.0, times.size)

trace = Trace(times=tuple(times), signals={
    "speed": tuple(speed),
    "rpm": tuple(rpm),
})

# Simple bound: rpm stays under 4000 for the first 36 seconds.
f_bound = parse_formula("[]_[0,36](rpm < 4000)")
print("rpm bound:", evaluate(f_bound, trace))

# Reachability: speed exceeds 60 at some point within 30 seconds.
f_reach = parse_formula("<>_[0,30](speed > 60)")
print("reaches 60:", evaluate(f_reach, trace))

# Stabilization: within 30 seconds the speed enters [60, 80] and stays
# there for 10 seconds straight.
f_stab = parse_formula("<>_[0,30]([]_[0,10]((speed > 60) /\\ (speed < 80)))")
print("stabilizes:", evaluate(f_stab, trace))

# Each formula needs a minimum trace length; the monitor refuses to
# guess beyond the recording instead of silently returning a verdict.
print("stabilization horizon:", horizon(f_stab), "seconds")
check = check_horizon(f_stab, trace)
print("trace coverage:", check.ok, "(needs", check.required,
      "of", check.available, "seconds)")

# A trace shorter than the horizon is refused rather than judged.
short = Trace(times=tuple(times[:20]), signals={
    "speed": tuple(speed[:20]),
    "rpm": tuple(rpm[:20]),
})
print("coverage of a 10-second clip:", check_horizon(f_stab, short).ok)

# Verdicts can be asked at any interior sample, e.g. "from second 20 on,
# does the speed hold above 50 for ten seconds?"
f_hold = parse_formula("[]_[0,10](speed > 50)")
at_40 = 40  # sample index 40 = second 20
print("holds above 50 from second 20:", evaluate(f_hold, trace, at=at_40))
