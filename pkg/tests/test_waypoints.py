"""Phase-by-phase continuous timing of the carry-select adder.

Each phase is timed from an assembly that already holds every earlier
phase; the sum of these phase means bounds the end-to-end mean.
"""

import numpy as np

from tileadders.constructions import build
from tileadders.constructions.carryselect import PHASES, phase_of
from tileadders.engine import TileSystem, derive_seed, estimate_continuous_mean, run_continuous, run_parallel
from tileadders.stats import RunStats

TRIALS = 400


def test_phase_means_bound_end_to_end():
    tac = build("carryselect", 16)
    sys = tac.system(tuple(int(v) for v in np.random.default_rng(4).integers(0, 2, 32)))
    terminal = run_parallel(sys).terminal
    g = tac.geometry
    grown = {p: t for p, t in terminal.cells.items() if p not in sys.seed.cells}
    total_mean, total_var = 0.0, 0.0
    for k, phase in enumerate(PHASES):
        start = sys.seed.copy()
        start.cells.update({p: t for p, t in grown.items() if phase_of(g, p) in PHASES[:k]})
        sub = TileSystem(sys.tileset, start, sys.temperature)
        mine = [p for p in grown if phase_of(g, p) == phase]
        samples = []
        for t in range(TRIALS):
            res = run_continuous(sub, derive_seed(17, k, t))
            times = res.placement_times()
            samples.append(max(times[p] for p in mine))
        s = RunStats.from_samples(samples)
        total_mean += s.mean
        total_var += s.stderr ** 2
    e2e, half = estimate_continuous_mean(sys, TRIALS, 23)
    slack = 2.576 * np.sqrt(total_var + (half / 1.96) ** 2)
    assert total_mean + slack >= e2e
