"""Slow, obviously-correct reference implementations used only by tests."""

import itertools

from tileadders.model import DIRECTIONS, OFFSETS, OPPOSITE


def brute_force_min_cut(assembly):
    """Minimum over every bipartition of the cells of the crossing bond weight."""
    cells = sorted(assembly.cells)
    if len(cells) < 2:
        return float("inf")
    best = float("inf")
    first, rest = cells[0], cells[1:]
    for mask in range(2 ** len(rest) - 1):
        side = {first} | {c for k, c in enumerate(rest) if mask >> k & 1}
        w = 0
        for p in side:
            t = assembly.tile_at(p)
            for d in DIRECTIONS:
                q = (p[0] + OFFSETS[d][0], p[1] + OFFSETS[d][1])
                if q in assembly.cells and q not in side:
                    u = assembly.tile_at(q)
                    g, h = t.glue(d), u.glue(OPPOSITE[d])
                    if g.label and g.label == h.label:
                        w += g.strength
        best = min(best, w)
    return best


def brute_force_frontier(tileset, assembly, tau):
    """Every (empty position next to the assembly, tile) pair binding with strength >= tau."""
    empty = set()
    for (x, y) in assembly.cells:
        for dx, dy in OFFSETS.values():
            q = (x + dx, y + dy)
            if q not in assembly.cells:
                empty.add(q)
    out = set()
    for p, t in itertools.product(empty, tileset):
        s = 0
        for d in DIRECTIONS:
            q = (p[0] + OFFSETS[d][0], p[1] + OFFSETS[d][1])
            u = assembly.tile_at(q)
            if u is None:
                continue
            g, h = t.glue(d), u.glue(OPPOSITE[d])
            if g.label and g.label == h.label:
                s += g.strength
        if s >= tau:
            out.add((p, t.id))
    return out


def naive_parallel(system, max_steps=10_000):
    """Repeated full rescans; returns (steps, final cells)."""
    a = system.seed.copy()
    tau = system.temperature
    for step in range(max_steps + 1):
        moves = brute_force_frontier(system.tileset, a, tau)
        if not moves:
            return step, a.cells
        byp = {}
        for p, tid in moves:
            if byp.setdefault(p, tid) != tid:
                raise AssertionError(f"conflict at {p}")
        for p, tid in byp.items():
            a.cells[p] = tid
    raise AssertionError("budget exceeded")
