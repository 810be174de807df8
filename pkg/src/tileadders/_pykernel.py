"""Pure-Python simulation kernels.

This module is the reference implementation of the hot loops; the Cython
module ``_ckernel`` mirrors it statement for statement so that both produce
bit-identical results (same frontier order, same RNG draws).

Grids are flat arrays indexed ``y * width + x`` holding a tile index or -1.
Status codes: 0 terminal, 1 budget exhausted, 2 conflict, 3 out of bounds.
"""

import math

MASK64 = (1 << 64) - 1

TERMINAL = 0
BUDGET = 1
CONFLICT = 2
OUT_OF_BOUNDS = 3


def splitmix64(state):
    """One SplitMix64 step: returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def _rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """xoshiro256** seeded through SplitMix64."""

    def __init__(self, seed):
        st = seed & MASK64
        s = []
        for _ in range(4):
            st, out = splitmix64(st)
            s.append(out)
        self.s = s

    def next_u64(self):
        s = self.s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def next_double(self):
        return (self.next_u64() >> 11) * (1.0 / 9007199254740992.0)


def _attachable(q, grid, width, tile_glue, glue_str, cand_ptr, cand_idx, nglue,
                tau, strength, touched):
    """Index of the unique tile attachable at ``q``; -1 for none, -2 for several."""
    offs = (width, 1, -width, -1)
    ntouched = 0
    for d in range(4):
        r = q + offs[d]
        nt = grid[r]
        if nt < 0:
            continue
        g = tile_glue[nt * 4 + (d + 2) % 4]
        if g == 0:
            continue
        s = glue_str[g]
        key = d * nglue + g
        for j in range(cand_ptr[key], cand_ptr[key + 1]):
            c = cand_idx[j]
            if strength[c] == 0:
                touched[ntouched] = c
                ntouched += 1
            strength[c] += s
    found = -1
    for j in range(ntouched):
        c = touched[j]
        if strength[c] >= tau:
            if found == -1:
                found = c
            else:
                found = -2
        strength[c] = 0
    return found


def _near_border(q, width, height):
    x = q % width
    y = q // width
    return x <= 1 or y <= 1 or x >= width - 2 or y >= height - 2


def run_parallel(grid, times, width, height, tile_glue, glue_str, cand_ptr, cand_idx,
                 nglue, ntiles, tau, init_pos, max_steps):
    """Attach every attachable tile simultaneously, step after step.

    Returns ``(status, steps, placed, bad_pos)``.
    """
    strength = [0] * ntiles
    touched = [0] * ntiles
    mark = [0] * (width * height)
    offs = (width, 1, -width, -1)
    cands = list(init_pos)
    steps = 0
    placed = 0
    stamp = 1
    while True:
        move_pos = []
        move_tile = []
        stamp += 1
        for q in cands:
            if grid[q] >= 0 or mark[q] == stamp:
                continue
            mark[q] = stamp
            t = _attachable(q, grid, width, tile_glue, glue_str, cand_ptr, cand_idx,
                            nglue, tau, strength, touched)
            if t == -2:
                return CONFLICT, steps, placed, q
            if t >= 0:
                move_pos.append(q)
                move_tile.append(t)
        if not move_pos:
            return TERMINAL, steps, placed, -1
        if steps >= max_steps:
            return BUDGET, steps, placed, -1
        steps += 1
        for k in range(len(move_pos)):
            q = move_pos[k]
            grid[q] = move_tile[k]
            times[q] = steps
            placed += 1
            if _near_border(q, width, height):
                return OUT_OF_BOUNDS, steps, placed, q
        cands = []
        for q in move_pos:
            for d in range(4):
                r = q + offs[d]
                if grid[r] < 0:
                    cands.append(r)


def run_continuous(grid, times, width, height, tile_glue, glue_str, cand_ptr, cand_idx,
                   nglue, ntiles, tau, init_pos, seed, max_events, rate_scale):
    """Continuous-time run: each attachable site fires at rate ``1 / rate_scale``.

    Returns ``(status, elapsed, events, bad_pos)``.
    """
    strength = [0] * ntiles
    touched = [0] * ntiles
    offs = (width, 1, -width, -1)
    where = {}
    fpos = []
    ftile = []
    rng = Xoshiro256(seed)

    def add(q, t):
        where[q] = len(fpos)
        fpos.append(q)
        ftile.append(t)

    for q in init_pos:
        if grid[q] >= 0 or q in where:
            continue
        t = _attachable(q, grid, width, tile_glue, glue_str, cand_ptr, cand_idx,
                        nglue, tau, strength, touched)
        if t == -2:
            return CONFLICT, 0.0, 0, q
        if t >= 0:
            add(q, t)

    elapsed = 0.0
    events = 0
    while fpos:
        if events >= max_events:
            return BUDGET, elapsed, events, -1
        nf = len(fpos)
        u = rng.next_double()
        elapsed += -math.log1p(-u) * rate_scale / nf
        k = int(rng.next_double() * nf)
        q = fpos[k]
        t = ftile[k]
        last = nf - 1
        if k != last:
            fpos[k] = fpos[last]
            ftile[k] = ftile[last]
            where[fpos[k]] = k
        fpos.pop()
        ftile.pop()
        del where[q]
        grid[q] = t
        times[q] = elapsed
        events += 1
        if _near_border(q, width, height):
            return OUT_OF_BOUNDS, elapsed, events, q
        for d in range(4):
            r = q + offs[d]
            if grid[r] >= 0:
                continue
            t2 = _attachable(r, grid, width, tile_glue, glue_str, cand_ptr, cand_idx,
                             nglue, tau, strength, touched)
            if t2 == -2:
                return CONFLICT, elapsed, events, r
            slot = where.get(r, -1)
            if slot >= 0:
                if ftile[slot] != t2:
                    return CONFLICT, elapsed, events, r
            elif t2 >= 0:
                add(r, t2)
    return TERMINAL, elapsed, events, -1


def fnv1a64(data):
    """64-bit FNV-1a digest of a bytes object."""
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & MASK64
    return h
