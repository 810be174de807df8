# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled simulation kernels; a line-by-line port of ``_pykernel``."""

from libc.math cimport log1p
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free, calloc

cdef enum:
    TERMINAL = 0
    BUDGET = 1
    CONFLICT = 2
    OUT_OF_BOUNDS = 3


cdef inline uint64_t _rotl(uint64_t x, int k) nogil:
    return (x << k) | (x >> (64 - k))


cdef struct Rng:
    uint64_t s0, s1, s2, s3


cdef inline uint64_t _splitmix(uint64_t* state) nogil:
    state[0] += <uint64_t>0x9E3779B97F4A7C15
    cdef uint64_t z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef void _rng_seed(Rng* r, uint64_t seed) nogil:
    cdef uint64_t st = seed
    r.s0 = _splitmix(&st)
    r.s1 = _splitmix(&st)
    r.s2 = _splitmix(&st)
    r.s3 = _splitmix(&st)


cdef inline uint64_t _rng_next(Rng* r) nogil:
    cdef uint64_t result = _rotl(r.s1 * 5, 7) * 9
    cdef uint64_t t = r.s1 << 17
    r.s2 ^= r.s0
    r.s3 ^= r.s1
    r.s1 ^= r.s2
    r.s0 ^= r.s3
    r.s2 ^= t
    r.s3 = _rotl(r.s3, 45)
    return result


cdef inline double _rng_double(Rng* r) nogil:
    return (_rng_next(r) >> 11) * (1.0 / 9007199254740992.0)


cdef inline int _attachable(int q, int[::1] grid, int width, int[::1] tile_glue,
                            int[::1] glue_str, int[::1] cand_ptr, int[::1] cand_idx,
                            int nglue, int tau, int* strength, int* touched) nogil:
    cdef int offs[4]
    offs[0] = width
    offs[1] = 1
    offs[2] = -width
    offs[3] = -1
    cdef int ntouched = 0
    cdef int d, r, nt, g, s, key, j, c, found
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


cdef inline bint _near_border(int q, int width, int height) nogil:
    cdef int x = q % width
    cdef int y = q // width
    return x <= 1 or y <= 1 or x >= width - 2 or y >= height - 2


def run_parallel(int[::1] grid, double[::1] times, int width, int height,
                 int[::1] tile_glue, int[::1] glue_str, int[::1] cand_ptr,
                 int[::1] cand_idx, int nglue, int ntiles, int tau,
                 int[::1] init_pos, long long max_steps):
    cdef int n = width * height
    cdef int* strength = <int*>calloc(ntiles, sizeof(int))
    cdef int* touched = <int*>calloc(ntiles, sizeof(int))
    cdef int* mark = <int*>calloc(n, sizeof(int))
    cdef int* cands = <int*>malloc(n * 4 * sizeof(int))
    cdef int* move_pos = <int*>malloc(n * sizeof(int))
    cdef int* move_tile = <int*>malloc(n * sizeof(int))
    cdef int offs[4]
    offs[0] = width
    offs[1] = 1
    offs[2] = -width
    offs[3] = -1
    cdef int ncands = init_pos.shape[0]
    cdef int i, q, t, k, d, r, nmoves
    cdef long long steps = 0
    cdef long long placed = 0
    cdef int stamp = 1
    cdef int status = TERMINAL
    cdef int bad = -1
    for i in range(ncands):
        cands[i] = init_pos[i]
    try:
        with nogil:
            while True:
                nmoves = 0
                stamp += 1
                for i in range(ncands):
                    q = cands[i]
                    if grid[q] >= 0 or mark[q] == stamp:
                        continue
                    mark[q] = stamp
                    t = _attachable(q, grid, width, tile_glue, glue_str, cand_ptr,
                                    cand_idx, nglue, tau, strength, touched)
                    if t == -2:
                        status = CONFLICT
                        bad = q
                        break
                    if t >= 0:
                        move_pos[nmoves] = q
                        move_tile[nmoves] = t
                        nmoves += 1
                if status != TERMINAL:
                    break
                if nmoves == 0:
                    break
                if steps >= max_steps:
                    status = BUDGET
                    break
                steps += 1
                for k in range(nmoves):
                    q = move_pos[k]
                    grid[q] = move_tile[k]
                    times[q] = steps
                    placed += 1
                    if _near_border(q, width, height):
                        status = OUT_OF_BOUNDS
                        bad = q
                        break
                if status != TERMINAL:
                    break
                ncands = 0
                for k in range(nmoves):
                    q = move_pos[k]
                    for d in range(4):
                        r = q + offs[d]
                        if grid[r] < 0:
                            cands[ncands] = r
                            ncands += 1
    finally:
        free(strength)
        free(touched)
        free(mark)
        free(cands)
        free(move_pos)
        free(move_tile)
    return status, steps, placed, bad


def run_continuous(int[::1] grid, double[::1] times, int width, int height,
                   int[::1] tile_glue, int[::1] glue_str, int[::1] cand_ptr,
                   int[::1] cand_idx, int nglue, int ntiles, int tau,
                   int[::1] init_pos, uint64_t seed, long long max_events,
                   double rate_scale):
    cdef int n = width * height
    cdef int* strength = <int*>calloc(ntiles, sizeof(int))
    cdef int* touched = <int*>calloc(ntiles, sizeof(int))
    cdef int* where = <int*>malloc(n * sizeof(int))
    cdef int* fpos = <int*>malloc(n * sizeof(int))
    cdef int* ftile = <int*>malloc(n * sizeof(int))
    cdef int offs[4]
    offs[0] = width
    offs[1] = 1
    offs[2] = -width
    offs[3] = -1
    cdef Rng rng
    cdef int nf = 0
    cdef int i, q, t, t2, k, last, d, r, slot
    cdef double elapsed = 0.0
    cdef double u
    cdef long long events = 0
    cdef int status = TERMINAL
    cdef int bad = -1
    cdef int ninit = init_pos.shape[0]
    _rng_seed(&rng, seed)
    for i in range(n):
        where[i] = -1
    try:
        with nogil:
            for i in range(ninit):
                q = init_pos[i]
                if grid[q] >= 0 or where[q] >= 0:
                    continue
                t = _attachable(q, grid, width, tile_glue, glue_str, cand_ptr,
                                cand_idx, nglue, tau, strength, touched)
                if t == -2:
                    status = CONFLICT
                    bad = q
                    break
                if t >= 0:
                    where[q] = nf
                    fpos[nf] = q
                    ftile[nf] = t
                    nf += 1
            while status == TERMINAL and nf > 0:
                if events >= max_events:
                    status = BUDGET
                    break
                u = _rng_double(&rng)
                elapsed += -log1p(-u) * rate_scale / nf
                k = <int>(_rng_double(&rng) * nf)
                q = fpos[k]
                t = ftile[k]
                last = nf - 1
                if k != last:
                    fpos[k] = fpos[last]
                    ftile[k] = ftile[last]
                    where[fpos[k]] = k
                nf -= 1
                where[q] = -1
                grid[q] = t
                times[q] = elapsed
                events += 1
                if _near_border(q, width, height):
                    status = OUT_OF_BOUNDS
                    bad = q
                    break
                for d in range(4):
                    r = q + offs[d]
                    if grid[r] >= 0:
                        continue
                    t2 = _attachable(r, grid, width, tile_glue, glue_str, cand_ptr,
                                     cand_idx, nglue, tau, strength, touched)
                    if t2 == -2:
                        status = CONFLICT
                        bad = r
                        break
                    slot = where[r]
                    if slot >= 0:
                        if ftile[slot] != t2:
                            status = CONFLICT
                            bad = r
                            break
                    elif t2 >= 0:
                        where[r] = nf
                        fpos[nf] = r
                        ftile[nf] = t2
                        nf += 1
    finally:
        free(strength)
        free(touched)
        free(where)
        free(fpos)
        free(ftile)
    return status, elapsed, events, bad


def fnv1a64(const unsigned char[::1] data):
    cdef uint64_t h = <uint64_t>0xCBF29CE484222325
    cdef Py_ssize_t i
    with nogil:
        for i in range(data.shape[0]):
            h ^= data[i]
            h *= <uint64_t>0x100000001B3
    return h
