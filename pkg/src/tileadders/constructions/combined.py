"""Combined adder: carry-skip inside sections, carry-select between them.

m = ceil(sqrt(n)) rounded up to an even number; the padded width is m*m
and there are m/2 sections of 2m addend pairs.  Section s has base
Y = 8s and two antiparallel rows of m skip blocks:

* the odd row (seed at y = Y) holds the section's low m pairs, carry flows
  west and the three block layers grow north into Y+1..Y+3;
* the even row (seed at y = Y+7) holds the high m pairs, carry flows east
  and its layers grow south into Y+6..Y+4.

A column at the west end (x_w - 1) lifts the carry from the odd row to the
even row.  Sections above the first start with carry "U" (unknown, computed
as if 0): blocks that see U leave their sum bit blank until the real carry
sweeps in along the output layer.  At the east end a tile K at
(1, Y+4) prints the section's carry-out: straight from the even row when it
is known, or copied from the section's own real carry-in when the whole
section propagates.  A column at x = 1 hands K to the next section.

Parallel time is O(log n) on average and O(sqrt(n)) in the worst case.
"""

import math

from .common import (
    EASTWARD_DOWN,
    WESTWARD_UP,
    AdderSpec,
    Builder,
    finish,
    input_tiles,
    skip_block_tiles,
)

SECTION_PITCH = 8


def build_combined(n: int):
    if n < 1:
        raise ValueError("n must be at least 1")
    m = math.isqrt(n - 1) + 1
    m += m % 2
    sections = m // 2
    b = Builder("cmb")
    input_tiles(b, ("N", "S"))
    skip_block_tiles(b, WESTWARD_UP, "o.", "N", with_unknown=True)
    skip_block_tiles(b, EASTWARD_DOWN, "e.", "S", with_unknown=True)

    mko = b.tile("MKO", E=("wild", 2), W=("wild", 2), N=("o.S", 2))
    mke = b.tile("MKE", E=("wild", 2), W=("wild", 2), S=("e.S", 2))
    oc = b.tile("OC", W=("wild", 2), N=("oc1", 2), E=("side", 1))
    st1 = b.tile("ST1", S=("oc1", 2), N=("oc2", 2), E=("side", 1))
    st2z = b.tile("ST2z", S=("oc2", 2), W=("o.c0", 1))
    st2 = b.tile("ST2", S=("oc2", 2), W=("o.cU", 1), N=("st2n", 1), E=("sideT", 1))
    evc2 = b.tile("EVC2", N=("evc", 2), S=("rx", 1), E=("side", 1))
    evc = b.tile("EVC", W=("wild", 2), S=("evc", 2), E=("side", 1))
    owc = b.tile("OWC", E=("wild", 2), W=("lk", 2), N=("owc", 2))
    ewc = b.tile("EWC", E=("wild", 2), W=("lk", 2))
    lk = b.tile("LK", E=("lk", 2), W=("lk2", 2))
    spl_b = b.tile("SPLb", E=("lk2", 2), N=("sp", 2))
    spl = b.tile("SPL", E=("lk2", 2), N=("sp", 2), S=("sp", 2))
    spl_t = b.tile("SPLt", E=("lk2", 2), S=("sp", 2))
    sp = b.tile("SP", N=("sp", 2), S=("sp", 2))

    # west turn: carry climbs (x_w,Y+2) -> column x_w-1 -> (x_w,Y+5);
    # a real carry goes straight up (x_w,Y+3) -> (x_w,Y+4)
    b.tile("OW1", S=("owc", 2), N=("ow1", 1))
    for c in ("0", "1", "U"):
        b.tile(f"TC1{c}", E=(f"o.c{c}", 1), S=("ow1", 1), W=(f"t1{c}", 2),
               N=("tU", 1) if c == "U" else None)
        b.tile(f"TC2{c}", E=(f"t1{c}", 2), N=(f"t2{c}", 2))
        b.tile(f"TC3{c}", S=(f"t2{c}", 2), N=(f"t3{c}", 2))
        b.tile(f"TC4{c}", S=(f"t3{c}", 2), N=(f"t4{c}", 2))
        b.tile(f"TC5{c}", S=(f"t4{c}", 2), E=(f"t5{c}", 2))
        b.tile(f"TC6{c}", W=(f"t5{c}", 2), E=(f"e.c{c}", 1))
    for r in (0, 1):
        b.tile(f"TR1{r}", E=(f"o.real{r}", 1), S=("tU", 1), N=(f"tr{r}", 2))
        b.tile(f"TR2{r}", S=(f"tr{r}", 2), E=(f"e.real{r}", 1))

    # east end: section carry-out K and the column to the next section
    for c in (0, 1):
        b.tile(f"RX{c}", W=(f"e.c{c}", 1), N=("rx", 1), S=(f"kx{c}", 2), E=("side", 1))
        b.tile(f"RK{c}", N=(f"kx{c}", 2), E=(f"k{c}", 2))
    b.tile("RXU", W=("e.cU", 1), N=("rx", 1), S=("kxU", 1), E=("side", 1))
    for r in (0, 1):
        b.tile(f"RKU{r}", N=("kxU", 1), S=(f"rcn{r}", 1), E=(f"k{r}", 2))
        b.tile(f"K{r}", str(r), W=(f"k{r}", 2), N=(f"col{r}", 1))
        b.tile(f"COL{r}", S=(f"col{r}", 1), W=("side", 1), N=(f"col{r}", 1))
        b.tile(f"COLT{r}", S=(f"col{r}", 1), W=("sideT", 1), N=(f"colt{r}", 2))
        b.tile(f"CT{r}", S=(f"colt{r}", 2), W=(f"ct{r}", 1))
        b.tile(f"RC{r}", E=(f"ct{r}", 1), S=("st2n", 1), W=(f"o.real{r}", 1), N=(f"rcn{r}", 1))

    x_w = -(3 * m + 1)
    top = SECTION_PITCH * (sections - 1) + 7
    a_pos, b_pos, c_pos = [], [], []
    for s in range(sections):
        y = SECTION_PITCH * s
        b.put((0, y), oc)
        b.put((0, y + 1), st1)
        b.put((0, y + 2), st2z if s == 0 else st2)
        b.put((0, y + 6), evc2)
        b.put((0, y + 7), evc)
        b.put((x_w, y), owc)
        b.put((x_w, y + 7), ewc)
        b.put((x_w - 1, y), lk)
        b.put((x_w - 1, y + 7), lk)
        for i in range(m):
            b.put((-(3 * i + 1), y), mko)
            a_pos.append((-(3 * i + 2), y))
            b_pos.append((-(3 * i + 3), y))
            c_pos.append((-(3 * i + 3), y + 3))
        for i in range(m):
            b.put((x_w + 1 + 3 * i, y + 7), mke)
            a_pos.append((x_w + 2 + 3 * i, y + 7))
            b_pos.append((x_w + 3 + 3 * i, y + 7))
            c_pos.append((x_w + 3 + 3 * i, y + 4))
    for yy in range(top + 1):
        if yy % SECTION_PITCH in (0, 7):
            t = spl_b if yy == 0 else spl_t if yy == top else spl
        else:
            t = sp
        b.put((x_w - 2, yy), t)
    c_pos.append((1, SECTION_PITCH * (sections - 1) + 4))
    spec = AdderSpec("combined", n, m * m, m, 2 * m)
    return finish(b, spec, a_pos, b_pos, c_pos,
                  {"sections": sections, "section_pitch": SECTION_PITCH,
                   "carry_out": [[1, SECTION_PITCH * s + 4] for s in range(sections)]})
