"""Carry-select adder on an m x m grid of addend pairs (m = ceil(sqrt(n))).

Row j of the seed sits at y = 4j and holds bits j*m .. j*m+m-1, with A at
x = -(2i+1) and B at x = -(2i+2) for the i-th pair of the row.  A frame
spine at x = 0 ties the rows together and feeds each row its carry 0 (for
the addition layer) and its increment 1 (for the increment layer).  Row
caps sit at x_w = -(2m+1); the carry-propagation wall grows in column
x_w - 1 from a no-carry tile F' at (x_w - 1, 0).

Phases, per row and all rows in parallel:

1. addition layer (y = 4j+1): ripple-add the row with carry-in 0;
2. increment layer (y = 4j+2): add 1 to that sum, giving for every pair the
   sum bit under both carry-ins plus the row's "all ones" flag;
3. wall: cout = c0 or (cin and all_ones) climbs four cells per row;
4. output layer (y = 4j+3): grows east from the wall printing the selected
   sum bit three cells above each B_i.

Parallel time is 8m + 1 on every input.
"""

import math

from .common import AdderSpec, Builder, finish, input_tiles

PHASES = ("addition", "increment", "wall", "output")


def build_carryselect(n: int):
    if n < 1:
        raise ValueError("n must be at least 1")
    m = math.isqrt(n - 1) + 1
    b = Builder("csel")
    input_tiles(b)

    sp0b = b.tile("SP0b", W=("wild", 2), N=("sp0", 2))
    sp0 = b.tile("SP0", S=("sp3", 2), W=("wild", 2), N=("sp0", 2))
    sp1 = b.tile("SP1", S=("sp0", 2), N=("sp1", 2), W=("p0", 1))
    sp2 = b.tile("SP2", S=("sp1", 2), N=("sp2", 2), W=("i1", 1))
    sp2t = b.tile("SP2T", S=("sp1", 2), W=("i1", 1))
    sp3 = b.tile("SP3", S=("sp2", 2), N=("sp3", 2))
    cap0 = b.tile("CAP0", E=("wild", 2), W=("f", 2), N=("cap", 1))
    cap = b.tile("CAP", E=("wild", 2), N=("cap", 1))
    fprime = b.tile("F'", E=("f", 2), N=("win0", 1))

    for c in (0, 1):
        for a in (0, 1):
            b.tile(f"LA{c}{a}", E=(f"p{c}", 1), S=(f"N.bit{a}", 1),
                   W=(f"pa{c}{a}", 1), N=("la", 1))
            for bb in (0, 1):
                t = a + bb + c
                b.tile(f"LB{c}{a}{bb}", E=(f"pa{c}{a}", 1), S=(f"N.bit{bb}", 1),
                       W=(f"p{t >> 1}", 1), N=(f"s{t & 1}", 1))
        b.tile(f"IA{c}", E=(f"i{c}", 1), S=("la", 1), W=(f"ia{c}", 1), N=("lz", 1))
        for s in (0, 1):
            b.tile(f"IB{c}{s}", E=(f"ia{c}", 1), S=(f"s{s}", 1),
                   W=(f"i{c & s}", 1), N=(f"pair{s}{s ^ c}", 1))
        b.tile(f"C{c}", E=(f"p{c}", 1), S=("cap", 1), W=(f"Cw{c}", 1), N=(f"Cn{c}", 1))
        for z in (0, 1):
            b.tile(f"Z{c}{z}", E=(f"i{z}", 1), S=(f"Cn{c}", 1), W=(f"Z{c}{z}", 1), N=("zn", 1))
    for cin in (0, 1):
        b.tile(f"SEL{cin}", W=(f"selw{cin}", 1), S=("zn", 1), E=(f"sel{cin}", 1))
        b.tile(f"OA{cin}", W=(f"sel{cin}", 1), S=("lz", 1), E=(f"sel{cin}", 1))
        for s0 in (0, 1):
            b.tile(f"WA{cin}{s0}", S=(f"win{cin}", 1), E=(f"Cw{s0}", 1), N=(f"wa{cin}", 1))
            for z in (0, 1):
                cout = s0 | (cin & z)
                b.tile(f"WB{cin}{s0}{z}", S=(f"wa{cin}", 1), E=(f"Z{s0}{z}", 1),
                       N=(f"wb{cin}{cout}", 2))
            for s1 in (0, 1):
                b.tile(f"OB{cin}{s0}{s1}", str(s1 if cin else s0), W=(f"sel{cin}", 1),
                       S=(f"pair{s0}{s1}", 1), E=(f"sel{cin}", 1))
        for cout in (0, 1):
            b.tile(f"WC{cin}{cout}", S=(f"wb{cin}{cout}", 2), E=(f"selw{cin}", 1),
                   N=(f"w{cout}", 2))
    for c in (0, 1):
        b.tile(f"WD{c}", str(c), S=(f"w{c}", 2), N=(f"win{c}", 1))

    x_w = -(2 * m + 1)
    r = m
    for j in range(r):
        y = 4 * j
        b.put((0, y), sp0b if j == 0 else sp0)
        b.put((0, y + 1), sp1)
        b.put((0, y + 2), sp2t if j == r - 1 else sp2)
        if j < r - 1:
            b.put((0, y + 3), sp3)
        b.put((x_w, y), cap0 if j == 0 else cap)
    b.put((x_w - 1, 0), fprime)

    a_pos, b_pos, c_pos = [], [], []
    for k in range(m * m):
        j, i = divmod(k, m)
        a_pos.append((-(2 * i + 1), 4 * j))
        b_pos.append((-(2 * i + 2), 4 * j))
        c_pos.append((-(2 * i + 2), 4 * j + 3))
    c_pos.append((x_w - 1, 4 * r))
    return finish(b, AdderSpec("carryselect", n, m * m, m), a_pos, b_pos, c_pos,
                  {"wall_x": x_w - 1, "rows": r})


def phase_of(geometry: dict, p) -> str:
    """Phase that places the (non-seed) tile at ``p``."""
    m = geometry["row_width"]
    x, y = p
    if x < -2 * m:
        return "wall"
    return {1: "addition", 2: "increment", 3: "output"}.get(y % 4, "seed")
