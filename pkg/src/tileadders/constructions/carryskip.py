"""Carry-skip adder on a single row of three-tile blocks.

Block i occupies, from east to west, a marker S_i at x=-(3i+1) and the bits
A_i, B_i at x=-(3i+2), -(3i+3).  An east cap sits at x=0 and a west cap at
x=-(3n+1), so the seed row holds 3n+2 tiles.

Every block starts at once from its marker.  Layer 1 classifies the pair:
equal bits ("generate") emit their carry-out without waiting, unequal bits
("propagate") wait for the carry-in.  Layer 2 moves carries west, three
steps per propagate block.  Layer 3 prints the sum above B_i; the final
carry is printed above the west cap.

The east end takes a four-tile detour before injecting carry 0 so the LSB
block sees its carry at the same step as a block fed by a generate pair.
With that, parallel time is exactly ``INTERCEPT + SLOPE * k`` where k is
the longest run of propagate pairs.
"""

from .common import WESTWARD_UP, AdderSpec, Builder, finish, input_tiles, skip_block_tiles

SLOPE = 3
INTERCEPT = 8


def build_carryskip(n: int):
    if n < 1:
        raise ValueError("n must be at least 1")
    b = Builder("ks")
    input_tiles(b)
    skip_block_tiles(b, WESTWARD_UP, "", "N")
    mk = b.tile("MK", E=("wild", 2), W=("wild", 2), N=("S", 2))
    ec = b.tile("EC", W=("wild", 2), N=("e0", 2))
    wc = b.tile("WC", E=("wild", 2), N=("w0", 2))
    # east detour: (0,1) -> (1,1) -> (1,2) -> (0,2), which injects carry 0
    b.tile("D1", S=("e0", 2), E=("d1", 2))
    b.tile("D2", W=("d1", 2), N=("d2", 2))
    b.tile("D3", S=("d2", 2), W=("d3", 2))
    b.tile("D4", E=("d3", 2), W=("c0", 1))
    # west end: the carry out of the last block turns into the final sum bit
    b.tile("R1W", S=("w0", 2), W=("w1", 2), N=("w1n", 1))
    b.tile("W2", E=("w1", 2), N=("w2", 1))
    for c in (0, 1):
        b.tile(f"R2W{c}", E=(f"c{c}", 1), S=("w1n", 1), W=(f"cw{c}", 1), N=("cwn", 1))
        b.tile(f"W3{c}", E=(f"cw{c}", 1), S=("w2", 1), N=(f"cw3{c}", 2))
        b.tile(f"W4{c}", S=(f"cw3{c}", 2), E=(f"cw4{c}", 1))
        b.tile(f"OUTMSB{c}", str(c), W=(f"cw4{c}", 1), S=("cwn", 1))

    x_w = -(3 * n + 1)
    b.put((0, 0), ec)
    b.put((x_w, 0), wc)
    for i in range(n):
        b.put((-(3 * i + 1), 0), mk)
    a_pos = [(-(3 * i + 2), 0) for i in range(n)]
    b_pos = [(-(3 * i + 3), 0) for i in range(n)]
    c_pos = [(x, 3) for x, _ in b_pos] + [(x_w, 3)]
    return finish(b, AdderSpec("carryskip", n, n), a_pos, b_pos, c_pos,
                  {"markers": [[-(3 * i + 1), 0] for i in range(n)],
                   "slope": SLOPE, "intercept": INTERCEPT})
