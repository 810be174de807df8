"""Baseline ripple-carry adder: one row, carry moves one bit every two steps.

Layout (x grows east): east cap at x=0 with a second frame tile above it that
injects carry 0; pair i holds A_i at x=-(2i+1) and B_i at x=-(2i+2); the
west cap sits at x=-(2n+1).  Sum bit i appears above B_i, the final carry
above the west cap.  Parallel time is exactly 2n+1 on every input.
"""

from .common import AdderSpec, Builder, finish, input_tiles


def build_ripple(n: int):
    if n < 1:
        raise ValueError("n must be at least 1")
    b = Builder("rp")
    input_tiles(b)
    ec = b.tile("EC", W=("wild", 2), N=("ec", 2))
    ec2 = b.tile("EC2", S=("ec", 2), W=("c0", 1))
    wc = b.tile("WC", E=("wild", 2), N=("wc", 1))
    for c in (0, 1):
        for a in (0, 1):
            b.tile(f"RA{c}{a}", E=(f"c{c}", 1), S=(f"N.bit{a}", 1), W=(f"ca{c}{a}", 1))
            for bb in (0, 1):
                total = a + bb + c
                b.tile(f"RB{c}{a}{bb}", str(total & 1), E=(f"ca{c}{a}", 1),
                       S=(f"N.bit{bb}", 1), W=(f"c{total >> 1}", 1))
        b.tile(f"RW{c}", str(c), E=(f"c{c}", 1), S=("wc", 1))

    x_w = -(2 * n + 1)
    b.put((0, 0), ec)
    b.put((0, 1), ec2)
    b.put((x_w, 0), wc)
    a_pos = [(-(2 * i + 1), 0) for i in range(n)]
    b_pos = [(-(2 * i + 2), 0) for i in range(n)]
    c_pos = [(x, 1) for x, _ in b_pos] + [(x_w, 1)]
    return finish(b, AdderSpec("ripple", n, n), a_pos, b_pos, c_pos)
