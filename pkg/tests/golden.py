"""Values frozen from ``python3 tests/oracles.py``.

MODULI maps m to the smallest modulus that is (irreducible, primitive,
primitive with zero coefficients at degrees m-1 and m-2).
"""

MODULI = {
    2: (0x7, 0x7, None),
    3: (0xB, 0xB, None),
    4: (0x13, 0x13, 0x13),
    5: (0x25, 0x25, 0x25),
    6: (0x43, 0x43, 0x43),
    7: (0x83, 0x83, 0x83),
    8: (0x11B, 0x11D, 0x11D),
    9: (0x203, 0x211, 0x211),
    10: (0x409, 0x409, 0x409),
    11: (0x805, 0x805, 0x805),
    12: (0x1009, 0x1053, 0x1053),
    13: (0x201B, 0x201B, 0x201B),
    14: (0x4021, 0x402B, 0x402B),
    15: (0x8003, 0x8003, 0x8003),
    16: (0x1002B, 0x1002D, 0x1002D),
}

F16_TRACE_ZEROS = 8
F16_LAM_TIMES_LAM3 = 0x3

PGAMMAL_2_8 = 1512
CLUB_TRACE_STABILIZER_Q8 = 12

TRIADS_Q8 = 28

CLUB_CENSUS_H3 = {"subspaces": 1395, "clubs": 126, "per_head": 14, "heads": 9}

# new_family(alpha=lam, beta=lam^2, 0, 0) line spectra, counted line by line
NEW_FAMILY_SPECTRUM = {
    3: {0: 28, 2: 45},
    4: {0: 108, 2: 160, 4: 5},
    5: {0: 412, 2: 640, 8: 5},
}
