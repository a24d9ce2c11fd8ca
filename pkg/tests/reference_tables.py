"""Frozen reference data shared by the test modules.

REFINED_TRIANGLE holds the singly refined counts for orders 1 through 7 and
EXTENDED_MATRICES the extended square arrays for orders 3 through 7.  Both
are published tables, entered here by hand; the tests compare computed
values against these digits, never the other way around.
"""

REFINED_TRIANGLE = {
    1: (1,),
    2: (1, 1),
    3: (2, 3, 2),
    4: (7, 14, 14, 7),
    5: (42, 105, 135, 105, 42),
    6: (429, 1287, 2002, 2002, 1287, 429),
    7: (7436, 26026, 47320, 56784, 47320, 26026, 7436),
}

EXTENDED_MATRICES = {
    3: (
        (0, 1, 1),
        (1, 1, 1),
        (-2, -1, 0),
    ),
    4: (
        (0, 2, 3, 2),
        (-2, 2, 4, 3),
        (2, 1, 2, 2),
        (-7, -5, -2, 0),
    ),
    5: (
        (0, 7, 14, 14, 7),
        (-7, 7, 23, 26, 14),
        (-21, -2, 16, 23, 14),
        (7, -7, -2, 7, 7),
        (-42, -35, -21, -7, 0),
    ),
    6: (
        (0, 42, 105, 135, 105, 42),
        (-42, 42, 203, 300, 250, 105),
        (-147, -56, 161, 322, 300, 135),
        (-282, -179, -8, 161, 203, 105),
        (42, -177, -179, -56, 42, 42),
        (-429, -387, -282, -147, -42, 0),
    ),
    7: (
        (0, 429, 1287, 2002, 2002, 1287, 429),
        (-429, 429, 2847, 5174, 5551, 3731, 1287),
        (-1716, -1131, 2418, 6422, 7748, 5551, 2002),
        (-3718, -3874, -546, 4004, 6422, 5174, 2002),
        (-5720, -5707, -4043, -546, 2418, 2847, 1287),
        (429, -4433, -5707, -3874, -1131, 429, 429),
        (-7436, -7007, -5720, -3718, -1716, -429, 0),
    ),
}

#: total counts for orders 0..11, the classical sequence
TOTALS = (
    1, 1, 2, 7, 42, 429, 7436, 218348, 10850216, 911835460,
    129534272700, 31095744852375,
)
