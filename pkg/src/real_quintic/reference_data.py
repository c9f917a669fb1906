"""Published reference data used as golden values.

``P04_J_TEXT`` is the genus-0, four-boundary amplitude ``P`` written in the J
generators, stored in the canonical ring text format.  ``F04_COEFFS`` is the
numerator of its holomorphic ambiguity over ``10000 (1 - 3125 z)^2``.
``BPS_TABLES`` holds the published open BPS numbers keyed by ``(g, h)``.
"""

from fractions import Fraction

F04_NUMERATOR = (2, -20125, 70618750, -86493078125)
F04_DENOMINATOR = 10000

BPS_TABLES = {
    (0, 4): {
        2: 0,
        4: 0,
        6: 0,
        8: -307669500,
        10: -1290543544800,
        12: -4192442370526500,
        14: -11974312128284645400,
        16: -31709386561589633978460,
        18: -79870219101822591783739800,
        20: -194146223749422074623095454800,
    },
    (0, 5): {
        1: 0,
        3: 0,
        5: 0,
        7: 0,
        9: 0,
        11: -101052180000,
        13: -6448499064000,
        15: 2809704427965432000,
        17: 19034205058652662269000,
        19: 85987169904148441092385200,
    },
    (0, 6): {
        2: 0,
        4: 0,
        6: 0,
        8: 0,
        10: 0,
        12: 0,
        14: 10969992383850000,
        16: 88807052603386080000,
        18: 453871851092663617206000,
        20: 1856308715086126538509560000,
    },
    (1, 1): {
        1: 0,
        3: 0,
        5: -222535,
        7: -472460880,
        9: -970639017980,
        11: -1925950714205525,
        13: -3771152449472734885,
        15: -7341083828377813532445,
        17: -14254813486499789264497980,
        19: -27655486644196368361422400900,
    },
    (1, 2): {
        2: 0,
        4: 0,
        6: 0,
        8: -1798092240,
        10: -3910898328975,
        12: -3254492224834500,
        14: 11749281716111889000,
        16: 75858033724596666836250,
        18: 284100639663878543462155290,
        20: 881568399267730913608111758000,
    },
    (1, 3): {
        1: 0,
        3: 0,
        5: 0,
        7: 0,
        9: 0,
        11: 59476704611850,
        13: 376498723243912410,
        15: 1597793312432171312570,
        17: 5622302692504776557418000,
        19: 17697465511801448466779111250,
    },
    (1, 4): {
        2: 0,
        4: 0,
        6: 0,
        8: 0,
        10: 0,
        12: 0,
        14: -510835096894879500,
        16: -4625213168889849497100,
        18: -26075494174267321098602160,
        20: -116382815077174964736448167150,
    },
}

# Each line: exponents of (u, v1, v2, v3, Q0, Q1, Q2, Q3, m1, m2) : coefficient
P04_J_TEXT = """\
basis J
0,0,0,0,0,0,0,0,0,0 : 2*z^2-20125*z^3+70618750*z^4-86493078125*z^5/80-1250000*z+7812500000*z^2-24414062500000*z^3+38146972656250000*z^4-23841857910156250000*z^5|0/1
0,0,0,0,0,0,0,0,0,1 : 75*z^2-235875*z^3/4-37500*z+117187500*z^2-122070312500*z^3|0/1
0,0,0,0,0,0,0,0,0,2 : -5*z/4-12500*z|0/1
0,0,0,0,0,0,0,0,1,0 : -1125*z^3+1171875*z^4/2-25000*z+117187500*z^2-244140625000*z^3+190734863281250*z^4|0/1
0,0,0,0,0,0,0,0,1,1 : 375*z^2/2-12500*z+19531250*z^2|0/1
0,0,0,0,0,0,0,0,2,0 : 2*z-9500*z^2+16015625*z^3/20-187500*z+585937500*z^2-610351562500*z^3|0/1
0,0,0,0,0,0,0,0,3,1 : 1/6|0/1
0,0,0,0,0,0,0,0,4,0 : 9-12500*z/120-375000*z|0/1
0,0,0,1,0,0,0,0,0,0 : 25*z^2/8-50000*z+78125000*z^2|0/1
0,0,0,1,1,0,0,0,0,0 : -75*z^2+235875*z^3/4-37500*z+117187500*z^2-122070312500*z^3|0/1
0,0,0,1,1,0,0,0,0,1 : 5*z/2-6250*z|0/1
0,0,0,1,1,0,0,0,1,0 : -375*z^2/2-12500*z+19531250*z^2|0/1
0,0,0,1,1,0,0,0,3,0 : -1/6|0/1
0,0,0,2,2,0,0,0,0,0 : -5*z/4-12500*z|0/1
0,0,1,0,0,0,0,0,0,0 : -81875*z^3/8-75000*z+234375000*z^2-244140625000*z^3|0/1
0,0,1,0,0,0,0,0,2,0 : -5*z/4-12500*z|0/1
0,0,1,0,0,1,0,0,0,0 : 75*z^2-235875*z^3/4-37500*z+117187500*z^2-122070312500*z^3|0/1
0,0,1,0,0,1,0,0,0,1 : -5*z/2-6250*z|0/1
0,0,1,0,0,1,0,0,1,0 : 375*z^2/2-12500*z+19531250*z^2|0/1
0,0,1,0,0,1,0,0,3,0 : 1/6|0/1
0,0,1,0,1,0,0,0,0,0 : 236625*z^3/4-37500*z+117187500*z^2-122070312500*z^3|0/1
0,0,1,0,1,0,0,0,0,1 : -8000*z^2/1-6250*z+9765625*z^2|0/1
0,0,1,0,1,0,0,0,1,0 : -1*z+1625*z^2/5-31250*z+48828125*z^2|0/1
0,0,1,0,1,0,0,0,2,1 : -1/2|0/1
0,0,1,0,1,0,0,0,3,0 : -3/10|0/1
0,0,1,1,1,1,0,0,0,0 : 5*z/2-6250*z|0/1
0,0,1,1,2,0,0,0,0,0 : 8000*z^2/1-6250*z+9765625*z^2|0/1
0,0,1,1,2,0,0,0,2,0 : 1/2|0/1
0,0,2,0,0,2,0,0,0,0 : -5*z/4-12500*z|0/1
0,0,2,0,1,0,0,0,1,0 : 5*z/2-6250*z|0/1
0,0,2,0,1,1,0,0,0,0 : -8000*z^2/1-6250*z+9765625*z^2|0/1
0,0,2,0,1,1,0,0,2,0 : -1/2|0/1
0,0,2,0,2,0,0,0,0,0 : 1*z-4750*z^2-119921875*z^3/10-93750*z+292968750*z^2-305175781250*z^3|0/1
0,0,2,0,2,0,0,0,1,1 : 1/2|0/1
0,0,2,0,2,0,0,0,2,0 : 9-43750*z/20-62500*z|0/1
0,0,2,1,3,0,0,0,1,0 : -1/2|0/1
0,0,3,0,2,0,0,0,0,0 : -5*z/4-12500*z|0/1
0,0,3,0,2,1,0,0,1,0 : 1/2|0/1
0,0,3,0,3,0,0,0,0,1 : -1/6|0/1
0,0,3,0,3,0,0,0,1,0 : -9+59375*z/30-93750*z|0/1
0,0,3,1,4,0,0,0,0,0 : 1/6|0/1
0,0,4,0,3,1,0,0,0,0 : -1/6|0/1
0,0,4,0,4,0,0,0,0,0 : 3-25000*z/40-125000*z|0/1
0,1,0,0,0,0,0,0,0,0 : -140625*z^4/8-100000*z+468750000*z^2-976562500000*z^3+762939453125000*z^4|0/1
0,1,0,0,0,0,0,0,2,0 : -375*z^2/4-25000*z+39062500*z^2|0/1
0,1,0,0,0,0,0,0,4,0 : -1/8|0/1
0,1,0,0,0,1,0,0,0,0 : 1125*z^3-1171875*z^4/2-25000*z+117187500*z^2-244140625000*z^3+190734863281250*z^4|0/1
0,1,0,0,0,1,0,0,0,1 : -375*z^2/2-12500*z+19531250*z^2|0/1
0,1,0,0,0,1,0,0,1,0 : -2*z+9500*z^2-16015625*z^3/10-93750*z+292968750*z^2-305175781250*z^3|0/1
0,1,0,0,0,1,0,0,2,1 : -1/2|0/1
0,1,0,0,0,1,0,0,3,0 : -9+12500*z/30-93750*z|0/1
0,1,0,1,1,1,0,0,0,0 : 375*z^2/2-12500*z+19531250*z^2|0/1
0,1,0,1,1,1,0,0,2,0 : 1/2|0/1
0,1,1,0,0,1,0,0,1,0 : 5*z/2-6250*z|0/1
0,1,1,0,0,2,0,0,0,0 : -375*z^2/2-12500*z+19531250*z^2|0/1
0,1,1,0,0,2,0,0,2,0 : -1/2|0/1
0,1,1,0,1,0,0,0,1,0 : 375*z^2/2-12500*z+19531250*z^2|0/1
0,1,1,0,1,0,0,0,3,0 : 1/2|0/1
0,1,1,0,1,1,0,0,0,0 : 1*z-1625*z^2/5-31250*z+48828125*z^2|0/1
0,1,1,0,1,1,0,0,1,1 : 1/1|0/1
0,1,1,0,1,1,0,0,2,0 : 9/10|0/1
0,1,1,1,2,1,0,0,1,0 : -1/1|0/1
0,1,2,0,1,1,0,0,0,0 : -5*z/2-6250*z|0/1
0,1,2,0,1,2,0,0,1,0 : 1/1|0/1
0,1,2,0,2,0,0,0,0,0 : -375*z^2/4-25000*z+39062500*z^2|0/1
0,1,2,0,2,0,0,0,2,0 : -3/4|0/1
0,1,2,0,2,1,0,0,0,1 : -1/2|0/1
0,1,2,0,2,1,0,0,1,0 : -9+43750*z/10-31250*z|0/1
0,1,2,1,3,1,0,0,0,0 : 1/2|0/1
0,1,3,0,2,2,0,0,0,0 : -1/2|0/1
0,1,3,0,3,0,0,0,1,0 : 1/2|0/1
0,1,3,0,3,1,0,0,0,0 : 9-59375*z/30-93750*z|0/1
0,1,4,0,4,0,0,0,0,0 : -1/8|0/1
0,2,0,0,0,1,0,0,1,0 : 375*z^2/2-12500*z+19531250*z^2|0/1
0,2,0,0,0,1,0,0,3,0 : 1/2|0/1
0,2,0,0,0,2,0,0,0,0 : 2*z-9500*z^2+16015625*z^3/20-187500*z+585937500*z^2-610351562500*z^3|0/1
0,2,0,0,0,2,0,0,1,1 : 1/2|0/1
0,2,0,0,0,2,0,0,2,0 : 9-12500*z/20-62500*z|0/1
0,2,0,1,1,2,0,0,1,0 : -1/2|0/1
0,2,1,0,0,2,0,0,0,0 : -5*z/4-12500*z|0/1
0,2,1,0,0,3,0,0,1,0 : 1/2|0/1
0,2,1,0,1,1,0,0,0,0 : -375*z^2/2-12500*z+19531250*z^2|0/1
0,2,1,0,1,1,0,0,2,0 : -3/2|0/1
0,2,1,0,1,2,0,0,0,1 : -1/2|0/1
0,2,1,0,1,2,0,0,1,0 : -9/10|0/1
0,2,1,1,2,2,0,0,0,0 : 1/2|0/1
0,2,2,0,1,3,0,0,0,0 : -1/2|0/1
0,2,2,0,2,1,0,0,1,0 : 3/2|0/1
0,2,2,0,2,2,0,0,0,0 : 9-43750*z/20-62500*z|0/1
0,2,3,0,3,1,0,0,0,0 : -1/2|0/1
0,3,0,0,0,2,0,0,0,0 : -375*z^2/4-25000*z+39062500*z^2|0/1
0,3,0,0,0,2,0,0,2,0 : -3/4|0/1
0,3,0,0,0,3,0,0,0,1 : -1/6|0/1
0,3,0,0,0,3,0,0,1,0 : -9+12500*z/30-93750*z|0/1
0,3,0,1,1,3,0,0,0,0 : 1/6|0/1
0,3,1,0,0,4,0,0,0,0 : -1/6|0/1
0,3,1,0,1,2,0,0,1,0 : 3/2|0/1
0,3,1,0,1,3,0,0,0,0 : 3/10|0/1
0,3,2,0,2,2,0,0,0,0 : -3/4|0/1
0,4,0,0,0,3,0,0,1,0 : 1/2|0/1
0,4,0,0,0,4,0,0,0,0 : 9-12500*z/120-375000*z|0/1
0,4,1,0,1,3,0,0,0,0 : -1/2|0/1
0,5,0,0,0,4,0,0,0,0 : -1/8|0/1
checksum b72c0dc723aba0c4a76d7af301e1b9d5f31998c3928fd67096afdf3afa84e47e
"""


def f04():
    """The published holomorphic ambiguity as a field element."""
    from .field import FieldElement

    return FieldElement.from_z_poly([Fraction(c, F04_DENOMINATOR) for c in F04_NUMERATOR], den_power=2)
