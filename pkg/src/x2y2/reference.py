"""Published eigenvalues of H = p_x^2 + p_y^2 + x^2 y^2 (a = 1 for RRK/CMX).

Values are kept as the printed strings so the printed precision is known.
"""

from decimal import Decimal

# label: (RRHO, RRK, CMX); None where no value was published
REFERENCE = {
    "1A1": ("1.10822315759", "1.108224", "1.10822"),
    "1E": ("2.37863782934", "2.37869", "2.376"),
    "1B1": ("3.05608115466", "3.0563", "3.055"),
    "2A1": ("3.5149490453", "3.518", None),
    "2E": ("4.09346927636", "4.10", None),
    "2B1": ("4.75277240183", "4.78", None),
    "3A1": ("4.98496358748", "5.07", None),
    "1B2": ("5.01127928154", "5.01127930", "5.0112"),
    "3E": ("5.498979516", "5.7", None),
    "3B1": ("6.1448192750", "6.47", None),
    "4A1": ("6.237128106", None, None),
    "4E": ("6.67235007", None, None),
    "5E": ("7.1810983", None, None),
    "4B1": ("7.37557348", None, None),
    "5A1": ("7.381759978", None, None),
    "6E": ("7.999", None, None),
    "1A2": ("8.074373925386", "8.0743745", "8.0738"),
}

METHODS = ("RRHO", "RRK", "CMX")


def value(label, method="RRHO"):
    s = REFERENCE[label][METHODS.index(method)]
    return None if s is None else float(s)


def half_ulp(text):
    """Half a unit in the last printed digit, e.g. '3.518' -> 5e-4."""
    exp = Decimal(text).as_tuple().exponent
    return 0.5 * 10.0**exp


def split_label(label):
    """'2A1' -> (1, 'A1'): 0-based index within the species block."""
    i = 0
    while label[i].isdigit():
        i += 1
    return int(label[:i]) - 1, label[i:]


def states_per_species():
    """Number of tabulated states for each species label (E counted once)."""
    counts = {}
    for label in REFERENCE:
        idx, sp = split_label(label)
        counts[sp] = max(counts.get(sp, 0), idx + 1)
    return counts
