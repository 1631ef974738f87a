"""Example systems shared by several test modules."""

from coalgkit.bisim import mealy, powerset_view
from coalgkit.finset import FinRel, diagonal
from coalgkit.semantics import KripkeModel

W5 = [str(i) for i in range(1, 6)]
CHAIN = KripkeModel(
    W5, [("1", "2"), ("2", "3"), ("3", "4"), ("4", "5")], {"p": ["2", "3"], "q": W5, "r": []}
)

# two bisimilar models; M's valuation is the one forced by atomic harmony
BISIM_M = KripkeModel(
    ["1", "2", "3", "4", "5"],
    [("1", "2"), ("2", "3"), ("3", "4"), ("3", "5")],
    {"p": ["1", "3"], "q": ["2", "4", "5"]},
)
BISIM_N = KripkeModel(
    ["a", "b", "c", "d", "e"],
    [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("d", "e")],
    {"p": ["a", "d"], "q": ["b", "c", "e"]},
)
BISIM_B = FinRel(
    BISIM_M.worlds,
    BISIM_N.worlds,
    [("1", "a"), ("2", "b"), ("2", "c"), ("3", "d"), ("4", "e"), ("5", "e")],
)


def _s(i):
    return f"s{i}"


_SYS3_EDGES = {
    0: [1], 1: [2, 3, 4], 2: [5], 4: [5], 5: [6], 6: [7, 8], 7: [9], 8: [10, 11],
    9: [12], 12: [9], 10: [13], 11: [14],
}
SYS3 = powerset_view(
    [_s(i) for i in range(15)],
    {_s(i): [_s(j) for j in js] for i, js in _SYS3_EDGES.items()},
)
SYS3_ALPHA = FinRel(
    SYS3.carrier,
    SYS3.carrier,
    set(diagonal(SYS3.carrier).pairs)
    | {(_s(a), _s(b)) for a, b in [(2, 4), (4, 2), (9, 12), (12, 9), (13, 14), (14, 13)]},
)

SYS2_S = powerset_view(
    [f"s{i}" for i in range(1, 7)],
    {"s1": ["s2", "s3", "s4"], "s2": ["s5"], "s3": ["s6"], "s4": ["s6", "s1"],
     "s5": ["s5"], "s6": ["s2"]},
)
SYS2_T = powerset_view(
    [f"t{i}" for i in range(1, 8)],
    {"t1": ["t2", "t3", "t4"], "t2": ["t5", "t1"], "t3": ["t6"], "t4": ["t7", "t6"],
     "t5": ["t3", "t4"], "t6": ["t7"], "t7": ["t6"]},
)

MEALY_A1 = mealy(
    ["s0", "s1", "s2", "s3", "s4"],
    {
        "s0": {0: (0, "s1"), 1: (1, "s0")},
        "s1": {0: (0, "s2"), 1: (1, "s3")},
        "s2": {0: (1, "s4"), 1: (0, "s2")},
        "s3": {0: (0, "s1"), 1: (1, "s3")},
        "s4": {0: (1, "s3"), 1: (0, "s2")},
    },
)
MEALY_A2 = mealy(
    ["s'0", "s'1", "s'2", "s'3", "s'4", "s'5"],
    {
        "s'0": {0: (0, "s'0"), 1: (1, "s'1")},
        "s'1": {0: (0, "s'0"), 1: (1, "s'2")},
        "s'2": {0: (1, "s'3"), 1: (0, "s'2")},
        "s'3": {0: (1, "s'4"), 1: (0, "s'2")},
        "s'4": {0: (0, "s'5"), 1: (1, "s'4")},
        "s'5": {0: (0, "s'2"), 1: (1, "s'4")},
    },
)
