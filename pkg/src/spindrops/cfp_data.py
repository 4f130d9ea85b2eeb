"""Embedded fractional-parentage coefficient blocks for spins 1/2, g <= 6.

Each block is keyed by (g, target rank j, parent-tableau shape) and maps
tensors that are symmetric in the first g-1 spins onto fully symmetrized
g-spin tensors.  Blocks depend on the parent shape only, not on the
individual parent tableau.  Entries are exact surds, encoded by a signed
pair (p, q) standing for sign(p) * sqrt(|p| / q); they are transcribed
verbatim from their printed source (no later phase amendments applied)
and guarded by checksum and row-orthonormality tests.

Row metadata lists the output shape plus an optional roman sublabel; the
output tableau itself is recovered by adding the box g to the parent
tableau at the unique position producing the output shape.
"""

from __future__ import annotations

from fractions import Fraction

from .surd import SurdSum


def _entry_value(entry):
    p, q = entry
    sign = -1 if p < 0 else 1
    return sign * (abs(p) / q) ** 0.5


def _entry_surd(entry):
    p, q = entry
    sign = -1 if p < 0 else 1
    return SurdSum.sqrt(Fraction(abs(p), q), sign=sign)


# (g, j, parent shape) -> {"inputs": input ranks (column order),
#                          "rows": ((output shape, adhoc), ...),
#                          "matrix": surd entries}
CFP_BLOCKS = {
    # g = 2
    (2, 0, (1,)): {"inputs": (1,), "rows": (((2,), None),), "matrix": (((1, 1),),)},
    (2, 1, (1,)): {"inputs": (1,), "rows": (((1, 1), None),), "matrix": (((1, 1),),)},
    (2, 2, (1,)): {"inputs": (1,), "rows": (((2,), None),), "matrix": (((1, 1),),)},
    # g = 3
    (3, 0, (1, 1)): {
        "inputs": (1,),
        "rows": (((1, 1, 1), None),),
        "matrix": (((1, 1),),),
    },
    (3, 1, (2,)): {
        "inputs": (0, 2),
        "rows": (((3,), None), ((2, 1), None)),
        "matrix": (((5, 9), (4, 9)), ((4, 9), (-5, 9))),
    },
    (3, 1, (1, 1)): {
        "inputs": (1,),
        "rows": (((2, 1), None),),
        "matrix": (((1, 1),),),
    },
    (3, 2, (2,)): {
        "inputs": (2,),
        "rows": (((2, 1), None),),
        "matrix": (((1, 1),),),
    },
    (3, 2, (1, 1)): {
        "inputs": (1,),
        "rows": (((2, 1), None),),
        "matrix": (((1, 1),),),
    },
    (3, 3, (2,)): {
        "inputs": (2,),
        "rows": (((3,), None),),
        "matrix": (((1, 1),),),
    },
    # g = 4
    (4, 0, (3,)): {"inputs": (1,), "rows": (((4,), None),), "matrix": (((1, 1),),)},
    (4, 0, (2, 1)): {
        "inputs": (1,),
        "rows": (((2, 2), None),),
        "matrix": (((1, 1),),),
    },
    (4, 1, (3,)): {
        "inputs": (1,),
        "rows": (((3, 1), None),),
        "matrix": (((1, 1),),),
    },
    (4, 1, (2, 1)): {
        "inputs": (1, 2),
        "rows": (((3, 1), None), ((2, 1, 1), None)),
        "matrix": (((-5, 8), (3, 8)), ((3, 8), (5, 8))),
    },
    (4, 1, (1, 1, 1)): {
        "inputs": (0,),
        "rows": (((2, 1, 1), None),),
        "matrix": (((1, 1),),),
    },
    (4, 2, (3,)): {
        "inputs": (1, 3),
        "rows": (((4,), None), ((3, 1), None)),
        "matrix": (((7, 10), (3, 10)), ((3, 10), (-7, 10))),
    },
    (4, 2, (2, 1)): {
        "inputs": (1, 2),
        "rows": (((3, 1), None), ((2, 2), None)),
        "matrix": (((3, 4), (1, 4)), ((-1, 4), (3, 4))),
    },
    (4, 3, (3,)): {
        "inputs": (3,),
        "rows": (((3, 1), None),),
        "matrix": (((1, 1),),),
    },
    (4, 3, (2, 1)): {
        "inputs": (2,),
        "rows": (((3, 1), None),),
        "matrix": (((1, 1),),),
    },
    # printed with a duplicated rank label in the source table; this block
    # is the stretched j = 4 case (the catalog requires [4] ranks 0, 2, 4)
    (4, 4, (3,)): {
        "inputs": (3,),
        "rows": (((4,), None),),
        "matrix": (((1, 1),),),
    },
    # g = 5
    (5, 0, (3, 1)): {
        "inputs": (1,),
        "rows": (((3, 1, 1), None),),
        "matrix": (((1, 1),),),
    },
    (5, 0, (2, 1, 1)): {
        "inputs": (1,),
        "rows": (((3, 1, 1), None),),
        "matrix": (((1, 1),),),
    },
    (5, 1, (4,)): {
        "inputs": (0, 2),
        "rows": (((5,), None), ((4, 1), None)),
        "matrix": (((7, 15), (8, 15)), ((8, 15), (-7, 15))),
    },
    (5, 1, (3, 1)): {
        "inputs": (1, 2),
        "rows": (((4, 1), None), ((3, 2), None)),
        "matrix": (((2, 3), (1, 3)), ((1, 3), (-2, 3))),
    },
    (5, 1, (2, 2)): {
        "inputs": (0, 2),
        "rows": (((3, 2), None), ((2, 2, 1), None)),
        "matrix": (((-5, 6), (1, 6)), ((1, 6), (5, 6))),
    },
    (5, 1, (2, 1, 1)): {
        "inputs": (1,),
        "rows": (((2, 2, 1), None),),
        "matrix": (((1, 1),),),
    },
    (5, 2, (4,)): {
        "inputs": (2,),
        "rows": (((4, 1), None),),
        "matrix": (((1, 1),),),
    },
    (5, 2, (3, 1)): {
        "inputs": (1, 2, 3),
        "rows": (((4, 1), None), ((3, 2), None), ((3, 1, 1), None)),
        "matrix": (
            ((126, 225), (-35, 225), (64, 225)),
            ((18, 45), (20, 45), (-7, 45)),
            ((-1, 25), (10, 25), (14, 25)),
        ),
    },
    (5, 2, (2, 2)): {
        "inputs": (2,),
        "rows": (((3, 2), None),),
        "matrix": (((1, 1),),),
    },
    (5, 2, (2, 1, 1)): {
        "inputs": (1,),
        "rows": (((3, 1, 1), None),),
        "matrix": (((1, 1),),),
    },
    (5, 3, (4,)): {
        "inputs": (2, 4),
        "rows": (((5,), None), ((4, 1), None)),
        "matrix": (((27, 35), (8, 35)), ((8, 35), (-27, 35))),
    },
    (5, 3, (3, 1)): {
        "inputs": (2, 3),
        "rows": (((4, 1), None), ((3, 2), None)),
        "matrix": (((8, 9), (1, 9)), ((1, 9), (-8, 9))),
    },
    (5, 3, (2, 2)): {
        "inputs": (2,),
        "rows": (((3, 2), None),),
        "matrix": (((-1, 1),),),
    },
    (5, 4, (4,)): {
        "inputs": (4,),
        "rows": (((4, 1), None),),
        "matrix": (((1, 1),),),
    },
    (5, 4, (3, 1)): {
        "inputs": (3,),
        "rows": (((4, 1), None),),
        "matrix": (((1, 1),),),
    },
    (5, 5, (4,)): {
        "inputs": (4,),
        "rows": (((5,), None),),
        "matrix": (((1, 1),),),
    },
    # g = 6
    (6, 0, (5,)): {"inputs": (1,), "rows": (((6,), None),), "matrix": (((1, 1),),)},
    (6, 0, (4, 1)): {
        "inputs": (1,),
        "rows": (((4, 2), "I"),),
        "matrix": (((1, 1),),),
    },
    (6, 0, (3, 2)): {
        "inputs": (1,),
        "rows": (((4, 2), "I"),),
        "matrix": (((-1, 1),),),
    },
    (6, 0, (2, 2, 1)): {
        "inputs": (1,),
        "rows": (((2, 2, 2), None),),
        "matrix": (((1, 1),),),
    },
    (6, 1, (5,)): {
        "inputs": (1,),
        "rows": (((5, 1), None),),
        "matrix": (((1, 1),),),
    },
    (6, 1, (4, 1)): {
        "inputs": (1, 2),
        "rows": (((5, 1), None), ((4, 1, 1), None)),
        "matrix": (((7, 12), (-5, 12)), ((5, 12), (7, 12))),
    },
    (6, 1, (3, 2)): {
        "inputs": (1, 2),
        "rows": (((3, 3), None), ((3, 2, 1), None)),
        "matrix": (((2, 3), (-1, 3)), ((1, 3), (2, 3))),
    },
    (6, 1, (3, 1, 1)): {
        "inputs": (0, 2),
        "rows": (((4, 1, 1), None), ((3, 2, 1), None)),
        "matrix": (((5, 9), (4, 9)), ((4, 9), (-5, 9))),
    },
    (6, 1, (2, 2, 1)): {
        "inputs": (1,),
        "rows": (((3, 2, 1), None),),
        "matrix": (((1, 1),),),
    },
    (6, 2, (5,)): {
        "inputs": (1, 3),
        "rows": (((6,), None), ((5, 1), None)),
        "matrix": (((15, 25), (10, 25)), ((10, 25), (-15, 25))),
    },
    (6, 2, (4, 1)): {
        "inputs": (1, 2, 3),
        "rows": (((5, 1), None), ((4, 2), "I"), ((4, 2), "II")),
        "matrix": (
            ((63, 120), (25, 120), (32, 120)),
            ((-9, 240), (175, 240), (-56, 240)),
            ((7, 16), (-1, 16), (-8, 16)),
        ),
    },
    (6, 2, (3, 2)): {
        "inputs": (1, 2, 3),
        "rows": (((4, 2), "I"), ((4, 2), "II"), ((3, 2, 1), None)),
        "matrix": (
            ((18, 30), (-5, 30), (-7, 30)),
            ((14, 50), (35, 50), (1, 50)),
            ((-9, 75), (10, 75), (-56, 75)),
        ),
    },
    (6, 2, (3, 1, 1)): {
        "inputs": (2,),
        "rows": (((3, 2, 1), None),),
        "matrix": (((1, 1),),),
    },
    (6, 2, (2, 2, 1)): {
        "inputs": (1,),
        "rows": (((3, 2, 1), None),),
        "matrix": (((1, 1),),),
    },
    (6, 3, (5,)): {
        "inputs": (3,),
        "rows": (((5, 1), None),),
        "matrix": (((1, 1),),),
    },
    (6, 3, (4, 1)): {
        "inputs": (2, 3, 4),
        "rows": (((5, 1), None), ((4, 2), "I"), ((4, 1, 1), None)),
        "matrix": (
            ((-80, 112), (7, 112), (-25, 112)),
            ((80, 336), (175, 336), (-81, 336)),
            ((-4, 84), (35, 84), (45, 84)),
        ),
    },
    (6, 3, (3, 2)): {
        "inputs": (2, 3),
        "rows": (((4, 2), "I"), ((3, 3), None)),
        "matrix": (((2, 3), (-1, 3)), ((1, 3), (2, 3))),
    },
    (6, 3, (3, 1, 1)): {
        "inputs": (2,),
        "rows": (((4, 1, 1), None),),
        "matrix": (((1, 1),),),
    },
    (6, 4, (5,)): {
        "inputs": (3, 5),
        "rows": (((6,), None), ((5, 1), None)),
        "matrix": (((22, 27), (5, 27)), ((5, 27), (-22, 27))),
    },
    (6, 4, (4, 1)): {
        "inputs": (3, 4),
        "rows": (((5, 1), None), ((4, 2), "I")),
        "matrix": (((15, 16), (1, 16)), ((1, 16), (-15, 16))),
    },
    (6, 4, (3, 2)): {
        "inputs": (3,),
        "rows": (((4, 2), "I"),),
        "matrix": (((1, 1),),),
    },
    (6, 5, (5,)): {
        "inputs": (5,),
        "rows": (((5, 1), None),),
        "matrix": (((1, 1),),),
    },
    (6, 5, (4, 1)): {
        "inputs": (4,),
        "rows": (((5, 1), None),),
        "matrix": (((1, 1),),),
    },
    (6, 6, (5,)): {
        "inputs": (5,),
        "rows": (((6,), None),),
        "matrix": (((1, 1),),),
    },
}


def block_matrix_floats(key):
    block = CFP_BLOCKS[key]
    return [[_entry_value(e) for e in row] for row in block["matrix"]]


def block_matrix_surds(key):
    block = CFP_BLOCKS[key]
    return [[_entry_surd(e) for e in row] for row in block["matrix"]]


def assembled_dimension(g):
    """Total row count of all blocks at step g over all parent tableaux.

    Each block applies once per standard parent tableau of its shape, so
    the assembled transformation is block diagonal with that multiplicity.
    """
    from .symgroup import Partition

    total = 0
    for (gg, _j, shape), block in CFP_BLOCKS.items():
        if gg != g:
            continue
        total += len(block["rows"]) * Partition(shape).n_standard_tableaux()
    return total


# Sign adjustments multiplied onto the constructed spin-1/2 tensors.
# Keys: (g, j, global tableau index); g > 3 uses i**(g - j) uniformly.
SPIN_HALF_SIGNS = {
    (0, 0, None): 1,
    (1, 1, 1): 1,
    (2, 0, 1): -1,
    (2, 1, 2): -1j,
    (2, 2, 1): 1,
    (3, 0, 4): 1j,
    (3, 1, 1): -1,
    (3, 1, 2): 1,
    (3, 1, 3): 1,
    (3, 2, 2): 1j,
    (3, 2, 3): 1j,
    (3, 3, 1): 1,
}


def sign_factor(g, j, tableau_index):
    if g <= 3:
        return SPIN_HALF_SIGNS[(g, j, tableau_index)]
    return 1j ** ((g - j) % 4)
