"""Reference systems with published special-facial-set lists.

The generalized Cartan matrix is the 6-cycle with all off-diagonal entries
-2 on adjacent vertices.  Its coroot relation space ker(A^T) is
2-dimensional; the four cases choose different subspaces ``L_h`` of it.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import cartan
from . import realization as rz

HEXAGON = (
    (2, -2, 0, 0, 0, -2),
    (-2, 2, -2, 0, 0, 0),
    (0, -2, 2, -2, 0, 0),
    (0, 0, -2, 2, -2, 0),
    (0, 0, 0, -2, 2, -2),
    (-2, 0, 0, 0, -2, 2),
)

CHAMBER_RELATION = (1, 2, 1, -1, -2, -1)
PANEL_RELATION = (1, 0, -1, -1, 0, 1)


def _sets(*groups: str) -> frozenset:
    # "12" -> {1,2} (1-based, single digits)
    return frozenset(frozenset(int(c) for c in s) for s in groups)


_ADJ_PAIRS = ("12", "23", "34", "45", "56", "16")
_TRIPLES = ("123", "234", "345", "456", "156", "126")
_QUADS = ("1234", "2345", "3456", "1456", "1256", "1236")
_OPPOSITE = ("1245", "2356", "1346")
_FIVES = ("12345", "23456", "13456", "12456", "12356", "12346")


@dataclass(frozen=True)
class GoldenCase:
    name: str
    L_h: tuple
    special: frozenset  # 1-based index sets
    n_special: int
    n_facial: int

    def root_base(self) -> rz.RootBase:
        return rz.build(cartan.validate(HEXAGON), self.L_h)

    def special_zero_based(self) -> frozenset:
        return frozenset(frozenset(i - 1 for i in J) for J in self.special)

    def system(self) -> dict:
        """The case as a CLI input document."""
        return {
            "n": 6,
            "cartan": [[str(x) for x in row] for row in HEXAGON],
            "L_h": [[str(x) for x in r] for r in self.L_h],
        }


CASES = (
    GoldenCase(
        "a",
        (),
        _sets("", *_ADJ_PAIRS, *_TRIPLES, *_QUADS, *_OPPOSITE, *_FIVES, "123456"),
        29,
        64,
    ),
    GoldenCase(
        "b",
        (CHAMBER_RELATION,),
        _sets("", *_ADJ_PAIRS, "234", "345", "156", "126", "2345", "1256", *_OPPOSITE, "123456"),
        17,
        50,
    ),
    GoldenCase(
        "c",
        (PANEL_RELATION,),
        _sets("", "12", "23", "45", "56", "123", "456", *_OPPOSITE, "13456", "12346", "123456"),
        13,
        40,
    ),
    GoldenCase(
        "d",
        (CHAMBER_RELATION, PANEL_RELATION),
        _sets("", *_OPPOSITE, "123456"),
        5,
        22,
    ),
)

BY_NAME = {c.name: c for c in CASES}

# Affine A1 on a 2-dimensional space spanned by h_1, h_2, so alpha_2 = -alpha_1.
AFFINE_A1 = ((2, -2), (-2, 2))
AFFINE_A1_ROOT_RELATION = ((1, 1),)
