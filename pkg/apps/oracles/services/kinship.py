"""
Family records and the kinship oracles.

"uncle" means a blood uncle: a male who shares a parent with one of the
child's parents and is not that parent. In-laws are not uncles.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Set, Tuple

import numpy as np

from apps.oracles.exceptions import FamilyRecordError, UnknownOracleError

FEMALE = 'female'
MALE = 'male'
MOTHER = 'mother'
FATHER = 'father'
RELATIONS = ('grandparent', 'uncle')
UNCLE_DEFINITION = 'blood uncle: male sibling (shared parent) of a parent'


@dataclass(frozen=True)
class FamilyRecord:
    """
    People 0..n-1 with genders, parent links and marriages.

    Attributes:
        genders: Gender of each person (female or male).
        parent_links: (parent, child, kind) with kind mother or father.
        marriages: (woman, man) couples.
    """
    genders: Tuple[str, ...]
    parent_links: Tuple[Tuple[int, int, str], ...] = ()
    marriages: Tuple[Tuple[int, int], ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.genders)

    def links(self, kind: str) -> List[Tuple[int, int]]:
        return [(parent, child) for parent, child, link in self.parent_links if link == kind]


def validate_family(family: FamilyRecord) -> Dict[int, Set[int]]:
    """
    Check the record and return child -> set of parents.

    Raises:
        FamilyRecordError: On unknown genders or link kinds, out-of-range
            people, self-parenting, a parent of the wrong gender, or a child
            with two mothers or two fathers.
    """
    for person, gender in enumerate(family.genders):
        if gender not in (FEMALE, MALE):
            raise FamilyRecordError(f"person {person} has unknown gender '{gender}'")

    parents: Dict[int, Set[int]] = {}
    seen: Dict[Tuple[int, str], int] = {}
    for parent, child, kind in family.parent_links:
        if kind not in (MOTHER, FATHER):
            raise FamilyRecordError(f"unknown parent link '{kind}'")
        if not (0 <= parent < family.n and 0 <= child < family.n) or parent == child:
            raise FamilyRecordError(f"invalid {kind} link {parent} -> {child}")
        expected = FEMALE if kind == MOTHER else MALE
        if family.genders[parent] != expected:
            raise FamilyRecordError(f"{kind} {parent} of {child} is not {expected}")
        if (child, kind) in seen and seen[(child, kind)] != parent:
            raise FamilyRecordError(f"person {child} has two {kind}s")
        seen[(child, kind)] = parent
        parents.setdefault(child, set()).add(parent)
    return parents


def kinship_oracle(relation: str, family: FamilyRecord) -> np.ndarray:
    """
    Boolean [n, n] tensor of a kinship relation.

    grandparent[a, c]: a is a parent of a parent of c.
    uncle[u, c]: u is male, shares a parent with some parent p of c, u != p.

    Raises:
        FamilyRecordError: If the record is inconsistent.
        UnknownOracleError: For other relations.
    """
    if relation not in RELATIONS:
        raise UnknownOracleError(f"unknown kinship relation '{relation}'")
    parents = validate_family(family)
    n = family.n
    is_parent = np.zeros((n, n), dtype=bool)
    for child, of_child in parents.items():
        for parent in of_child:
            is_parent[parent, child] = True

    if relation == 'grandparent':
        return (is_parent.astype(np.int64) @ is_parent.astype(np.int64)) > 0

    result = np.zeros((n, n), dtype=bool)
    for child in range(n):
        for parent in parents.get(child, ()):
            grandparents = parents.get(parent, set())
            for uncle in range(n):
                if (
                    uncle != parent
                    and family.genders[uncle] == MALE
                    and grandparents & parents.get(uncle, set())
                ):
                    result[uncle, child] = True
    return result
