"""
Family trees and kinship samples.

People join one at a time with a fair-coin gender, and every newcomer
starts single. With probability p the newcomer is born to a couple:
a single woman and a single man who share no parent are married for the
occasion; when no such pair exists the child goes to an existing married
couple, and when there is none either, the newcomer joins unrelated.
p depends on the share of singles in the population so far:

    > 40% single -> 0.7
    < 20% single -> 0.3
    otherwise    -> 0.5
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from apps.datasets.exceptions import DatasetError
from apps.datasets.services.sample import Sample
from apps.hypergraph.services.representation import HypergraphRepr, TaskTarget, from_relations
from apps.oracles.services.kinship import (
    FATHER,
    FEMALE,
    MALE,
    MOTHER,
    RELATIONS,
    FamilyRecord,
    kinship_oracle,
)

logger = logging.getLogger(__name__)

GENDER_COLORS = (FEMALE, MALE)
PARENT_RELATIONS = (FATHER, MOTHER)


def birth_probability(single: int, population: int) -> float:
    """Chance that the next person is born to a couple."""
    ratio = single / population if population else 1.0
    if ratio > 0.4:
        return 0.7
    if ratio < 0.2:
        return 0.3
    return 0.5


def _find_couple(
    genders: List[str], single: set, parents: dict, rng: np.random.Generator
) -> Optional[Tuple[int, int]]:
    women = [p for p in sorted(single) if genders[p] == FEMALE]
    rng.shuffle(women)
    for woman in women:
        men = [
            p for p in sorted(single)
            if genders[p] == MALE and not parents.get(p, set()) & parents.get(woman, set())
        ]
        if men:
            return woman, men[int(rng.integers(len(men)))]
    return None


def gen_family_tree(n: int, seed: int) -> FamilyRecord:
    """
    Grow a family of n people.

    Raises:
        DatasetError: If n < 2.
    """
    if n < 2:
        raise DatasetError(f"family trees need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    genders: List[str] = []
    single = set()
    parents = {}
    links = []
    marriages = []

    for person in range(n):
        gender = FEMALE if rng.random() < 0.5 else MALE
        if rng.random() < birth_probability(len(single), person):
            couple = _find_couple(genders, single, parents, rng)
            if couple is not None:
                single -= set(couple)
                marriages.append(couple)
            elif marriages:
                couple = marriages[int(rng.integers(len(marriages)))]
                logger.debug(f"No single pair for person {person}; born to married couple {couple}")
            else:
                logger.info(f"No couple for person {person}; joining unrelated")
            if couple is not None:
                mother, father = couple
                links += [(mother, person, MOTHER), (father, person, FATHER)]
                parents[person] = {mother, father}
        genders.append(gender)
        single.add(person)

    return FamilyRecord(
        genders=tuple(genders),
        parent_links=tuple(links),
        marriages=tuple(marriages),
    )


def family_graph(family: FamilyRecord) -> HypergraphRepr:
    """Directed parent -> child father/mother predicates with female/male colors."""
    return from_relations(
        family.n,
        {FATHER: family.links(FATHER), MOTHER: family.links(MOTHER)},
        colors=list(family.genders),
        directed=True,
        color_names=GENDER_COLORS,
    )


def family_from_graph(g: HypergraphRepr) -> FamilyRecord:
    """Inverse of family_graph."""
    female = set(g.colored(FEMALE))
    links = [
        (parent, child, kind)
        for kind in (MOTHER, FATHER)
        for parent, child in g.relation_pairs(kind)
    ]
    return FamilyRecord(
        genders=tuple(FEMALE if v in female else MALE for v in range(g.n)),
        parent_links=tuple(sorted(links)),
    )


def gen_kinship_sample(relation: str, n: int, seed: int) -> Sample:
    """
    A family graph labeled with a kinship relation between all pairs.

    Raises:
        DatasetError: If the relation is unknown or n < 2.
    """
    if relation not in RELATIONS:
        raise DatasetError(f"unknown kinship relation '{relation}', expected one of {RELATIONS}")
    family = gen_family_tree(n, seed)
    labels = kinship_oracle(relation, family).astype(np.int64)
    provenance = {
        'generator': 'family_tree',
        'relation': relation,
        'seed': seed,
        'attempt': 1,
        'couples': len(family.marriages),
        'positives': int(labels.sum()),
    }
    return Sample(
        input=family_graph(family),
        target=TaskTarget(arity=2, labels=labels),
        provenance=provenance,
    )
