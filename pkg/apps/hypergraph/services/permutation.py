"""
Node permutations acting on representations and feature tensors.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from apps.hypergraph.exceptions import PermutationError
from apps.hypergraph.services.representation import HypergraphRepr


@dataclass(frozen=True)
class NodePermutation:
    """
    A bijection on 0..n-1, stored as the image of each node.

    `mapping[v]` is where node v is sent.
    """
    mapping: Tuple[int, ...]

    def __post_init__(self):
        mapping = tuple(int(v) for v in self.mapping)
        if sorted(mapping) != list(range(len(mapping))):
            raise PermutationError(f"{list(mapping)} is not a bijection on 0..{len(mapping) - 1}")
        object.__setattr__(self, 'mapping', mapping)

    def __len__(self) -> int:
        return len(self.mapping)

    def __call__(self, v: int) -> int:
        return self.mapping[v]

    @classmethod
    def identity(cls, n: int) -> 'NodePermutation':
        return cls(tuple(range(n)))

    def inverse(self) -> 'NodePermutation':
        inverse = [0] * len(self.mapping)
        for v, image in enumerate(self.mapping):
            inverse[image] = v
        return NodePermutation(tuple(inverse))

    def then(self, other: 'NodePermutation') -> 'NodePermutation':
        """Apply self first, then `other`."""
        if len(other) != len(self):
            raise PermutationError(f"cannot compose sizes {len(self)} and {len(other)}")
        return NodePermutation(tuple(other.mapping[v] for v in self.mapping))


def compose(first: NodePermutation, second: NodePermutation) -> NodePermutation:
    """The permutation applying `first` and then `second`."""
    return first.then(second)


def invert(p: NodePermutation) -> NodePermutation:
    return p.inverse()


def random_permutation(n: int, rng: np.random.Generator) -> NodePermutation:
    return NodePermutation(tuple(int(v) for v in rng.permutation(n)))


def as_permutation(p) -> NodePermutation:
    if isinstance(p, NodePermutation):
        return p
    return NodePermutation(tuple(p))


def permute_tensor(t: np.ndarray, p: NodePermutation, arity: int) -> np.ndarray:
    """
    Move the entry at (v1..vj) to (p(v1)..p(vj)) on the first `arity` axes.

    Trailing axes beyond `arity` (feature channels) are left alone.

    Raises:
        PermutationError: If a node axis length differs from len(p).
    """
    p = as_permutation(p)
    for axis in range(arity):
        if t.shape[axis] != len(p):
            raise PermutationError(
                f"permutation of size {len(p)} applied to axis of length {t.shape[axis]}"
            )
    if arity == 0:
        return t.copy()
    source = np.asarray(p.inverse().mapping, dtype=np.int64)
    index = np.ix_(*([source] * arity))
    return t[index]


def apply_node_permutation(g: HypergraphRepr, p: Sequence[int]) -> HypergraphRepr:
    """
    Relabel the nodes of `g` by `p`.

    Args:
        g: Input representation.
        p: NodePermutation or a sequence of images, length g.n.

    Returns:
        HypergraphRepr: The permuted representation, isomorphic to `g`.

    Raises:
        PermutationError: On a length mismatch.
    """
    p = as_permutation(p)
    if len(p) != g.n:
        raise PermutationError(f"permutation has length {len(p)}, graph has {g.n} nodes")
    relations = {
        arity: np.ascontiguousarray(permute_tensor(tensor, p, arity))
        for arity, tensor in g.relations.items()
    }
    return HypergraphRepr(
        n=g.n,
        relations=relations,
        predicates=dict(g.predicates),
        directed=g.directed,
        binary_names=g.binary_names,
    )
