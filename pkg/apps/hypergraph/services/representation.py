"""
Hypergraph representations.

A representation is a node count plus one relation tensor per arity j in
0..2, shaped [n]^j x [c_j]. Values come from a finite domain encoded as
indicator channels:

* arity 0 holds a single constant-1 channel ("const");
* arity 1 holds one channel per node color, sorted by name;
* arity 2 holds one channel per binary predicate followed by "eq", which
  is 1 exactly on the diagonal.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from apps.hypergraph.exceptions import InvalidGraphError
from apps.tensor_core.services.tensor import DTYPE, DenseTensor

EQUALITY = 'eq'
CONSTANT = 'const'
EDGE = 'edge'

Edge = Tuple[int, int]
Colors = Union[Mapping[str, Sequence[int]], Sequence[Optional[str]]]


@dataclass(frozen=True, eq=False)
class HypergraphRepr:
    """
    Immutable hypergraph representation (V, X).

    Attributes:
        n: Number of nodes.
        relations: Arity -> tensor shaped [n]^arity x [channels].
        predicates: Arity -> channel names, in channel order.
        directed: Whether binary predicates are stored one-way.
    """
    n: int
    relations: Dict[int, DenseTensor]
    predicates: Dict[int, Tuple[str, ...]]
    directed: bool = False
    binary_names: Tuple[str, ...] = field(default=(EDGE,))

    def __post_init__(self):
        # frozen copies; the caller's arrays stay writable
        relations = {arity: np.array(tensor, copy=True) for arity, tensor in self.relations.items()}
        object.__setattr__(self, 'relations', relations)
        for arity, tensor in relations.items():
            expected = (self.n,) * arity + (len(self.predicates[arity]),)
            if tensor.shape != expected:
                raise InvalidGraphError(
                    f"arity-{arity} tensor has shape {tensor.shape}, "
                    f"expected {expected}"
                )
            if tensor.size and (tensor.min() < 0.0 or tensor.max() > 1.0):
                raise InvalidGraphError(f"arity-{arity} entries outside [0, 1]")
            tensor.setflags(write=False)

    @property
    def max_arity(self) -> int:
        return max(self.relations)

    def channel(self, arity: int, name: str) -> DenseTensor:
        """Return one named channel, without the trailing axis."""
        try:
            index = self.predicates[arity].index(name)
        except (KeyError, ValueError):
            raise KeyError(f"no arity-{arity} predicate named '{name}'") from None
        return self.relations[arity][..., index]

    def has_channel(self, arity: int, name: str) -> bool:
        return name in self.predicates.get(arity, ())

    @property
    def color_names(self) -> Tuple[str, ...]:
        return self.predicates.get(1, ())

    def colored(self, name: str) -> List[int]:
        """Nodes carrying color `name`, ascending."""
        return [int(v) for v in np.flatnonzero(self.channel(1, name))]

    def colors(self) -> Dict[str, List[int]]:
        return {name: self.colored(name) for name in self.color_names}

    def adjacency(self, name: str = EDGE) -> np.ndarray:
        """0/1 integer matrix of a binary predicate."""
        return self.channel(2, name).astype(np.int64)

    def relation_pairs(self, name: str = EDGE) -> List[Edge]:
        """
        Pairs holding a binary predicate.

        Undirected predicates are reported once as (min, max); the result
        is sorted.
        """
        matrix = self.channel(2, name)
        pairs = []
        for u, v in zip(*np.nonzero(matrix)):
            u, v = int(u), int(v)
            if self.directed or u < v:
                pairs.append((u, v))
        return sorted(pairs)

    def edge_list(self) -> List[Edge]:
        return self.relation_pairs(EDGE)

    def degrees(self, name: str = EDGE) -> np.ndarray:
        """Out-degree of each node under a binary predicate."""
        return self.adjacency(name).sum(axis=1)

    def same_as(self, other: 'HypergraphRepr') -> bool:
        """Entrywise equality of two representations."""
        if self.n != other.n or self.predicates != other.predicates:
            return False
        return all(
            np.array_equal(self.relations[arity], other.relations[arity])
            for arity in self.relations
        )


def _color_channels(
    n: int,
    colors: Optional[Colors],
    color_names: Optional[Sequence[str]] = None,
) -> Tuple[Tuple[str, ...], DenseTensor]:
    if colors is None:
        colors = {}

    if isinstance(colors, Mapping):
        by_name = {str(name): list(ids) for name, ids in colors.items()}
    else:
        if len(colors) != n:
            raise InvalidGraphError(
                f"per-node colors list has {len(colors)} entries for {n} nodes"
            )
        by_name = {}
        for node, label in enumerate(colors):
            if label is not None:
                by_name.setdefault(str(label), []).append(node)

    if color_names is not None:
        unknown = sorted(set(by_name) - set(color_names))
        if unknown:
            raise InvalidGraphError(f"colors {unknown} not among {sorted(color_names)}")
        for name in color_names:
            by_name.setdefault(name, [])
    names = tuple(sorted(by_name))
    tensor = np.zeros((n, len(names)), dtype=DTYPE)
    for channel, name in enumerate(names):
        for position, node in enumerate(by_name[name]):
            if not 0 <= int(node) < n:
                raise InvalidGraphError(
                    f"color '{name}' names node {node} outside 0..{n - 1}",
                    position,
                )
            if tensor[int(node), channel]:
                raise InvalidGraphError(
                    f"color '{name}' lists node {node} twice", position
                )
            tensor[int(node), channel] = 1.0
    return names, tensor


def from_relations(
    n: int,
    binary: Mapping[str, Iterable[Sequence[int]]],
    colors: Optional[Colors] = None,
    directed: bool = False,
    allow_self_loops: bool = False,
    color_names: Optional[Sequence[str]] = None,
) -> HypergraphRepr:
    """
    Build a representation from named binary predicates and node colors.

    Args:
        n: Node count.
        binary: Predicate name -> list of (u, v) pairs.
        colors: Either color name -> node ids, or one label (or None) per node.
        directed: Store (u, v) only; otherwise both orientations are set.
        allow_self_loops: Accept (v, v) pairs.
        color_names: Colors that always get a channel, even when empty.

    Returns:
        HypergraphRepr: The representation.

    Raises:
        InvalidGraphError: On out-of-range indices, duplicate pairs or
            self-loops, naming the offending position.
    """
    if n < 0:
        raise InvalidGraphError(f"node count must be non-negative, got {n}")

    names = tuple(binary) + (EQUALITY,)
    pair_tensor = np.zeros((n, n, len(names)), dtype=DTYPE)
    for channel, name in enumerate(binary):
        seen = set()
        for position, pair in enumerate(binary[name]):
            if len(pair) != 2:
                raise InvalidGraphError(f"'{name}' entry is not a pair", position)
            u, v = int(pair[0]), int(pair[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraphError(
                    f"'{name}' pair ({u}, {v}) outside 0..{n - 1}", position
                )
            if u == v and not allow_self_loops:
                raise InvalidGraphError(f"self-loop on node {u}", position)
            key = (u, v) if directed else (min(u, v), max(u, v))
            if key in seen:
                raise InvalidGraphError(f"duplicate '{name}' pair ({u}, {v})", position)
            seen.add(key)
            pair_tensor[u, v, channel] = 1.0
            if not directed:
                pair_tensor[v, u, channel] = 1.0
    pair_tensor[np.arange(n), np.arange(n), len(names) - 1] = 1.0

    unary_names, color_tensor = _color_channels(n, colors, color_names)

    return HypergraphRepr(
        n=n,
        relations={
            0: np.ones(1, dtype=DTYPE),
            1: color_tensor,
            2: pair_tensor,
        },
        predicates={0: (CONSTANT,), 1: unary_names, 2: names},
        directed=directed,
        binary_names=tuple(binary),
    )


def from_edge_list(
    n: int,
    edges: Iterable[Sequence[int]],
    colors: Optional[Colors] = None,
    directed: bool = False,
    allow_self_loops: bool = False,
    color_names: Optional[Sequence[str]] = None,
) -> HypergraphRepr:
    """
    Build a graph with a single "edge" predicate.

    Examples:
        >>> g = from_edge_list(3, [(0, 1), (1, 2), (2, 0)])
        >>> int(g.channel(2, 'edge').sum())
        6
    """
    return from_relations(
        n,
        {EDGE: list(edges)},
        colors=colors,
        directed=directed,
        allow_self_loops=allow_self_loops,
        color_names=color_names,
    )


def with_colors(g: HypergraphRepr, colors: Colors) -> HypergraphRepr:
    """Copy of an edge graph with its unary colors replaced."""
    return from_relations(
        g.n,
        {name: g.relation_pairs(name) for name in g.binary_names},
        colors=colors,
        directed=g.directed,
    )


def edge_list(g: HypergraphRepr) -> List[Edge]:
    """Edge pairs of `g`; undirected edges once as (min, max), sorted."""
    return g.edge_list()


def adjacency(g: HypergraphRepr, name: str = EDGE) -> np.ndarray:
    return g.adjacency(name)


def degree_sequence(g: HypergraphRepr) -> Tuple[int, ...]:
    """Node degrees under "edge", sorted descending."""
    return tuple(sorted((int(d) for d in g.degrees()), reverse=True))


@dataclass(frozen=True, eq=False)
class TaskTarget:
    """
    Ground-truth labels at one arity.

    Attributes:
        arity: 0, 1 or 2.
        labels: 0/1 tensor shaped [n]^arity.
        mask: Optional 0/1 tensor of the same shape; 1 marks a scored position.
    """
    arity: int
    labels: np.ndarray
    mask: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.arity not in (0, 1, 2):
            raise InvalidGraphError(f"target arity must be 0, 1 or 2, got {self.arity}")
        if self.labels.ndim != self.arity:
            raise InvalidGraphError(
                f"arity-{self.arity} labels have {self.labels.ndim} axes"
            )
        if not np.isin(self.labels, (0, 1)).all():
            raise InvalidGraphError("labels must be 0 or 1")
        if self.mask is not None:
            if self.mask.shape != self.labels.shape:
                raise InvalidGraphError(
                    f"mask shape {self.mask.shape} differs from labels {self.labels.shape}"
                )
            if not np.isin(self.mask, (0, 1)).all():
                raise InvalidGraphError("mask must be 0 or 1")
            if not self.mask.any():
                raise InvalidGraphError("mask selects no position")

    @property
    def scored(self) -> np.ndarray:
        """The effective mask: all ones when no mask was given."""
        if self.mask is None:
            return np.ones(self.labels.shape, dtype=np.int64)
        return self.mask.astype(np.int64)
