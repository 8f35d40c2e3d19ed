"""
Model configuration.

A ModelConfig fully determines the shapes of every network in a model;
together with a seed it determines the initial weights.
"""
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from apps.relnn.exceptions import ArityError, ConfigMismatchError

FAMILIES = ('nlm', 'hognn')
AGGREGATORS = ('sum', 'max', 'fpmean')
DEPTH_POLICIES = ('fixed', 'recurrent')
MAX_SUPPORTED_ARITY = 4


@dataclass(frozen=True)
class Aggregator:
    """
    The operator collapsing one node axis.

    Attributes:
        kind: One of sum, max, fpmean.
        decimals: Decimal places kept by fpmean.
    """
    kind: str = 'max'
    decimals: int = 2

    def __post_init__(self):
        if self.kind not in AGGREGATORS:
            raise ConfigMismatchError(f"unknown aggregator '{self.kind}'")
        if self.decimals < 0:
            raise ConfigMismatchError(f"fpmean decimals must be >= 0, got {self.decimals}")


@dataclass(frozen=True)
class ModelConfig:
    """
    Architecture of an NLM or HO-GNN.

    Attributes:
        family: nlm or hognn.
        max_arity: B. For hognn, the tuple dimension.
        depth: D, number of layers (or rounds) for the fixed policy.
        width: W, feature channels per tuple.
        aggregator: sum, max or fpmean.
        depth_policy: fixed, or recurrent with rounds chosen per graph.
        fpmean_decimals: Decimal places for fpmean.
        quant_bits: When set, activations are quantized after every layer.
        weight_sharing: Layers 2..D reuse one set of networks.
        target_arity: Arity of the readout head. At most B, except that a
            1-ary HO-GNN may label pairs through the pair readout.
        hidden_layers: Hidden ReLU layers inside every network.
        input_channels: Input channel counts at arities 0, 1 and 2.
        layer_aggregators: Optional per-layer aggregator override.
        output_activation: Activation on every network's last layer.
    """
    family: str
    max_arity: int
    depth: int
    width: int
    aggregator: str = 'max'
    depth_policy: str = 'fixed'
    fpmean_decimals: int = 2
    quant_bits: Optional[int] = None
    weight_sharing: bool = False
    target_arity: int = 0
    hidden_layers: int = 1
    input_channels: Tuple[int, int, int] = (1, 0, 2)
    layer_aggregators: Optional[Tuple[str, ...]] = None
    output_activation: str = 'sigmoid'

    def __post_init__(self):
        object.__setattr__(self, 'input_channels', tuple(int(c) for c in self.input_channels))
        if self.layer_aggregators is not None:
            object.__setattr__(self, 'layer_aggregators', tuple(self.layer_aggregators))

        if self.family not in FAMILIES:
            raise ConfigMismatchError(f"unknown model family '{self.family}'")
        if not 1 <= self.max_arity <= MAX_SUPPORTED_ARITY:
            raise ArityError(
                f"max arity must be in 1..{MAX_SUPPORTED_ARITY}, got {self.max_arity}"
            )
        if self.family == 'nlm' and self.max_arity < 2:
            raise ArityError("an NLM needs max arity >= 2 to read binary inputs")
        if self.depth < 1 or self.width < 1:
            raise ConfigMismatchError(
                f"depth and width must be >= 1, got depth={self.depth} width={self.width}"
            )
        if self.depth_policy not in DEPTH_POLICIES:
            raise ConfigMismatchError(f"unknown depth policy '{self.depth_policy}'")
        if self.depth_policy == 'recurrent' and not self.weight_sharing:
            raise ConfigMismatchError("the recurrent depth policy needs weight sharing")
        Aggregator(self.aggregator, self.fpmean_decimals)
        if self.quant_bits is not None:
            if self.quant_bits < 1:
                raise ConfigMismatchError(f"quant_bits must be >= 1, got {self.quant_bits}")
            if self.output_activation != 'sigmoid':
                raise ConfigMismatchError("quantization needs sigmoid-bounded activations")
        if not 0 <= self.target_arity <= self.max_readout_arity:
            raise ArityError(
                f"target arity {self.target_arity} outside 0..{self.max_readout_arity}"
            )
        if self.hidden_layers < 0:
            raise ConfigMismatchError("hidden_layers must be >= 0")
        if len(self.input_channels) != 3:
            raise ConfigMismatchError("input_channels lists arities 0, 1 and 2")
        if self.layer_aggregators is not None:
            if self.depth_policy != 'fixed' or len(self.layer_aggregators) != self.depth:
                raise ConfigMismatchError(
                    "layer_aggregators needs the fixed policy and one entry per layer"
                )
            for kind in self.layer_aggregators:
                Aggregator(kind, self.fpmean_decimals)

    def aggregator_at(self, layer: int) -> Aggregator:
        """Aggregator used by layer `layer` (1-based)."""
        kind = self.aggregator
        if self.layer_aggregators is not None:
            kind = self.layer_aggregators[layer - 1]
        return Aggregator(kind, self.fpmean_decimals)

    @property
    def pair_readout(self) -> bool:
        """A plain GNN labeling pairs reads [H[u], H[v], X2[u, v]]."""
        return self.family == 'hognn' and self.max_arity == 1 and self.target_arity == 2

    @property
    def max_readout_arity(self) -> int:
        if self.family == 'hognn' and self.max_arity == 1:
            return 2
        return self.max_arity

    @property
    def readout_aggregator(self) -> Aggregator:
        return Aggregator(self.aggregator, self.fpmean_decimals)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['input_channels'] = list(self.input_channels)
        if self.layer_aggregators is not None:
            data['layer_aggregators'] = list(self.layer_aggregators)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ModelConfig':
        known = {name: data[name] for name in cls.__dataclass_fields__ if name in data}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ConfigMismatchError(f"unknown config fields {unknown}")
        return cls(**known)

    def config_hash(self) -> str:
        """First 12 hex digits of sha256 over the canonical JSON form."""
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:12]


def _log2(n: int) -> float:
    return math.log2(n) if n > 1 else 0.0


def recurrent_rounds(n: int, rng: np.random.Generator) -> int:
    """
    Training-time depth for a graph of n nodes.

    Drawn uniformly from the integers in [ceil(2 log2 n), floor(3 log2 n)],
    never below 1.
    """
    low = max(1, math.ceil(2 * _log2(n)))
    high = max(low, math.floor(3 * _log2(n)))
    return int(rng.integers(low, high + 1))


def eval_rounds(n: int) -> int:
    """Evaluation-time depth: ceil(2.5 log2 n), never below 1."""
    return max(1, math.ceil(2.5 * _log2(n)))
