"""
Expressiveness probes: do two graphs get identical graph-level readouts?
"""
import logging
from dataclasses import asdict, dataclass, field, replace
from typing import Any, Dict, List, Optional

import numpy as np

from apps.datasets.services.seeds import derive_seed
from apps.experiments.exceptions import ExperimentError
from apps.oracles.services.constructions import (
    CounterexamplePair,
    chain_counterexample,
    regular_pair,
)
from apps.relnn.services.config import ModelConfig
from apps.relnn.services.inputs import graph_channels
from apps.relnn.services.model import predict
from apps.relnn.services.params import ModelParams, init_params

logger = logging.getLogger(__name__)

CONSTRUCTIONS = ('chain', 'regular_pair')


@dataclass
class ProbeRecord:
    """
    Outcome of one probe.

    Attributes:
        construction: chain or regular_pair.
        k_len: Chain length (chain only).
        family: Model family probed.
        max_arity: B of the probed models.
        aggregator: Aggregator of the probed models.
        depth: Layers run on both graphs.
        trials: Models compared.
        expected_blind: Whether theory says no such model can tell the graphs apart.
        violations: Trial seeds whose readouts differed.
        trained: Whether the probed weights came from training.
        provenance: Description of the pair.
    """
    construction: str
    k_len: Optional[int]
    family: str
    max_arity: int
    aggregator: str
    depth: int
    trials: int
    expected_blind: bool
    violations: List[int] = field(default_factory=list)
    trained: bool = False
    provenance: str = ''

    @property
    def violation_count(self) -> int:
        return len(self.violations)

    @property
    def separated(self) -> bool:
        return bool(self.violations)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['violation_count'] = self.violation_count
        return data


def build_pair(construction: str, k_len: int = 12) -> CounterexamplePair:
    """
    Raises:
        ExperimentError: For an unknown construction.
    """
    if construction == 'chain':
        return chain_counterexample(k_len)
    if construction == 'regular_pair':
        return regular_pair()
    raise ExperimentError(
        f"unknown construction '{construction}', expected one of {CONSTRUCTIONS}"
    )


def expected_blind(construction: str, cfg: ModelConfig, depth: int, k_len: int) -> bool:
    """
    Whether a model of this kind provably computes identical readouts.

    Holds for 2-ary NLMs and 1-ary HO-GNNs: on the regular pair at any
    depth, on the chain while depth <= k_len // 2 - 1.
    """
    binary = (cfg.family, cfg.max_arity) in (('nlm', 2), ('hognn', 1))
    if not binary:
        return False
    if construction == 'regular_pair':
        return True
    return depth <= k_len // 2 - 1


def probe_config(cfg: ModelConfig, pair: CounterexamplePair, depth: int) -> ModelConfig:
    """`cfg` reading the pair's channels at graph level, running `depth` layers."""
    changes = dict(input_channels=graph_channels(pair.first), target_arity=0)
    if cfg.depth_policy == 'fixed' and not cfg.weight_sharing:
        changes['depth'] = depth
        changes['layer_aggregators'] = None
    return replace(cfg, **changes)


def readouts_match(params: ModelParams, pair: CounterexamplePair, depth: int) -> bool:
    """Exact equality of the two graph-level readouts."""
    first = predict(params, pair.first, depth)
    second = predict(params, pair.second, depth)
    return bool(np.array_equal(first, second))


def expressiveness_probe(
    construction: str,
    cfg: ModelConfig,
    depth: int,
    trials: int = 50,
    k_len: int = 12,
    seed: int = 0,
    params: Optional[ModelParams] = None,
) -> ProbeRecord:
    """
    Compare readouts of the construction's two graphs.

    With `params` the given (typically trained) weights are probed once;
    otherwise `trials` random initializations of `cfg` are, trial t using
    derive_seed(seed, 'probe', t). Differing readouts are findings, recorded
    by trial seed, not errors.

    Raises:
        ExperimentError: For an unknown construction or trials < 1.
    """
    pair = build_pair(construction, k_len)
    if params is not None:
        cfg, seeds = params.config, [seed]
    else:
        if trials < 1:
            raise ExperimentError(f"trials must be >= 1, got {trials}")
        cfg = probe_config(cfg, pair, depth)
        seeds = [derive_seed(seed, 'probe', trial) for trial in range(trials)]

    record = ProbeRecord(
        construction=construction,
        k_len=k_len if construction == 'chain' else None,
        family=cfg.family,
        max_arity=cfg.max_arity,
        aggregator=cfg.aggregator,
        depth=depth,
        trials=len(seeds),
        expected_blind=expected_blind(construction, cfg, depth, k_len),
        trained=params is not None,
        provenance=pair.provenance,
    )
    for trial_seed in seeds:
        probed = params if params is not None else init_params(cfg, trial_seed)
        if not readouts_match(probed, pair, depth):
            record.violations.append(trial_seed)

    if record.expected_blind and record.violations:
        logger.warning(
            f"{construction} probe: {record.violation_count} of {record.trials} "
            f"{cfg.family}-{cfg.max_arity} models separated a pair they should not"
        )
    else:
        logger.info(
            f"{construction} probe at depth {depth}: "
            f"{record.violation_count}/{record.trials} separated"
        )
    return record
