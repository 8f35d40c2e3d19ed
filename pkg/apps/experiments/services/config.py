"""
Training, enumerative-training and run-result records.
"""
import hashlib
import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from django.conf import settings

from apps.datasets.services.dataset import SPLITS
from apps.datasets.services.registry import get_task
from apps.experiments.exceptions import ExperimentError
from apps.relnn.services.config import ModelConfig

METRIC_COLUMNS = (
    'config_hash',
    'family',
    'B',
    'D_policy',
    'agg',
    'task',
    'train_n',
    'eval_n',
    'seed',
    'accuracy',
    'wallclock_s',
)

EXHAUSTIVE_TRAIN_LIMIT = 5
EXHAUSTIVE_TEST_LIMIT = 6


def _canonical_hash(data: Dict[str, Any]) -> str:
    canonical = json.dumps(data, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:12]


def _defaults() -> Dict[str, Any]:
    return settings.RELNN


@dataclass(frozen=True)
class TrainConfig:
    """
    Everything one training run depends on.

    Attributes:
        model: Architecture to train.
        task: Task id from the dataset registry.
        train_n: Node count of the training and validation graphs.
        seeds: Training seeds; one run per seed.
        epochs: Passes over the training split. 0 returns the initial model.
        lr: Adam base learning rate.
        decay_epochs: Epochs at which the learning rate is multiplied by decay_factor.
        decay_factor: Learning-rate multiplier at each decay epoch.
        accumulate: Graphs whose gradients are summed per Adam step.
        splits: Train, val and test sample counts per dataset.
        eval_sizes: Graph sizes the trained model is tested at.
        data_seed: Master seed of the generated datasets.
        tier: Edge tier of generated graphs, or None to draw per sample.
        deviations: Departures from the reference protocol, e.g. a reduced width.
    """
    model: ModelConfig
    task: str
    train_n: int
    seeds: Tuple[int, ...] = (0,)
    epochs: int = 100
    lr: float = 3e-4
    decay_epochs: Tuple[int, ...] = (50, 80)
    decay_factor: float = 0.1
    accumulate: int = 16
    splits: Tuple[int, int, int] = (800, 100, 300)
    eval_sizes: Tuple[int, ...] = ()
    data_seed: int = 0
    tier: Optional[str] = None
    deviations: Tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'seeds', tuple(int(s) for s in self.seeds))
        object.__setattr__(self, 'decay_epochs', tuple(int(e) for e in self.decay_epochs))
        object.__setattr__(self, 'splits', tuple(int(s) for s in self.splits))
        object.__setattr__(self, 'eval_sizes', tuple(int(n) for n in self.eval_sizes) or (self.train_n,))
        object.__setattr__(self, 'deviations', tuple(self.deviations))

        task = get_task(self.task)
        if not self.seeds:
            raise ExperimentError("a training config needs at least one seed")
        if self.epochs < 0:
            raise ExperimentError(f"epochs must be >= 0, got {self.epochs}")
        if self.accumulate < 1:
            raise ExperimentError(f"accumulate must be >= 1, got {self.accumulate}")
        if self.lr <= 0:
            raise ExperimentError(f"learning rate must be positive, got {self.lr}")
        if len(self.splits) != len(SPLITS) or min(self.splits) < 0:
            raise ExperimentError(f"split sizes must be three non-negative counts, got {self.splits}")
        if self.train_n < 2 or min(self.eval_sizes) < 2:
            raise ExperimentError("training and evaluation graphs need at least 2 nodes")
        if self.model.target_arity != task.target_arity:
            raise ExperimentError(
                f"task '{self.task}' has arity-{task.target_arity} labels but the model "
                f"reads out at arity {self.model.target_arity}"
            )
        if self.model.input_channels != task.input_channels:
            raise ExperimentError(
                f"task '{self.task}' inputs have channels {task.input_channels}, "
                f"the model expects {self.model.input_channels}"
            )

    @classmethod
    def for_task(cls, task: str, train_n: int, **kwargs) -> 'TrainConfig':
        """
        Config whose model reads the task's channels at the task's arity.

        Model fields (family, max_arity, depth, width, aggregator, ...) go in
        kwargs next to the training fields; omitted values come from
        settings.RELNN.
        """
        definition = get_task(task)
        defaults = _defaults()
        model_fields = {
            name: kwargs.pop(name)
            for name in list(kwargs)
            if name in ModelConfig.__dataclass_fields__
        }
        model_fields.setdefault('width', defaults['HIDDEN_WIDTH'])
        model_fields.setdefault('fpmean_decimals', defaults['FPMEAN_DECIMALS'])
        model_fields['target_arity'] = definition.target_arity
        model_fields['input_channels'] = definition.input_channels
        if model_fields.get('depth_policy') == 'recurrent':
            model_fields['weight_sharing'] = True
        kwargs.setdefault('epochs', defaults['EPOCHS'])
        kwargs.setdefault('lr', defaults['LEARNING_RATE'])
        kwargs.setdefault('decay_epochs', defaults['DECAY_EPOCHS'])
        kwargs.setdefault('decay_factor', defaults['DECAY_FACTOR'])
        kwargs.setdefault('accumulate', defaults['ACCUMULATE'])
        kwargs.setdefault('splits', defaults['SPLIT_SIZES'])
        return cls(model=ModelConfig(**model_fields), task=task, train_n=train_n, **kwargs)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['model'] = self.model.to_dict()
        for name in ('seeds', 'decay_epochs', 'splits', 'eval_sizes', 'deviations'):
            data[name] = list(data[name])
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'TrainConfig':
        data = dict(data)
        unknown = sorted(set(data) - set(cls.__dataclass_fields__))
        if unknown:
            raise ExperimentError(f"unknown training config fields {unknown}")
        data['model'] = ModelConfig.from_dict(data['model'])
        return cls(**data)

    def config_hash(self) -> str:
        """Hash of everything but the seeds, so all seeds of one config share it."""
        data = self.to_dict()
        del data['seeds']
        return _canonical_hash(data)


@dataclass
class RunResult:
    """
    Outcome of one (config, seed) run.

    Attributes:
        config_hash: TrainConfig.config_hash().
        seed: Training seed.
        accuracies: Eval size -> accuracy in [0, 100] on scored positions.
        eval_wallclock_s: Eval size -> seconds spent evaluating.
        train_curve: Mean training loss per epoch.
        val_curve: Validation accuracy per epoch, initial model first.
        best_epoch: Epoch of the returned checkpoint (0 = initial model).
        wallclock_s: Training time in seconds.
        deviations: Departures from the reference protocol.
    """
    config_hash: str
    seed: int
    accuracies: Dict[int, float] = field(default_factory=dict)
    eval_wallclock_s: Dict[int, float] = field(default_factory=dict)
    train_curve: List[float] = field(default_factory=list)
    val_curve: List[float] = field(default_factory=list)
    best_epoch: int = 0
    wallclock_s: float = 0.0
    deviations: List[str] = field(default_factory=list)

    @property
    def key(self) -> Tuple[str, int]:
        return (self.config_hash, self.seed)

    def rows(self, cfg: TrainConfig) -> List[Dict[str, Any]]:
        """One metrics row per evaluated size."""
        model = cfg.model
        return [
            {
                'config_hash': self.config_hash,
                'family': model.family,
                'B': model.max_arity,
                'D_policy': model.depth_policy,
                'agg': model.aggregator,
                'task': cfg.task,
                'train_n': cfg.train_n,
                'eval_n': eval_n,
                'seed': self.seed,
                'accuracy': self.accuracies[eval_n],
                'wallclock_s': self.eval_wallclock_s.get(eval_n, 0.0),
            }
            for eval_n in sorted(self.accuracies)
        ]

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['accuracies'] = {str(n): acc for n, acc in self.accuracies.items()}
        data['eval_wallclock_s'] = {str(n): s for n, s in self.eval_wallclock_s.items()}
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RunResult':
        data = dict(data)
        data['accuracies'] = {int(n): acc for n, acc in data.get('accuracies', {}).items()}
        data['eval_wallclock_s'] = {
            int(n): s for n, s in data.get('eval_wallclock_s', {}).items()
        }
        return cls(**data)


@dataclass(frozen=True)
class EnumTrainConfig:
    """
    Training on every labeled graph up to a size, then testing beyond it.

    Attributes:
        task: Graph-level task id (edge_exists, link3, ...).
        max_train_n: N; trains on all graphs with 1..N nodes.
        test_n: Size tested exhaustively.
        sampled_sizes: Larger sizes tested on random graphs.
        sampled_count: Random graphs per sampled size.
        quant_bits: Activation quantization bits.
        depth: Layers of the weight-shared model.
        width: Feature channels.
        max_arity: B of the NLM.
        epochs: Training budget before the fit premise is declared unmet.
        lr: Adam learning rate.
        accumulate: Graphs per Adam step.
        seed: Master seed.
    """
    task: str = 'edge_exists'
    max_train_n: int = 4
    test_n: int = 6
    sampled_sizes: Tuple[int, ...] = (8, 12)
    sampled_count: int = 1000
    quant_bits: int = 1
    depth: int = 2
    width: int = 8
    max_arity: int = 2
    epochs: int = 200
    lr: float = 1e-2
    accumulate: int = 16
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'sampled_sizes', tuple(int(n) for n in self.sampled_sizes))
        task = get_task(self.task)
        if task.target_arity != 0:
            raise ExperimentError(f"enumerative training needs a graph-level task, not '{self.task}'")
        if not 1 <= self.max_train_n <= EXHAUSTIVE_TRAIN_LIMIT:
            raise ExperimentError(
                f"max_train_n must be in 1..{EXHAUSTIVE_TRAIN_LIMIT}, got {self.max_train_n}"
            )
        if not self.max_train_n < self.test_n <= EXHAUSTIVE_TEST_LIMIT:
            raise ExperimentError(
                f"test_n must exceed max_train_n and be at most {EXHAUSTIVE_TEST_LIMIT}, got {self.test_n}"
            )
        if any(n <= self.test_n for n in self.sampled_sizes):
            raise ExperimentError("sampled sizes must exceed the exhaustive test size")
        if self.quant_bits not in (1, 2, 3):
            raise ExperimentError(f"quant_bits must be 1, 2 or 3, got {self.quant_bits}")
        if self.epochs < 1 or self.accumulate < 1:
            raise ExperimentError("epochs and accumulate must be >= 1")

    def model_config(self) -> ModelConfig:
        """The quantized, weight-shared max-aggregation NLM trained by this config."""
        definition = get_task(self.task)
        return ModelConfig(
            family='nlm',
            max_arity=self.max_arity,
            depth=self.depth,
            width=self.width,
            aggregator='max',
            quant_bits=self.quant_bits,
            weight_sharing=True,
            target_arity=0,
            input_channels=definition.input_channels,
        )

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['sampled_sizes'] = list(self.sampled_sizes)
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'EnumTrainConfig':
        unknown = sorted(set(data) - set(cls.__dataclass_fields__))
        if unknown:
            raise ExperimentError(f"unknown enumerative config fields {unknown}")
        return cls(**data)
