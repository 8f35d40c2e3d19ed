"""
Seed derivation.

Every random choice in a dataset flows from one master seed. The seed of
sample `index` in split `split` is

    derive_seed(master, split, index)
      = int.from_bytes(sha256("master/split/index").digest()[:8], "big")

i.e. the first 8 bytes of the SHA-256 of the path components joined by
"/", read as an unsigned big-endian integer. Further components extend
the path: retry `a` of a sample uses derive_seed(sample_seed, "retry", a).
Derived seeds are independent of generation order, so splits can be
produced in any order or in parallel with identical results.
"""
import hashlib
import logging
from typing import Callable, TypeVar

from tenacity import Retrying, retry_if_exception_type, stop_after_attempt

from apps.datasets.exceptions import GenerationError

logger = logging.getLogger(__name__)

T = TypeVar('T')

MAX_ATTEMPTS = 50


def derive_seed(master: int, *path) -> int:
    """
    Splittable hash of a master seed and a path.

    Examples:
        >>> derive_seed(0, 'train', 0) == derive_seed(0, 'train', 0)
        True
        >>> derive_seed(0, 'train', 0) == derive_seed(0, 'train', 1)
        False
    """
    key = '/'.join(str(part) for part in (master,) + path)
    return int.from_bytes(hashlib.sha256(key.encode('utf-8')).digest()[:8], 'big')


def attempt_seed(seed: int, attempt: int) -> int:
    """Seed of the given 1-based attempt; the first attempt uses `seed` itself."""
    return seed if attempt == 1 else derive_seed(seed, 'retry', attempt - 1)


def _log_retry(what: str):
    def after(retry_state):
        error = retry_state.outcome.exception()
        logger.info(
            f"Regenerating {what} (attempt {retry_state.attempt_number} failed: {error})"
        )
    return after


def with_regeneration(
    build: Callable[[int, int], T],
    seed: int,
    what: str,
    attempts: int = MAX_ATTEMPTS,
) -> T:
    """
    Call build(attempt_seed, attempt) until it stops raising GenerationError.

    Raises:
        GenerationError: The last attempt's error once `attempts` are used up.
    """
    for attempt in Retrying(
        stop=stop_after_attempt(attempts),
        retry=retry_if_exception_type(GenerationError),
        after=_log_retry(what),
        reraise=True,
    ):
        with attempt:
            number = attempt.retry_state.attempt_number
            return build(attempt_seed(seed, number), number)
