# core/utils.py
"""Worker-pool and serialisation helpers used across apps."""
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Optional

from django.conf import settings

logger = logging.getLogger(__name__)


def resolve_workers(requested: Optional[int] = None) -> int:
    """
    Decide how many worker processes a job gets.

    CDC_WORKERS in the environment overrides the requested value.

    Args:
        requested: Worker count asked for by the caller (e.g. --workers)

    Returns:
        int: At least 1
    """
    env_value = os.environ.get('CDC_WORKERS')
    if env_value:
        return max(1, int(env_value))
    if requested is None:
        requested = getattr(settings, 'CDC_WORKERS', 1)
    return max(1, int(requested))


def parallel_map(func: Callable, items: Iterable, workers: int = 1) -> List[Any]:
    """
    Map a picklable top-level function over items, keeping input order.

    With one worker (or one item) everything runs in-process.
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.debug("fanning %d work items out to %d workers", len(items), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def dump_json(payload: Any) -> str:
    """Canonical one-line JSON so reruns are byte-identical."""
    return json.dumps(payload, sort_keys=True, separators=(',', ':'))
