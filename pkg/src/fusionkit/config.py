"""Global caps and worker settings.

All size limits live in one mutable :class:`Caps` instance so that the CLI
flags (``--element-cap`` and friends) and the tests can adjust them.
"""

from __future__ import annotations

import contextlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields


@dataclass
class Caps:
    element: int = 100_000
    subgroup: int = 243
    aut: int = 729
    threads: int = 1
    seed: int = 0


CAPS = Caps()


@contextlib.contextmanager
def caps(**overrides):
    """Temporarily override cap values: ``with caps(element=50): ...``."""
    old = {f.name: getattr(CAPS, f.name) for f in fields(CAPS)}
    for name, value in overrides.items():
        if name not in old:
            raise KeyError(name)
        setattr(CAPS, name, value)
    try:
        yield CAPS
    finally:
        for name, value in old.items():
            setattr(CAPS, name, value)


def pmap(fn, items):
    """Ordered map, fanned out over ``CAPS.threads`` workers."""
    items = list(items)
    if CAPS.threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=CAPS.threads) as pool:
        return list(pool.map(fn, items))
