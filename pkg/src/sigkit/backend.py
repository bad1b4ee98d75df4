"""Kernel backend selection.

The compiled extension is used when it imports; otherwise the pure-Python
fallback takes over.  :func:`use` switches explicitly (tests and benchmarks
compare both).
"""

from __future__ import annotations

import contextlib
import logging

from . import _fallback

log = logging.getLogger(__name__)

try:
    from . import _kernels as _compiled
except ImportError as exc:  # pragma: no cover - depends on the build
    _compiled = None
    log.debug("compiled kernels unavailable (%s); using the Python fallback", exc)

_BACKENDS = {"python": _fallback}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

_current = _compiled if _compiled is not None else _fallback


def available():
    return sorted(_BACKENDS)


def name() -> str:
    return "compiled" if _current is _compiled and _compiled is not None else "python"


def current():
    return _current


def use(backend: str) -> None:
    global _current
    try:
        _current = _BACKENDS[backend]
    except KeyError:
        raise ValueError(f"backend {backend!r} is not available; have {available()}") from None


@contextlib.contextmanager
def using(backend: str):
    previous = name()
    use(backend)
    try:
        yield current()
    finally:
        use(previous)
