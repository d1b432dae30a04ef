"""Algebraic power series over finite fields and their digit automata."""

try:
    from ._core import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:  # pragma: no cover - in-tree builds put _core on sys.path
    from _core import *  # noqa: F401,F403
