"""Time series momentum / contrarian research engine.

Thin Python wrapper over the C++ core: series types, HL/MOP signal
generation, the J x K backtest grid with Newey-West inference, quintile and
sector analytics, and seeded synthetic generators.
"""

try:
    from ._tsmom import *  # noqa: F401,F403  (installed wheel layout)
    from ._tsmom import __doc__ as _core_doc
except ImportError:  # build-tree layout: _tsmom on sys.path
    from _tsmom import *  # noqa: F401,F403
    from _tsmom import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
