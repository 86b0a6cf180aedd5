"""Position-dependent coined quantum walks on the integer lattice.

Exact state evolution, band structure of the homogeneous symbol, limit
velocity measures, wave-operator probes and localized eigenpairs, backed by
the C++ extension module.
"""

try:
    from ._qwalk import *  # noqa: F401,F403  (installed package layout)
    from . import _qwalk as _impl
except ImportError:  # build-tree layout used by the test harness
    from _qwalk import *  # noqa: F401,F403
    import _qwalk as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
