"""Weakly singular cubature and the double layer capacitance pipeline."""

try:
    from wsq._core import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:
    from _core import *  # noqa: F401,F403  (build tree on PYTHONPATH)

__version__ = "0.1.0"
