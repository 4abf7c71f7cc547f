"""Hot loops, compiled when possible.

The Cython extension ``_ckernels`` is used if it was built; otherwise, or when
the environment variable ``CONETORSION_PURE_PYTHON`` is set to a non-empty
value other than ``0``, the pure-Python ``_pykernels`` is used.
"""
from __future__ import annotations

import importlib
import os
from types import ModuleType


def load_python() -> ModuleType:
    return importlib.import_module("._pykernels", __name__)


def load_compiled() -> ModuleType | None:
    try:
        return importlib.import_module("._ckernels", __name__)
    except ImportError:
        return None


def _select() -> tuple[ModuleType, str]:
    if os.environ.get("CONETORSION_PURE_PYTHON", "") not in ("", "0"):
        return load_python(), "python"
    mod = load_compiled()
    if mod is None:
        return load_python(), "python"
    return mod, "cython"


_impl, BACKEND = _select()
power_sum = _impl.power_sum
bessel_zeros = _impl.bessel_zeros
mcmahon = _impl.mcmahon

__all__ = ["BACKEND", "power_sum", "bessel_zeros", "mcmahon", "load_python", "load_compiled"]
