"""Fuzzy label generation and fuzzy-label-enhanced KNN classifiers.

The heavy lifting lives in the compiled ``flel._core`` extension. When the
package is installed normally the extension sits next to this file; during
in-tree development the build tree can be pointed at via the
``FLEL_CORE_DIR`` environment variable.
"""

import os
import sys

_core_dir = os.environ.get("FLEL_CORE_DIR")
if _core_dir and _core_dir not in sys.path:
    sys.path.insert(0, _core_dir)

try:
    from flel._core import *  # noqa: F401,F403
    from flel import _core as _core  # noqa: F401
except ImportError:
    import _core  # noqa: F401  (build-tree layout: _core.so on sys.path)

    sys.modules[__name__ + "._core"] = _core
    _names = [n for n in dir(_core) if not n.startswith("__")]
    globals().update({n: getattr(_core, n) for n in _names})
    del _names

__all__ = [n for n in dir(_core) if not n.startswith("__")]
__version__ = "0.1.0"
