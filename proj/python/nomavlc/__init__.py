"""NOMA-VLC downlink numerics (thin wrapper over the C++ core)."""

try:
    from ._core import *  # noqa: F401,F403  (wheel layout)
except ImportError:  # development layout: locate the CMake-built module
    import os
    import sys

    _core_dir = os.environ.get("NOMAVLC_CORE_DIR")
    if not _core_dir:
        raise
    sys.path.insert(0, _core_dir)
    from _core import *  # noqa: F401,F403
