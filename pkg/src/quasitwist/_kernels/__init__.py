"""Kernel backend selection.

Packing helpers are cheap and always come from the numpy implementation;
the hot enumeration loop comes from the compiled extension when it built,
unless QUASITWIST_PURE is set in the environment.
"""

import os

from .pykernel import (
    BIT,
    BYTE,
    BYTE2,
    NIB,
    PackFormat,
    combine,
    pack_format,
    pack_rows,
    scalar_rows,
    unpack_rows,
    weights,
)

if os.environ.get("QUASITWIST_PURE"):
    from .pykernel import enum_level

    BACKEND_NAME = "pure"
else:
    try:
        from ._ckernel import enum_level

        BACKEND_NAME = "cython"
    except ImportError:
        from .pykernel import enum_level

        BACKEND_NAME = "pure"

__all__ = [
    "BACKEND_NAME",
    "BIT",
    "NIB",
    "BYTE",
    "BYTE2",
    "PackFormat",
    "pack_format",
    "pack_rows",
    "unpack_rows",
    "combine",
    "weights",
    "scalar_rows",
    "enum_level",
]
