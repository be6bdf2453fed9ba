from __future__ import absolute_import

__version__ = "2026.10"

from .errors import BerklabError  # noqa: E402,F401
