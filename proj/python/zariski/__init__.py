"""Exact intersection theory on resolutions of plane singularities.

Scalars are exact: rationals come back as ``fractions.Fraction`` and
rational inputs accept ``Fraction``, ``int`` or strings like ``"3/4"``.
"""

from ._zariski import *  # noqa: F401,F403
from ._zariski import Error, __doc__  # noqa: F401


def curve_label(i: int) -> str:
    return f"v{i}"
