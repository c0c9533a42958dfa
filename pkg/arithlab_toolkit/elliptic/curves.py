"""Named fixture curves used across the test-suite and the reproduce runner."""

from typing import Dict, Tuple

from arithlab_toolkit.errors import DomainError
from arithlab_toolkit.elliptic.curve import WeierstrassCurve

CURVES: Dict[str, Tuple[int, int, int, int, int]] = {
    "11a": (0, -1, 1, -10, -20),
    "37a": (0, 0, 1, -1, 0),
    "389a": (0, 1, 1, -2, 0),
    # y^2 - 9y = x^3 - 27, a model of x^3 + y^3 = z^3
    "fermat3": (0, 0, -9, 0, -27),
    "ex12": (0, 0, 1, -1, 1),
}


def curve(name: str) -> WeierstrassCurve:
    if name not in CURVES:
        raise DomainError(f"unknown curve {name!r}; choose from {sorted(CURVES)}")
    return WeierstrassCurve(*CURVES[name])
