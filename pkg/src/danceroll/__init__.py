"""danceroll: dancing polygon pairs, rolling-sphere monodromy and the
split-octonion null quadric, with the transports between the three models."""

from . import bridge, dancing, docio, eulerroll, g2, geom, octonion, rolling, svg
from .errors import DancerollError

__version__ = "0.1.0"

__all__ = [
    "bridge",
    "dancing",
    "docio",
    "eulerroll",
    "g2",
    "geom",
    "octonion",
    "rolling",
    "svg",
    "DancerollError",
    "__version__",
]
