import logging
from typing import Union

LOG_FORMAT = '%(name)s [%(levelname)s] %(message)s'


def configure_logging(level: Union[str, int] = "WARNING") -> logging.Logger:
    """Attach a single stream handler to the package logger."""
    root = logging.getLogger("arithlab_toolkit")
    if not any(getattr(h, "_arithlab", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._arithlab = True
        root.addHandler(handler)
    root.setLevel(level)
    return root
