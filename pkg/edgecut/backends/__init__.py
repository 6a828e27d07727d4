from ..errors import EdgeCutError
from .base import DecompositionBackend
from .gomoryhu import GomoryHuBackend
from .paper import PaperBackend


def get_backend(backend_name):
    """
    Factory to get the decomposition backend by name.
    """
    if backend_name.lower() == "paper":
        return PaperBackend()
    elif backend_name.lower() == "gomoryhu":
        return GomoryHuBackend()
    else:
        raise EdgeCutError("badconfig", f"Unknown backend: {backend_name}")


__all__ = ["DecompositionBackend", "GomoryHuBackend", "PaperBackend", "get_backend"]
