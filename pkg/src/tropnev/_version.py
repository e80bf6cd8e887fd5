"""Version information for tropnev."""

__all__ = ["__version__", "__version_tuple__"]

__version__ = "0.1.0"
__version_tuple__ = (0, 1, 0)
