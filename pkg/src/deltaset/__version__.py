"""Version information for deltaset."""

__version__ = "0.1.0"
