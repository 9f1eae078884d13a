"""Two-photon Dicke model toolkit."""

__version__ = "0.1.0"
