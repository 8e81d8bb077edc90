"""kvshim: HTTP service exposing parsing, NER, and extractive QA backends."""

from kvshim.app import create_app
from kvshim.backends import select_backends

__version__ = "0.1.0"

__all__ = ["create_app", "select_backends", "__version__"]
