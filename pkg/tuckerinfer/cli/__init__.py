from .main import main, EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_SCHEMA
from .parser import build_parser

__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_USAGE", "EXIT_NUMERIC", "EXIT_SCHEMA"]
