"""Distributive lattices of Dyck-like, Motzkin and Schröder paths."""
from .errors import *  # noqa: F401,F403
from .order import PathLattice, build_lattice
from .paths import LatticePath, PathFamily, enumerate_paths, parse_path

__version__ = "0.1.0"
