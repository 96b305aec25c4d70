"""Worked example matrices shipped with the package.

Names: ex3_9_A, ex3_9_B (rank examples), ex5_1_A, ex5_1_B (non-torsion
powers and their limit), ex5_4_A (alias of ex3_9_A), a1, a2, b1, b2, c1, c2,
d1, d2 (the four generator pairs) and d1_or_d2.
"""

from importlib import resources

from .core import TropMatrix
from .io import parse_matrix

_ALIASES = {"ex5_4_A": "ex3_9_A"}


def names():
    files = resources.files(__package__).joinpath("data").iterdir()
    return sorted([p.name[:-4] for p in files if p.name.endswith(".txt")] + list(_ALIASES))


def path(name: str):
    name = _ALIASES.get(name, name)
    return resources.files(__package__).joinpath("data", f"{name}.txt")


def load(name: str) -> TropMatrix:
    p = path(name)
    return parse_matrix(p.read_text(), name)
