import random

import pytest

from rootchev import liealg as la
from rootchev import rootdata as rd
from rootchev.fields import PrimeField, QQ
from rootchev.group import ChevalleyGroup, WordAtom


@pytest.fixture
def rng():
    return random.Random(12345)


def lie(type_name, scheme="auto"):
    return la.build_lie(rd.build_root_datum(type_name), scheme)


def group(type_name, field, scheme="auto"):
    if isinstance(field, int):
        field = PrimeField(field)
    return ChevalleyGroup(lie(type_name, scheme), field)


def random_word(G, rng, natoms=20):
    """A random generator word mixing E, h and n atoms at arbitrary roots."""
    atoms = []
    for _ in range(natoms):
        kind = rng.choice(["E", "E", "E", "h", "n"])
        root = G.datum.roots[rng.randrange(len(G.datum.roots))]
        t = G.field.sample(rng, nonzero=(kind != "E"))
        if kind == "E" and not t:
            t = G.field.one
        atoms.append(WordAtom(kind, root, t))
    return tuple(atoms)
