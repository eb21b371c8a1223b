import os

os.environ["MZLAB_MAX_DEGREE"] = "12"
os.environ["MZLAB_MAX_POWER"] = "12"
os.environ["MZLAB_RANDOM_SEED"] = "1729"
os.environ["MZLAB_RANDOM_TRIALS"] = "100"
os.environ["MZLAB_ENUMERATION_BUDGET"] = "4096"

import random
from fractions import Fraction

import pytest

from mzlab.config import settings
from mzlab.poly import Poly
from mzlab.rings import LaurentTRing, RationalField


@pytest.fixture(autouse=True)
def restore_settings():
    saved = settings.model_dump()
    yield
    for key, value in saved.items():
        setattr(settings, key, value)


@pytest.fixture()
def rng():
    return random.Random(settings.random_seed)


@pytest.fixture()
def random_coeff(rng):
    def make(ring):
        if isinstance(ring, LaurentTRing):
            value = ring.zero()
            for _ in range(rng.randint(1, 2)):
                c = Fraction(rng.randint(-4, 4), rng.randint(1, 2))
                value = ring.add(value, ring.monomial(rng.randint(-2, 2), c))
            return value
        if isinstance(ring, RationalField):
            return ring.from_fraction(rng.randint(-4, 4), rng.randint(1, 3))
        return ring.from_int(rng.randint(-4, 4))

    return make


@pytest.fixture()
def random_poly(rng, random_coeff):
    def make(ring, variables, terms=4, degree=3, laurent=False):
        lo = -degree if laurent else 0
        coeffs = {tuple(rng.randint(lo, degree) for _ in variables): random_coeff(ring) for _ in range(terms)}
        return Poly(ring, variables, coeffs, laurent)

    return make
