"""Shared fixtures and sampling helpers."""

import pytest

from superalt import (
    EvenMap,
    Vector,
    grassmann1,
    integration,
    octonions,
    rb_split,
    tensor_alt,
    tensor_map,
    truncpoly,
)


def rand_homogeneous(space, rng, bound=3):
    """A nonzero vector supported on a single parity block, with integer
    coordinates drawn uniformly from [-bound, bound]."""
    parities = [p for p in (0, 1) if space.dims[p] > 0]
    while True:
        par = rng.choice(parities)
        coords = [space.field.zero] * space.dim
        for i in space.indices_of_parity(par):
            coords[i] = space.field.coerce(rng.randint(-bound, bound))
        v = Vector(space, coords)
        if not v.is_zero():
            return v, par


@pytest.fixture(scope="session")
def p3():
    return truncpoly(3)


@pytest.fixture(scope="session")
def oct():
    return octonions()


@pytest.fixture(scope="session")
def rb3(p3):
    return integration(3)


@pytest.fixture(scope="session")
def pre3(p3, rb3):
    return rb_split(p3, rb3)


@pytest.fixture(scope="session")
def l1p3(p3):
    return tensor_alt(grassmann1(), p3)


@pytest.fixture(scope="session")
def pre6(l1p3, rb3):
    r = tensor_map(EvenMap.identity(grassmann1().space), rb3)
    return rb_split(l1p3, r)
