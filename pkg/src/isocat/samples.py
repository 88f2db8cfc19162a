"""Seeded random generators for scenarios, objects and morphisms.

Every randomized sweep in the package takes an explicit generator (or
seed), so runs are reproducible; nothing here draws from global state.
"""

from __future__ import annotations

import random

from .exactalg import Polynomial, RatMatrix
from .extcat import (
    TripleMorphism,
    TripleObject,
    abelian_ops,
    canonical_space,
    equivariant_hom_basis,
    hom,
    _build_fspaces,
)
from .species import (
    SpeciesScenario,
    number_field,
    rationals,
    scalar_bimodule,
    tensor_bimodule,
)

_FIELDS = [
    lambda: rationals(),
    lambda: number_field(Polynomial([-2, 0, 1])),   # t^2 - 2
    lambda: number_field(Polynomial([1, 0, 1])),    # t^2 + 1
    lambda: number_field(Polynomial([-1, 1, 1])),   # t^2 + t - 1
]


def random_scenario(rng: random.Random) -> SpeciesScenario:
    """A small species with one or two vertices per side."""
    nx = rng.randrange(1, 3)
    ny = rng.randrange(1, 3)
    xs = [(f"x{i}", _FIELDS[rng.randrange(len(_FIELDS))]()) for i in range(nx)]
    ys = [(f"y{j}", _FIELDS[rng.randrange(len(_FIELDS))]()) for j in range(ny)]
    bims = {}
    for xid, xh in xs:
        for yid, yh in ys:
            draw = rng.random()
            if draw < 0.25:
                continue
            if xh.dim == 1 and yh.dim == 1:
                bims[(xid, yid)] = scalar_bimodule(xh, yh, rng.randrange(1, 3))
            else:
                bims[(xid, yid)] = tensor_bimodule(xh, yh, copies=1)
    return SpeciesScenario(f"random-{rng.randrange(10**6)}", xs, ys, bims)


def random_object(scenario: SpeciesScenario, rng: random.Random,
                  max_mult: int = 2, eta_bound: int = 2) -> TripleObject:
    """Canonical components with random multiplicities and equivariant eta."""
    mult = {v: rng.randrange(0, max_mult + 1) for v in scenario.vertex_order()}
    return random_object_with(scenario, mult, rng, eta_bound)


def random_object_with(scenario: SpeciesScenario, mult: dict[str, int],
                       rng: random.Random, eta_bound: int = 2) -> TripleObject:
    x_parts = {x: canonical_space(scenario.algebra(x), mult.get(x, 0)) for x in scenario.x_ids}
    y_parts = {y: canonical_space(scenario.algebra(y), mult.get(y, 0)) for y in scenario.y_ids}
    fsp = _build_fspaces(scenario, y_parts)
    eta = {}
    for x in scenario.x_ids:
        basis = equivariant_hom_basis(scenario.algebra(x).spec, fsp[x].space, x_parts[x])
        acc = RatMatrix.zeros(x_parts[x].dim, fsp[x].dim)
        for b in basis:
            c = rng.randrange(-eta_bound, eta_bound + 1)
            if c:
                acc = acc + b.scale(c)
        eta[x] = acc
    return TripleObject(scenario, x_parts, y_parts, eta, check=False)


def random_morphism(a: TripleObject, b: TripleObject, rng: random.Random,
                    bound: int = 2) -> TripleMorphism:
    basis = hom(a, b)
    out = None
    for m in basis:
        c = rng.randrange(-bound, bound + 1)
        if c:
            out = m.scale(c) if out is None else out + m.scale(c)
    if out is None:
        from .extcat import zero_morphism
        return zero_morphism(a, b)
    return out


def random_short_exact(scenario: SpeciesScenario, rng: random.Random,
                       max_mult: int = 2):
    """0 -> ker f -> B -> im f -> 0 for a random morphism f out of B."""
    b = random_object(scenario, rng, max_mult=max_mult)
    c = random_object(scenario, rng, max_mult=max_mult)
    f = random_morphism(b, c, rng)
    ops = abelian_ops(f)
    return ops.kernel_inclusion, ops.image_projection
