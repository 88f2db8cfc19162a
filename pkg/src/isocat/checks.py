"""Executable invariant suites over a scenario.

Each suite runs seeded random sweeps of one family of statements the
machinery is supposed to satisfy, and reports pass counts plus dumps of
any counterexamples (shrunk by summand substitution where possible).
These back the `check` command and the acceptance tests.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .extcat import (
    InternalConsistencyError,
    TripleObject,
    decompose,
    direct_sum,
    direct_sum_many,
    ext1,
    euler_form,
    hom,
    hom_space_dims,
    identity_morphism,
    is_universal,
    projective_resolution,
    torsion_pair,
    universal_extension_of,
    verify_short_exact,
    x_only,
    y_only,
    zero_morphism,
    _total_matrix,
)
from .samples import random_object, random_short_exact
from .species import SpeciesScenario, ring_center


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _dump_object(z: TripleObject) -> dict:
    return {
        "scenario": z.scenario.name,
        "dims": list(z.dimension_vector()),
        "eta": {x: [[str(e) for e in row] for row in z.eta[x].to_fractions()]
                for x in z.scenario.x_ids},
    }


def _shrink(z: TripleObject, still_fails) -> TripleObject:
    """Replace a failing object by a failing proper summand while possible."""
    for _ in range(8):
        try:
            dec = decompose(z)
        except Exception:
            return z
        if len(dec.summands) <= 1:
            return z
        for sm in dec.summands:
            if sm.object.total_dim() < z.total_dim() and still_fails(sm.object):
                z = sm.object
                break
        else:
            return z
    return z


def suite_five_term(s: SpeciesScenario, rng: random.Random, samples: int) -> SuiteResult:
    """Exactness of the Hom/Ext sequence, as the Euler-form identity."""
    res = SuiteResult("five-term-euler")
    for i in range(samples):
        a = random_object(s, rng)
        b = random_object(s, rng)
        try:
            euler_form(a, b)
            res.passed += 1
        except InternalConsistencyError as ex:
            res.failures.append({"sample": i, "error": str(ex),
                                 "left": _dump_object(a), "right": _dump_object(b)})
    return res


def suite_heredity(s: SpeciesScenario, rng: random.Random, samples: int,
                   probes_per_projective: int = 2) -> SuiteResult:
    """Length-1 resolutions with projective terms, and ext vanishing off them."""
    res = SuiteResult("heredity-resolution")
    for i in range(samples):
        z = random_object(s, rng)
        try:
            r = projective_resolution(z)
            r.verify()
            for p in (r.p1, r.p0):
                if not all(p.eta[x].rank() == p.eta[x].cols for x in s.x_ids):
                    raise InternalConsistencyError("projective term fails the mono criterion")
                for _ in range(probes_per_projective):
                    probe = random_object(s, rng, max_mult=1)
                    if ext1(p, probe).dim != 0:
                        raise InternalConsistencyError("ext out of a projective is nonzero")
            res.passed += 1
        except InternalConsistencyError as ex:
            bad = _shrink(z, lambda w: not _resolution_ok(w))
            res.failures.append({"sample": i, "error": str(ex), "object": _dump_object(bad)})
    return res


def _resolution_ok(z: TripleObject) -> bool:
    try:
        projective_resolution(z).verify()
        return True
    except InternalConsistencyError:
        return False


def suite_torsion_pair(s: SpeciesScenario, rng: random.Random, samples: int) -> SuiteResult:
    """Hom vanishing across the pair, exact canonical sequences, exact projections."""
    res = SuiteResult("torsion-pair")
    for i in range(samples):
        z = random_object(s, rng)
        try:
            tx, ty = x_only(z), y_only(z)
            if hom(tx, ty):
                raise InternalConsistencyError("hom from the x side to the y side is nonzero")
            if ext1(tx, ty).dim != 0:
                raise InternalConsistencyError("ext from the x side to the y side is nonzero")
            inc, proj = torsion_pair(z)
            if not verify_short_exact(inc, proj):
                raise InternalConsistencyError("canonical torsion sequence is not exact")
            a_inc, a_proj = random_short_exact(s, rng, max_mult=1)
            if not verify_short_exact(a_inc, a_proj):
                raise InternalConsistencyError("random short exact sequence failed")
            for side in ("x", "y"):
                if not _restricted_exact(a_inc, a_proj, side):
                    raise InternalConsistencyError(f"{side}-side projection is not exact")
            res.passed += 1
        except InternalConsistencyError as ex:
            res.failures.append({"sample": i, "error": str(ex), "object": _dump_object(z)})
    return res


def _restricted_exact(inc, proj, side: str) -> bool:
    s = inc.source.scenario
    ids = s.x_ids if side == "x" else s.y_ids
    maps_in = inc.u if side == "x" else inc.v
    maps_out = proj.u if side == "x" else proj.v
    parts = (inc.source.x, inc.target.x, proj.target.x) if side == "x" else \
            (inc.source.y, inc.target.y, proj.target.y)
    for v in ids:
        a, b, c = parts[0][v].dim, parts[1][v].dim, parts[2][v].dim
        if maps_in[v].rank() != a or maps_out[v].rank() != c or a + c != b:
            return False
    return True


def suite_universality(s: SpeciesScenario, rng: random.Random, samples: int) -> SuiteResult:
    """The three characterizations never disagree; true on universal objects."""
    res = SuiteResult("universality")
    for i in range(samples):
        z = random_object(s, rng, max_mult=1)
        try:
            is_universal(z)
            ey = universal_extension_of(z)
            if not is_universal(ey).verdict:
                raise InternalConsistencyError("universal extension not recognized")
            res.passed += 1
        except InternalConsistencyError as ex:
            res.failures.append({"sample": i, "error": str(ex), "object": _dump_object(z)})
    return res


def suite_adjunction(s: SpeciesScenario, rng: random.Random, samples: int) -> SuiteResult:
    """dim hom(E(Y), z) equals dim of the equivariant maps on the y parts."""
    res = SuiteResult("adjunction")
    for i in range(samples):
        src = random_object(s, rng, max_mult=1)
        z = random_object(s, rng, max_mult=1)
        try:
            ey = universal_extension_of(src)
            lhs = len(hom(ey, z))
            _, sv, _ = hom_space_dims(src, z)
            if lhs != sv:
                raise InternalConsistencyError(f"adjunction broken: {lhs} != {sv}")
            res.passed += 1
        except InternalConsistencyError as ex:
            res.failures.append({"sample": i, "error": str(ex),
                                 "y-source": _dump_object(src), "target": _dump_object(z)})
    return res


def suite_additivity(s: SpeciesScenario, rng: random.Random, samples: int) -> SuiteResult:
    """hom and ext1 are additive on direct sums in each argument."""
    res = SuiteResult("additivity")
    for i in range(samples):
        a = random_object(s, rng, max_mult=1)
        b = random_object(s, rng, max_mult=1)
        c = random_object(s, rng, max_mult=1)
        try:
            total, _, _ = direct_sum(a, b)
            if len(hom(total, c)) != len(hom(a, c)) + len(hom(b, c)):
                raise InternalConsistencyError("hom not additive in the first argument")
            if ext1(total, c).dim != ext1(a, c).dim + ext1(b, c).dim:
                raise InternalConsistencyError("ext1 not additive in the first argument")
            if ext1(c, total).dim != ext1(c, a).dim + ext1(c, b).dim:
                raise InternalConsistencyError("ext1 not additive in the second argument")
            res.passed += 1
        except InternalConsistencyError as ex:
            res.failures.append({"sample": i, "error": str(ex),
                                 "summands": [_dump_object(a), _dump_object(b)],
                                 "probe": _dump_object(c)})
    return res


def suite_decompose(s: SpeciesScenario, rng: random.Random, samples: int) -> SuiteResult:
    """Split idempotents recompose to the identity and dimensions add up."""
    res = SuiteResult("decompose-recompose")
    for i in range(samples):
        z = random_object(s, rng, max_mult=1)
        try:
            dec = decompose(z)
            total = sum(sm.object.total_dim() for sm in dec.summands)
            if total != z.total_dim():
                raise InternalConsistencyError("summand dimensions do not add up")
            acc = zero_morphism(z, z)
            for sm in dec.summands:
                e = sm.inclusion.compose(sm.projection)
                if not (e.compose(e) - e).is_zero():
                    raise InternalConsistencyError("split idempotent is not idempotent")
                if not (sm.projection.compose(sm.inclusion)
                        - identity_morphism(sm.object)).is_zero():
                    raise InternalConsistencyError("projection does not retract the inclusion")
                acc = acc + e
            if not (acc - identity_morphism(z)).is_zero():
                raise InternalConsistencyError("idempotents do not sum to the identity")
            if dec.summands:
                rebuilt, _, projs = direct_sum_many([sm.object for sm in dec.summands])
                glue = None
                for sm, pr in zip(dec.summands, projs):
                    part = sm.inclusion.compose(pr)
                    glue = part if glue is None else glue + part
                mat = _total_matrix(glue)
                if mat.rank() != z.total_dim():
                    raise InternalConsistencyError("summands do not reassemble to the object")
            res.passed += 1
        except InternalConsistencyError as ex:
            res.failures.append({"sample": i, "error": str(ex), "object": _dump_object(z)})
    return res


def suite_center_action(s: SpeciesScenario, rng: random.Random, samples: int) -> SuiteResult:
    """Ring-center elements act as central endomorphisms on every object."""
    res = SuiteResult("center-action")
    center = ring_center(s)
    for i in range(samples):
        z = random_object(s, rng, max_mult=1)
        try:
            endos = hom(z, z)
            for el in center.elements:
                u = {x: z.x[x].act(el[x]) for x in s.x_ids}
                v = {y: z.y[y].act(el[y]) for y in s.y_ids}
                from .extcat import TripleMorphism
                zf = TripleMorphism(z, z, u, v)
                err = zf.check()
                if err is not None:
                    raise InternalConsistencyError(f"center element is not an endomorphism: {err}")
                for f in endos:
                    if not (zf.compose(f) - f.compose(zf)).is_zero():
                        raise InternalConsistencyError("center element fails to commute")
            res.passed += 1
        except InternalConsistencyError as ex:
            res.failures.append({"sample": i, "error": str(ex), "object": _dump_object(z)})
    return res


SUITES = [
    ("five-term-euler", suite_five_term, 1.0),
    ("heredity-resolution", suite_heredity, 0.5),
    ("torsion-pair", suite_torsion_pair, 0.5),
    ("universality", suite_universality, 0.25),
    ("adjunction", suite_adjunction, 0.5),
    ("additivity", suite_additivity, 0.25),
    ("decompose-recompose", suite_decompose, 0.25),
    ("center-action", suite_center_action, 0.25),
]


def run_all(s: SpeciesScenario, seed: int, samples: int) -> list[SuiteResult]:
    """Run every suite with a per-suite derived seed; sample counts scale down
    for the heavier sweeps."""
    out = []
    for k, (name, suite, weight) in enumerate(SUITES):
        rng = random.Random(f"{seed}:{k}")
        out.append(suite(s, rng, max(1, int(samples * weight))))
    return out
