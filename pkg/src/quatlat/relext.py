"""Subfield embeddings K0 -> K, place matching and automorphisms.

Subfields and automorphisms are supplied as polynomial images of a
generator and verified here, never discovered.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple, Union

from .errors import (
    DegreeMismatchError,
    InconsistentLocalDegreeError,
    IntervalSeparationError,
    MatchAmbiguousError,
    NotAnEmbeddingError,
    NotAutomorphismError,
)
from .exact import Poly, RealRoot, evaluate_interval, separate_roots, sturm_sequence
from .finite_field import FpQuotientElem, evaluate_fp_in_quotient, evaluate_in_quotient
from .numfield import (
    FinitePlace,
    InfinitePlace,
    NumberField,
    decompose_prime,
    infinite_places,
)

logger = logging.getLogger(__name__)

Place = Union[FinitePlace, InfinitePlace]

DEFAULT_REFINE_CAP = 4096
INITIAL_REFINE_BUDGET = 64
MATCH_TOLERANCE = 1e-8


@dataclass(frozen=True)
class SubfieldEmbedding:
    """K0 -> K sending the generator of K0 to image(theta)."""

    base: NumberField
    top: NumberField
    image: Poly

    @property
    def relative_degree(self) -> int:
        return self.top.degree // self.base.degree

    @property
    def is_identity(self) -> bool:
        return self.base == self.top and self.image == self.top.reduce(Poly.gen())

    def __str__(self) -> str:
        return f"{self.base.label} -> {self.top.label} ({self.image})"


@dataclass(frozen=True)
class Fiber:
    place: Place
    local_degree: int


@dataclass(frozen=True)
class PlaceMatch:
    """A base place together with the places above it and their local degrees."""

    base_place: Place
    fibers: Tuple[Fiber, ...]

    @property
    def places(self) -> List[Place]:
        return [fiber.place for fiber in self.fibers]

    @property
    def odd_places(self) -> List[Place]:
        return [fiber.place for fiber in self.fibers if fiber.local_degree % 2]

    def total_degree(self) -> int:
        return sum(fiber.local_degree for fiber in self.fibers)


@dataclass(frozen=True)
class ArchStats:
    """Real and complex extension counts of a real base place."""

    base_place: InfinitePlace
    real_count: int
    complex_count: int


# -------------------------------------------------------------------------
# Embeddings
# -------------------------------------------------------------------------

def verify_embedding(K0: NumberField, K: NumberField, g: Poly) -> SubfieldEmbedding:
    """Check that f_K0(g(t)) vanishes modulo f_K and wrap the embedding.

    Raises:
        DegreeMismatchError: deg K0 does not divide deg K
        NotAnEmbeddingError: the composition is nonzero
    """
    if K.degree % K0.degree:
        raise DegreeMismatchError(
            f"[{K0.label}:Q] = {K0.degree} does not divide [{K.label}:Q] = {K.degree}")
    g = K.reduce(g)
    residue = K0.poly.compose_mod(g, K.poly)
    if not residue.is_zero():
        raise NotAnEmbeddingError(
            f"{K0.label} -> {K.label}: f0({g}) = {residue} mod f, not 0")
    return SubfieldEmbedding(K0, K, g)


def identity_embedding(K: NumberField) -> SubfieldEmbedding:
    return SubfieldEmbedding(K, K, K.reduce(Poly.gen()))


# -------------------------------------------------------------------------
# Finite places
# -------------------------------------------------------------------------

def _base_factor_index(E: SubfieldEmbedding, base_places: Sequence[FinitePlace],
                       w: FinitePlace) -> FinitePlace:
    x = FpQuotientElem.generator(w.local_factor)
    y = evaluate_in_quotient(E.image, x)
    hits = [v for v in base_places
            if evaluate_fp_in_quotient(v.local_factor, y).is_zero()]
    if len(hits) != 1:
        raise MatchAmbiguousError(
            f"{w} lies over {len(hits)} places of {E.base.label} under {E}")
    return hits[0]


def match_finite_places(E: SubfieldEmbedding, p: int, seed: int = 0) -> List[PlaceMatch]:
    """Group the places of K above p by the place of K0 below them.

    Raises:
        IndexDivisibleError: p divides the index in either field
        MatchAmbiguousError: a place of K lies over zero or several base places
        InconsistentLocalDegreeError: e or f ratios are not integral
    """
    base = decompose_prime(E.base, p, seed).places
    top = decompose_prime(E.top, p, seed).places
    groups: Dict[FinitePlace, List[Fiber]] = {v: [] for v in base}
    for w in top:
        v = _base_factor_index(E, base, w)
        if w.e % v.e or w.f % v.f:
            raise InconsistentLocalDegreeError(
                f"{w} over {v}: e and f ratios are not integral")
        groups[v].append(Fiber(w, (w.e // v.e) * (w.f // v.f)))
    matches = [PlaceMatch(v, tuple(fibers)) for v, fibers in groups.items()]
    for match in matches:
        if match.total_degree() != E.relative_degree:
            raise InconsistentLocalDegreeError(
                f"local degrees over {match.base_place} sum to "
                f"{match.total_degree()}, expected {E.relative_degree}")
    return matches


# -------------------------------------------------------------------------
# Infinite places
# -------------------------------------------------------------------------

class _RootRefiner:
    """Refines isolating intervals of one polynomial in place."""

    def __init__(self, roots: Sequence[RealRoot]):
        self.roots = separate_roots(roots) if len(roots) > 1 else list(roots)
        self.seq = sturm_sequence(roots[0].poly) if roots else []

    def refine(self, i: int) -> None:
        self.roots[i] = self.roots[i].refine(self.seq)


def _match_real_roots(image: Poly, top_roots: Sequence[RealRoot],
                      base: _RootRefiner, refine_cap: int) -> List[int]:
    """Index of the base root equal to image(rho) for every top root rho."""
    top = _RootRefiner(top_roots)
    result: List[int] = []
    for j in range(len(top.roots)):
        budget, used = INITIAL_REFINE_BUDGET, 0
        while True:
            enclosure = evaluate_interval(image, top.roots[j].interval)
            hits = [i for i, r in enumerate(base.roots) if r.interval.overlaps(enclosure)]
            if len(hits) == 1:
                result.append(hits[0])
                break
            if not hits:
                raise IntervalSeparationError(
                    f"image of real root {j} meets no base root interval")
            if used >= budget:
                if budget >= refine_cap:
                    raise IntervalSeparationError(
                        f"real root {j} unresolved after {used} refinement steps")
                budget = min(2 * budget, refine_cap)
                logger.debug("raising refinement budget to %d", budget)
            top.refine(j)
            for i in hits:
                base.refine(i)
            used += 1
    return result


def _certified_nearest(z: complex, candidates: Sequence[InfinitePlace]) -> InfinitePlace:
    """The single base place whose root, or its conjugate, lies within
    MATCH_TOLERANCE of z, relative to 1 + |z|.

    Raises:
        MatchAmbiguousError: no candidate or more than one lies that close
    """
    radius = MATCH_TOLERANCE * (1 + abs(z))

    def distance(v: InfinitePlace) -> float:
        w = v.approximation
        return min(abs(z - w), abs(z - w.conjugate()))

    near = [v for v in candidates if distance(v) <= radius]
    if len(near) != 1:
        raise MatchAmbiguousError(
            f"{len(near)} archimedean base places within {radius:.1e} of {z}")
    # the runner-up must sit clear of the tolerance band
    others = [distance(v) for v in candidates if v is not near[0]]
    if others and min(others) <= 2 * radius:
        raise MatchAmbiguousError(f"archimedean base places too close to {z}")
    return near[0]


def _eval_complex(g: Poly, z: complex) -> complex:
    acc = 0j
    for c in reversed(g.coefficients):
        acc = acc * z + float(c)
    return acc


def match_infinite_places(E: SubfieldEmbedding,
                          refine_cap: int = DEFAULT_REFINE_CAP) -> List[PlaceMatch]:
    """Fibers of every archimedean place of K0.

    Real places of K are matched exactly by interval refinement. A complex
    place of K goes to the one base place whose root lies within
    MATCH_TOLERANCE of the image of its root.

    Raises:
        IntervalSeparationError: intervals did not separate within refine_cap steps
        MatchAmbiguousError: a complex place of K has no unique nearby base place
    """
    base_places = infinite_places(E.base)
    top_places = infinite_places(E.top)
    base_real = [v for v in base_places if v.is_real]
    groups: Dict[InfinitePlace, List[Fiber]] = {v: [] for v in base_places}

    top_real = [w for w in top_places if w.is_real]
    if top_real:
        if not base_real:
            raise InconsistentLocalDegreeError(
                f"{E.top.label} has real places but {E.base.label} has none")
        refiner = _RootRefiner([v.root for v in base_real])
        assignment = _match_real_roots(E.image, [w.root for w in top_real],
                                       refiner, refine_cap)
        for w, i in zip(top_real, assignment):
            groups[base_real[i]].append(Fiber(w, 1))

    for w in (w for w in top_places if not w.is_real):
        v = _certified_nearest(_eval_complex(E.image, w.approximation), base_places)
        groups[v].append(Fiber(w, 2 if v.is_real else 1))

    matches = [PlaceMatch(v, tuple(fibers)) for v, fibers in groups.items()]
    for match in matches:
        if match.total_degree() != E.relative_degree:
            raise IntervalSeparationError(
                f"archimedean fiber over {match.base_place} has degree "
                f"{match.total_degree()}, expected {E.relative_degree}")
    return matches


def arch_stats(E: SubfieldEmbedding, refine_cap: int = DEFAULT_REFINE_CAP) -> List[ArchStats]:
    """r_K(v) and c_K(v) for every real place v of K0."""
    stats = []
    for match in match_infinite_places(E, refine_cap):
        v = match.base_place
        if isinstance(v, InfinitePlace) and v.is_real:
            real = sum(1 for fiber in match.fibers if fiber.local_degree == 1)
            stats.append(ArchStats(v, real, len(match.fibers) - real))
    return stats


# -------------------------------------------------------------------------
# Automorphisms
# -------------------------------------------------------------------------

@dataclass(frozen=True)
class AutomorphismGroup:
    """Verified automorphisms of a field, closed under composition.

    ``closed`` records whether the supplied images were already closed.
    """

    field: NumberField
    elements: Tuple[Poly, ...]
    closed: bool

    @property
    def order(self) -> int:
        return len(self.elements)

    def compose(self, outer: Poly, inner: Poly) -> Poly:
        """outer o inner as a map theta -> outer(inner(theta))."""
        return outer.compose_mod(inner, self.field.poly)

    def table(self) -> List[List[int]]:
        """Multiplication table by element index."""
        index = {h: i for i, h in enumerate(self.elements)}
        return [[index[self.compose(a, b)] for b in self.elements] for a in self.elements]


def _check_automorphism(K: NumberField, h: Poly) -> Poly:
    h = K.reduce(h)
    if not K.poly.compose_mod(h, K.poly).is_zero():
        raise NotAutomorphismError(h)
    return h


def _closure(K: NumberField, generators: Iterable[Poly]) -> List[Poly]:
    identity = K.reduce(Poly.gen())
    elements = [identity]
    for h in generators:
        if h not in elements:
            elements.append(h)
    frontier = list(elements)
    while frontier:
        fresh = []
        for a in frontier:
            for b in list(elements):
                for c in (a.compose_mod(b, K.poly), b.compose_mod(a, K.poly)):
                    if c not in elements:
                        elements.append(c)
                        fresh.append(c)
        if len(elements) > K.degree:
            raise NotAutomorphismError(elements[-1])
        frontier = fresh
    return elements


def verify_automorphisms(K: NumberField, images: Sequence[Poly]) -> AutomorphismGroup:
    """Verify each image and close the set under composition.

    Raises:
        NotAutomorphismError: an image does not satisfy f(h) = 0 mod f
    """
    verified = [_check_automorphism(K, h) for h in images]
    elements = _closure(K, verified)
    supplied = {K.reduce(Poly.gen()), *verified}
    closed = set(elements) == supplied
    if not closed:
        logger.debug("%s: closure added %d automorphisms", K.label,
                     len(elements) - len(supplied))
    return AutomorphismGroup(K, tuple(elements), closed)


@dataclass(frozen=True)
class GaloisStatus:
    certified: bool
    order: int

    def __str__(self) -> str:
        return f"Galois({self.order})" if self.certified else "NotCertified"


def is_relatively_galois(E: SubfieldEmbedding,
                         relative_autos: Sequence[Poly] = ()) -> GaloisStatus:
    """Certify K/K0 Galois from automorphisms of K fixing the image of K0.

    Degree one and two extensions are always Galois. Otherwise the
    verified fixing automorphisms must number exactly [K:K0]; missing
    automorphisms never prove that K/K0 is not Galois.
    """
    n = E.relative_degree
    K = E.top
    fixing = []
    for h in relative_autos:
        try:
            h = _check_automorphism(K, h)
        except NotAutomorphismError:
            logger.warning("%s: %s is not an automorphism, ignored", K.label, h)
            continue
        if E.image.compose_mod(h, K.poly) == E.image:
            fixing.append(h)
    group = _closure(K, fixing)
    if n <= 2 or len(group) == n:
        return GaloisStatus(True, n)
    return GaloisStatus(False, len(group))


def automorphism_embedding(group: AutomorphismGroup, h: Poly) -> SubfieldEmbedding:
    return SubfieldEmbedding(group.field, group.field, h)


def place_permutation(group: AutomorphismGroup, h: Poly, places: Iterable[Place],
                      refine_cap: int = DEFAULT_REFINE_CAP) -> Dict[Place, Place]:
    """The action sigma: theta -> h(theta) on the given places of its field.

    Matching the embedding theta -> h(theta) sends a place w to the place
    below it, which is sigma^-1(w); the map is inverted before returning.
    """
    E = automorphism_embedding(group, h)
    below: Dict[Place, Place] = {}
    places = list(places)
    for p in sorted({w.p for w in places if isinstance(w, FinitePlace)}):
        for match in match_finite_places(E, p):
            for fiber in match.fibers:
                below[fiber.place] = match.base_place
    if any(isinstance(w, InfinitePlace) for w in places):
        for match in match_infinite_places(E, refine_cap):
            for fiber in match.fibers:
                below[fiber.place] = match.base_place
    image = {v: w for w, v in below.items()}
    return {w: image[w] for w in places}
