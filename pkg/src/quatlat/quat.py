"""Quaternion algebras as ramification data.

An algebra is stored only through its Brauer class: the finite and real
places where it ramifies. Base change multiplies local invariants by local
degrees, so a place of the top field ramifies exactly when it lies over a
ramified base place with odd local degree.
"""

import logging
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from .errors import (
    ComplexPlaceError,
    OddRamificationError,
    TotallyDefiniteError,
)
from .numfield import (
    FinitePlace,
    InfinitePlace,
    NumberField,
    decompose_prime,
    infinite_places,
)
from .relext import (
    DEFAULT_REFINE_CAP,
    AutomorphismGroup,
    Place,
    SubfieldEmbedding,
    match_finite_places,
    match_infinite_places,
    place_permutation,
)

logger = logging.getLogger(__name__)


def place_sort_key(place: Place) -> Tuple[int, int, int]:
    """Finite places by (p, index), then real, then complex places."""
    if isinstance(place, FinitePlace):
        return (0, place.p, place.index)
    return (1 if place.is_real else 2, 0, place.index)


@dataclass(frozen=True)
class QuaternionAlgebra:
    field: NumberField
    ram_finite: FrozenSet[FinitePlace] = frozenset()
    ram_infinite: FrozenSet[InfinitePlace] = frozenset()

    @property
    def ramification(self) -> List[Place]:
        return sorted([*self.ram_finite, *self.ram_infinite], key=place_sort_key)

    @property
    def ramified_primes(self) -> List[int]:
        return sorted({w.p for w in self.ram_finite})

    def is_split(self) -> bool:
        return not self.ram_finite and not self.ram_infinite

    def labels(self) -> List[str]:
        return [w.label for w in self.ramification]

    def __str__(self) -> str:
        body = ", ".join(self.labels()) or "split"
        return f"B/{self.field.label}[{body}]"


@dataclass(frozen=True)
class LatticeSignature:
    """Counts (a, b) of split real places and complex places.

    Lattices of the algebra act on (H^2)^a x (H^3)^b.
    """

    a: int
    b: int
    cocompact: bool

    @property
    def real_dimension(self) -> int:
        return 2 * self.a + 3 * self.b

    @property
    def complex_dimension(self) -> Optional[int]:
        """Dimension of the Shimura variety when the symmetric space is (H^2)^a."""
        return self.a if self.b == 0 else None

    @property
    def kind(self) -> str:
        if (self.a, self.b) == (1, 0):
            return "Fuchsian"
        if (self.a, self.b) == (0, 1):
            return "Kleinian"
        return f"irreducible ({self.a},{self.b})"

    def as_tuple(self) -> Tuple[int, int]:
        return self.a, self.b


@dataclass(frozen=True)
class CommensurabilityClass:
    """A commensurability class of sublattices: subfield K0 and algebra B over it."""

    embedding: SubfieldEmbedding
    algebra: QuaternionAlgebra
    signature: Tuple[int, int]
    trivial: bool = False
    immersed_subspaces: str = field(default="infinitely many", compare=False)

    def sort_key(self) -> Tuple[int, List[Tuple[int, int, int]]]:
        return len(self.algebra.ramification), [place_sort_key(w) for w in self.algebra.ramification]


FiniteSpec = Union[FinitePlace, Tuple[int, int]]


def _check_parity(K: NumberField, finite: FrozenSet[FinitePlace],
                  infinite: FrozenSet[InfinitePlace]) -> None:
    count = len(finite) + len(infinite)
    if count % 2:
        raise OddRamificationError(count)
    if any(not v.is_real for v in infinite):
        raise ComplexPlaceError(f"complex place listed as ramified over {K.label}")


def make_algebra(K: NumberField, finite_places: Iterable[FiniteSpec] = (),
                 real_place_indices: Iterable[int] = ()) -> QuaternionAlgebra:
    """Algebra over K ramified at the listed places.

    Args:
        K: Base field
        finite_places: FinitePlace objects or (p, factor_index) pairs
        real_place_indices: Indices of real places by increasing root

    Raises:
        OddRamificationError: the ramification set has odd cardinality
        ComplexPlaceError: an index points at no real place
        IndexDivisibleError: a listed prime divides the index of Z[theta]
    """
    finite = set()
    for spec in finite_places:
        if isinstance(spec, FinitePlace):
            finite.add(spec)
        else:
            p, index = spec
            finite.add(decompose_prime(K, p).place(index))
    places = infinite_places(K)
    infinite = set()
    for i in real_place_indices:
        if not 0 <= i < K.signature[0]:
            raise ComplexPlaceError(f"{K.label} has no real place {i}")
        infinite.add(places[i])
    B = QuaternionAlgebra(K, frozenset(finite), frozenset(infinite))
    _check_parity(K, B.ram_finite, B.ram_infinite)
    return B


def algebra_over_primes(K: NumberField, primes: Iterable[int],
                        real_place_indices: Iterable[int] = ()) -> QuaternionAlgebra:
    """Algebra ramified at every place of K above each listed prime."""
    places = [w for p in primes for w in decompose_prime(K, p).places]
    return make_algebra(K, places, real_place_indices)


def split_algebra(K: NumberField) -> QuaternionAlgebra:
    """The matrix algebra M_2(K)."""
    return QuaternionAlgebra(K)


def base_change(B: QuaternionAlgebra, E: SubfieldEmbedding, seed: int = 0,
                refine_cap: int = DEFAULT_REFINE_CAP) -> QuaternionAlgebra:
    """B tensored up along E.

    Raises:
        ValueError: B does not live on the base of E
        OddRamificationError: never for consistent place data
    """
    if B.field != E.base:
        raise ValueError(f"{B} is not an algebra over {E.base.label}")
    finite = set()
    for p in B.ramified_primes:
        for match in match_finite_places(E, p, seed):
            if match.base_place in B.ram_finite:
                finite.update(match.odd_places)
    infinite = set()
    if B.ram_infinite:
        for match in match_infinite_places(E, refine_cap):
            if match.base_place in B.ram_infinite:
                infinite.update(w for w in match.odd_places if isinstance(w, InfinitePlace))
    result = QuaternionAlgebra(E.top, frozenset(finite), frozenset(infinite))
    _check_parity(E.top, result.ram_finite, result.ram_infinite)
    logger.debug("base change of %s along %s: %s", B, E, result)
    return result


def lattice_signature(B: QuaternionAlgebra) -> LatticeSignature:
    """(r1 - |Ram_inf|, r2) with the cocompactness flag Ram(B) != empty.

    Raises:
        TotallyDefiniteError: B ramifies at every archimedean place
    """
    r1, r2 = B.field.signature
    a = r1 - len(B.ram_infinite)
    if a + r2 == 0:
        raise TotallyDefiniteError(f"{B} is totally definite")
    return LatticeSignature(a, r2, not B.is_split())


def same_class(B1: QuaternionAlgebra, B2: QuaternionAlgebra,
               group: Optional[AutomorphismGroup] = None,
               refine_cap: int = DEFAULT_REFINE_CAP) -> bool:
    """True iff a verified automorphism carries Ram(B1) onto Ram(B2)."""
    if B1.field != B2.field:
        return False
    target = set(B2.ramification)
    source = B1.ramification
    if len(source) != len(target):
        return False
    if set(source) == target:
        return True
    if group is None:
        return False
    for h in group.elements:
        moved = place_permutation(group, h, source, refine_cap)
        if set(moved.values()) == target:
            return True
    return False


def class_representatives(algebras: Sequence[QuaternionAlgebra],
                          group: Optional[AutomorphismGroup] = None) -> List[QuaternionAlgebra]:
    """One algebra per orbit, keeping the first of each in input order."""
    reps: List[QuaternionAlgebra] = []
    for B in algebras:
        if not any(same_class(B, R, group) for R in reps):
            reps.append(B)
    return reps
