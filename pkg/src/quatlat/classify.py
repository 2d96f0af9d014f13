"""Commensurability classes of arithmetic sublattices.

Given an algebra A over K and a subfield K0 -> K, every base place v of K0
gets a verdict from the places of K above it: the ramified subset A_v and
the odd-local-degree subset Odd_v. A K0-algebra B with B (x) K = A exists
iff no place is a Violation and the Forced places can be completed to an
even set using Free places. The classes are the solutions
Ram(B) = Forced + S (S a set of Free places) up to automorphisms of K0.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from sympy import primerange

from .errors import (
    BaseChangeMismatchError,
    CertificateViolationError,
    InconclusiveError,
    InconsistentLocalDegreeError,
    IndexDivisibleError,
    NotFreeError,
    QuatlatError,
    ZeroDenominatorError,
)
from .numfield import FinitePlace, InfinitePlace, NumberField
from .quat import (
    CommensurabilityClass,
    QuaternionAlgebra,
    base_change,
    class_representatives,
    lattice_signature,
    place_sort_key,
    same_class,
)
from .relext import (
    DEFAULT_REFINE_CAP,
    AutomorphismGroup,
    GaloisStatus,
    Place,
    PlaceMatch,
    SubfieldEmbedding,
    arch_stats,
    identity_embedding,
    is_relatively_galois,
    match_finite_places,
    match_infinite_places,
)

logger = logging.getLogger(__name__)

DEFAULT_PRIME_BOUND = 200
MAX_ENUMERATED_FREE = 10


class Verdict(str, Enum):
    FORCED = "Forced"
    FORBIDDEN = "Forbidden"
    FREE = "Free"
    VIOLATION = "Violation"


class Certification(str, Enum):
    GALOIS = "CertifiedGalois"
    ODD_DEGREE = "CertifiedOddDegree"
    TYPE_CERTIFICATE = "CertifiedByTypeCertificate"
    UNCERTIFIED = "Uncertified"


FINITE = "Finite"
INFINITE = "Infinite"
LOWER_BOUND = "LowerBound"
INCONCLUSIVE = "Inconclusive"


# -------------------------------------------------------------------------
# Degree formula
# -------------------------------------------------------------------------

def degree_formula(a: int, b: int, c: int, d: int, r_values: Sequence[int]) -> Fraction:
    """Expected [K:K0] for a (c, d) sublattice of an (a, b) lattice.

    ``r_values`` lists r_K(v) for the real places v of K0 where B ramifies.

    Raises:
        ZeroDenominatorError: 2d + c + #Ram_inf(B) = 0
    """
    denominator = 2 * d + c + len(r_values)
    if denominator == 0:
        raise ZeroDenominatorError("2d + c + #Ram_inf(B) vanishes")
    return Fraction(2 * b + a + sum(r_values), denominator)


def kleinian_fuchsian_degree(ram_infinite_count: int = 1) -> Fraction:
    """[K:K0] for Fuchsian sublattices (1, 0) of a Kleinian lattice (0, 1).

    Every ramified real place of K0 extends to [K:K0] real places of K, so
    the formula is a fixed-point equation D = (2 + k D) / (1 + k).
    """
    a, b, c, d = 0, 1, 1, 0
    degree = Fraction(2 * b + a, 2 * d + c)
    check = degree_formula(a, b, c, d, [int(degree)] * ram_infinite_count)
    if check != degree:
        raise InconsistentLocalDegreeError(f"fixed point {degree} != {check}")
    return degree


def totally_real_screen(a: int, c: int, relative_degree: int) -> bool:
    """Necessary conditions for a (c, 0) sublattice of an (a, 0) lattice.

    c must divide a with a / c = [K:K0], and a proper subfield needs a >= 2c.
    """
    if c < 1 or a % c:
        return False
    if a // c != relative_degree:
        return False
    return relative_degree == 1 or a >= 2 * c


@dataclass(frozen=True)
class DivisorCount:
    n: int
    count: int


def tau(n: int) -> DivisorCount:
    """Divisor count by trial division up to sqrt(n)."""
    if n < 1:
        raise ValueError("tau needs n >= 1")
    count, d = 0, 1
    while d * d <= n:
        if n % d == 0:
            count += 1 if d * d == n else 2
        d += 1
    return DivisorCount(n, count)


# -------------------------------------------------------------------------
# Verdicts
# -------------------------------------------------------------------------

@dataclass(frozen=True)
class PlaceVerdict:
    base_place: Place
    status: Verdict
    ramified: Tuple[Place, ...]
    odd: Tuple[Place, ...]
    match: PlaceMatch = field(compare=False, repr=False)

    def failed_condition(self) -> Optional[str]:
        """Which local condition a Violation breaks, None otherwise."""
        if self.status is not Verdict.VIOLATION:
            return None
        if any(w not in self.odd for w in self.ramified):
            return "ramified place of even local degree"
        return "unramified place of odd local degree"


def verdict_for(match: PlaceMatch, ramification: FrozenSet[Place]) -> PlaceVerdict:
    ramified = tuple(w for w in match.places if w in ramification)
    odd = tuple(match.odd_places)
    if ramified and set(ramified) == set(odd):
        status = Verdict.FORCED
    elif not ramified and odd:
        status = Verdict.FORBIDDEN
    elif not ramified and not odd:
        status = Verdict.FREE
    else:
        status = Verdict.VIOLATION
    return PlaceVerdict(match.base_place, status, ramified, odd, match)


@dataclass
class VerdictSet:
    verdicts: List[PlaceVerdict]
    searched_to: int
    unresolved: List[int] = field(default_factory=list)

    def with_status(self, status: Verdict) -> List[PlaceVerdict]:
        return [v for v in self.verdicts if v.status is status]

    def places(self, status: Verdict) -> List[Place]:
        return [v.base_place for v in self.with_status(status)]

    def of(self, place: Place) -> PlaceVerdict:
        for verdict in self.verdicts:
            if verdict.base_place == place:
                return verdict
        raise KeyError(place)


def _prime_verdicts(A: QuaternionAlgebra, E: SubfieldEmbedding, p: int,
                    seed: int) -> List[PlaceVerdict]:
    ram = frozenset(A.ramification)
    return [verdict_for(match, ram) for match in match_finite_places(E, p, seed)]


def verdict_primes(A: QuaternionAlgebra, E: SubfieldEmbedding, prime_bound: int) -> List[int]:
    """Primes under Ram(A), primes ramified in K or K0, and all primes up to the bound."""
    primes: Set[int] = set(primerange(2, prime_bound + 1))
    primes.update(A.ramified_primes)
    for K in (E.top, E.base):
        primes.update(K.ramified_primes)
        primes.update(K.unresolved_primes)
    return sorted(primes)


def place_verdicts(A: QuaternionAlgebra, E: SubfieldEmbedding,
                   prime_bound: int = DEFAULT_PRIME_BOUND, seed: int = 0,
                   workers: int = 1,
                   refine_cap: int = DEFAULT_REFINE_CAP) -> VerdictSet:
    """Verdicts at every archimedean base place and every base place above
    the primes of :func:`verdict_primes`.

    Primes dividing the index of Z[theta] are skipped and listed as
    unresolved unless A ramifies above them, in which case the error is
    raised.

    Raises:
        IndexDivisibleError: a prime under Ram(A) is not computable
    """
    if A.field != E.top:
        raise ValueError(f"{A} is not an algebra over {E.top.label}")
    primes = verdict_primes(A, E, prime_bound)
    required = set(A.ramified_primes)

    def run(p: int) -> Tuple[int, Optional[List[PlaceVerdict]]]:
        try:
            return p, _prime_verdicts(A, E, p, seed)
        except IndexDivisibleError:
            if p in required:
                raise
            logger.warning("prime %d skipped: divides the index of Z[theta]", p)
            return p, None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(run, primes))
    else:
        outcomes = [run(p) for p in primes]

    verdicts: List[PlaceVerdict] = []
    unresolved: List[int] = []
    for p, result in sorted(outcomes, key=lambda item: item[0]):
        if result is None:
            unresolved.append(p)
        else:
            verdicts.extend(result)
    ram = frozenset(A.ramification)
    verdicts.extend(verdict_for(match, ram) for match in match_infinite_places(E, refine_cap))
    verdicts.sort(key=lambda v: place_sort_key(v.base_place))
    logger.debug("%s over %s: %d verdicts, %d unresolved primes",
                 A, E.base.label, len(verdicts), len(unresolved))
    return VerdictSet(verdicts, prime_bound, unresolved)


# -------------------------------------------------------------------------
# Certificates and free-place status
# -------------------------------------------------------------------------

@dataclass(frozen=True)
class SplittingTypeCertificate:
    """Allowed fiber types (sorted local degrees) over base places above
    unramified primes."""

    allowed: FrozenSet[Tuple[int, ...]]
    sample_bound: int = 0
    asserted_by_user: bool = True

    @property
    def excludes_free_places(self) -> bool:
        return all(any(d % 2 for d in kind) for kind in self.allowed)

    @property
    def allows_free_places(self) -> bool:
        return any(all(d % 2 == 0 for d in kind) for kind in self.allowed)


def fiber_type(match: PlaceMatch) -> Tuple[int, ...]:
    return tuple(sorted(fiber.local_degree for fiber in match.fibers))


def check_certificate(certificate: SplittingTypeCertificate, E: SubfieldEmbedding,
                      seed: int = 0) -> Set[Tuple[int, ...]]:
    """Sample unramified primes up to the certificate bound.

    Returns:
        The fiber types observed

    Raises:
        CertificateViolationError: an observed type is not allowed
    """
    if certificate.sample_bound <= 0:
        logger.warning("splitting-type certificate for %s asserted without samples", E)
        return set()
    skip = set(E.top.ramified_primes) | set(E.top.unresolved_primes)
    skip |= set(E.base.ramified_primes) | set(E.base.unresolved_primes)
    seen: Set[Tuple[int, ...]] = set()
    for p in primerange(2, certificate.sample_bound + 1):
        if p in skip or E.top.disc_defining % p == 0:
            continue
        for match in match_finite_places(E, p, seed):
            kind = fiber_type(match)
            if kind not in certificate.allowed:
                raise CertificateViolationError(p, kind)
            seen.add(kind)
    logger.debug("certificate for %s holds below %d, types %s",
                 E, certificate.sample_bound, sorted(seen))
    return seen


ABSENT = "absent"
INFINITELY_MANY = "infinite"
PERSISTENT = "persistent"
UNKNOWN = "unknown"


def free_place_status(E: SubfieldEmbedding, galois: GaloisStatus,
                      certificate: Optional[SplittingTypeCertificate] = None
                      ) -> Tuple[str, Certification]:
    """What is known about Free places above unramified primes.

    An odd-degree extension has an odd local degree in every fiber, so it
    has no Free finite places at all. A Galois extension of even degree has
    infinitely many.
    """
    n = E.relative_degree
    if n % 2:
        if galois.certified:
            return ABSENT, Certification.GALOIS
        return ABSENT, Certification.ODD_DEGREE
    if galois.certified:
        return INFINITELY_MANY, Certification.GALOIS
    if certificate is not None:
        if certificate.excludes_free_places:
            return ABSENT, Certification.TYPE_CERTIFICATE
        if certificate.allows_free_places:
            return PERSISTENT, Certification.TYPE_CERTIFICATE
    return UNKNOWN, Certification.UNCERTIFIED


# -------------------------------------------------------------------------
# Embedding criterion
# -------------------------------------------------------------------------

@dataclass
class CriterionResult:
    exists: bool
    forced: List[Place]
    free_found: List[Place]
    violations: List[PlaceVerdict]
    free_status: str
    certification: Certification
    verdicts: VerdictSet
    witness: Optional[QuaternionAlgebra] = None
    reason: str = ""

    @property
    def outcome(self) -> str:
        return "Exists" if self.exists else "NotExists"


def _algebra_from(K0: NumberField, places: Iterable[Place]) -> QuaternionAlgebra:
    finite = frozenset(w for w in places if isinstance(w, FinitePlace))
    infinite = frozenset(w for w in places if isinstance(w, InfinitePlace))
    return QuaternionAlgebra(K0, finite, infinite)


def embedding_criterion(A: QuaternionAlgebra, E: SubfieldEmbedding,
                        prime_bound: int = DEFAULT_PRIME_BOUND, seed: int = 0,
                        galois: Optional[GaloisStatus] = None,
                        certificate: Optional[SplittingTypeCertificate] = None,
                        workers: int = 1,
                        refine_cap: int = DEFAULT_REFINE_CAP,
                        verdicts: Optional[VerdictSet] = None) -> CriterionResult:
    """Decide whether A = B (x) K for some quaternion algebra B over K0.

    Raises:
        InconclusiveError: parity needs a Free place, none was found below
            the bound and nothing certifies whether one exists
    """
    if verdicts is None:
        verdicts = place_verdicts(A, E, prime_bound, seed, workers, refine_cap)
    galois = galois or is_relatively_galois(E)
    status, certification = free_place_status(E, galois, certificate)
    violations = verdicts.with_status(Verdict.VIOLATION)
    forced = verdicts.places(Verdict.FORCED)
    free = verdicts.places(Verdict.FREE)
    result = CriterionResult(False, forced, free, violations, status,
                             certification, verdicts)
    if violations:
        first = violations[0]
        result.reason = f"{first.base_place}: {first.failed_condition()}"
        return result
    if len(forced) % 2 == 0:
        result.exists = True
        result.witness = _algebra_from(E.base, forced)
        return result
    if free:
        result.exists = True
        result.witness = _algebra_from(E.base, [*forced, free[0]])
        return result
    if status == INFINITELY_MANY:
        result.exists = True
        result.reason = "free places certified by even-degree Galois extension"
        return result
    if status == ABSENT and not verdicts.unresolved:
        result.reason = "odd number of forced places and no free place"
        return result
    raise InconclusiveError(
        f"{len(forced)} forced places over {E.base.label} need a free place; "
        f"none below {verdicts.searched_to}",
        searched_to=verdicts.searched_to,
        forced=[str(v) for v in forced],
    )


# -------------------------------------------------------------------------
# Enumeration
# -------------------------------------------------------------------------

@dataclass
class SignatureResult:
    signature: Tuple[int, int]
    status: str
    classes: List[CommensurabilityClass] = field(default_factory=list)
    search_bound: Optional[int] = None
    reason: str = ""

    @property
    def count(self) -> Optional[int]:
        return None if self.status == INFINITE else len(self.classes)


@dataclass
class ClassificationResult:
    embedding: SubfieldEmbedding
    criterion: CriterionResult
    signatures: Dict[Tuple[int, int], SignatureResult]
    certification: Certification
    twist_witnesses: Tuple[Place, ...] = ()

    @property
    def status(self) -> str:
        statuses = {r.status for r in self.signatures.values()}
        if INFINITE in statuses:
            return INFINITE
        if LOWER_BOUND in statuses:
            return LOWER_BOUND
        return FINITE

    @property
    def classes(self) -> List[CommensurabilityClass]:
        return [c for sig in sorted(self.signatures) for c in self.signatures[sig].classes]

    @property
    def count(self) -> Optional[int]:
        if self.status == INFINITE:
            return None
        return sum(r.count or 0 for r in self.signatures.values())


def _sublattice_signature(K0: NumberField, ram_infinite: int) -> Tuple[int, int]:
    r1, r2 = K0.signature
    return r1 - ram_infinite, r2


def _degree_check(A: QuaternionAlgebra, E: SubfieldEmbedding, B: QuaternionAlgebra,
                  r_counts: Dict[InfinitePlace, int]) -> None:
    a, b = lattice_signature(A).as_tuple()
    c, d = _sublattice_signature(E.base, len(B.ram_infinite))
    expected = degree_formula(a, b, c, d, [r_counts[v] for v in B.ram_infinite])
    if expected != E.relative_degree:
        raise InconsistentLocalDegreeError(
            f"degree formula gives {expected} for {B}, not {E.relative_degree}")


def _make_class(A: QuaternionAlgebra, E: SubfieldEmbedding, B: QuaternionAlgebra,
                r_counts: Dict[InfinitePlace, int]) -> CommensurabilityClass:
    _degree_check(A, E, B, r_counts)
    signature = _sublattice_signature(E.base, len(B.ram_infinite))
    return CommensurabilityClass(E, B, signature, trivial=E.is_identity)


def _solutions(forced: Sequence[Place], free: Sequence[Place],
               parity_free: bool = False) -> List[List[Place]]:
    """Forced + S for S a subset of free with even total, or any S when
    parity can be repaired by places outside ``free``."""
    out = []
    for size in range(len(free) + 1):
        for subset in itertools.combinations(free, size):
            if parity_free or (len(forced) + size) % 2 == 0:
                out.append([*forced, *subset])
    return out


def _record_unwitnessed(signatures: Dict[Tuple[int, int], SignatureResult],
                        E: SubfieldEmbedding, ram_infinite: int,
                        criterion: CriterionResult, prime_bound: int) -> None:
    """Infinite signature whose odd parity needs a free finite place none of
    which lies below the search bound; no class representative is built."""
    sig = _sublattice_signature(E.base, ram_infinite)
    if sum(sig) == 0 or sig in signatures:
        return
    logger.warning("%s: free finite places certified (%s) but none found below %d",
                   E, criterion.certification.value, prime_bound)
    signatures[sig] = SignatureResult(
        sig, INFINITE, search_bound=prime_bound,
        reason=(f"free finite places: {criterion.certification.value}; "
                f"no witness below {prime_bound}"))


def enumerate_classes(A: QuaternionAlgebra, E: SubfieldEmbedding,
                      group: Optional[AutomorphismGroup] = None,
                      prime_bound: int = DEFAULT_PRIME_BOUND,
                      certificate: Optional[SplittingTypeCertificate] = None,
                      seed: int = 0, workers: int = 1,
                      relative_autos: Sequence = (),
                      refine_cap: int = DEFAULT_REFINE_CAP) -> ClassificationResult:
    """All classes of sublattices with trace field K0 and A = B (x) K, grouped
    by sublattice signature (c, d).

    Raises:
        InconclusiveError: see :func:`embedding_criterion`
        CertificateViolationError: a sampled prime contradicts the certificate
    """
    if certificate is not None:
        check_certificate(certificate, E, seed)
    galois = is_relatively_galois(E, relative_autos)
    criterion = embedding_criterion(A, E, prime_bound, seed, galois, certificate,
                                    workers, refine_cap)
    if not criterion.exists:
        logger.info("%s: no algebra over %s base-changes to %s (%s)",
                    E, E.base.label, A, criterion.reason)
        return ClassificationResult(E, criterion, {}, criterion.certification)

    r_counts = {s.base_place: s.real_count for s in arch_stats(E, refine_cap)}
    free = criterion.free_found
    arch_free = [v for v in free if isinstance(v, InfinitePlace)]
    finite_free = [v for v in free if isinstance(v, FinitePlace)]
    forced = criterion.forced
    unresolved = criterion.verdicts.unresolved
    infinite = (criterion.free_status == INFINITELY_MANY
                or (criterion.free_status == PERSISTENT and len(finite_free) >= 2))
    finite = criterion.free_status == ABSENT and not unresolved

    signatures: Dict[Tuple[int, int], SignatureResult] = {}
    if infinite:
        for size in range(len(arch_free) + 1):
            for chosen in itertools.combinations(arch_free, size):
                base = [*forced, *chosen]
                if len(base) % 2:
                    if not finite_free:
                        ram_inf = sum(isinstance(v, InfinitePlace) for v in base)
                        _record_unwitnessed(signatures, E, ram_inf, criterion, prime_bound)
                        continue
                    base.append(finite_free[0])
                B = _algebra_from(E.base, base)
                sig = _sublattice_signature(E.base, len(B.ram_infinite))
                if sum(sig) == 0:
                    continue
                entry = signatures.setdefault(
                    sig, SignatureResult(sig, INFINITE, search_bound=prime_bound,
                                         reason=f"free finite places: {criterion.certification.value}"))
                if len(entry.classes) < 2:
                    entry.classes.append(_make_class(A, E, B, r_counts))
        witnesses = tuple(finite_free[:2])
        return ClassificationResult(E, criterion, signatures,
                                    criterion.certification, witnesses)

    considered = arch_free + finite_free[:MAX_ENUMERATED_FREE]
    algebras: Dict[Tuple[int, int], List[QuaternionAlgebra]] = {}
    for places in _solutions(forced, considered):
        B = _algebra_from(E.base, places)
        sig = _sublattice_signature(E.base, len(B.ram_infinite))
        if sum(sig) == 0:
            logger.debug("skipping totally definite %s", B)
            continue
        algebras.setdefault(sig, []).append(B)

    if finite:
        status, reason = FINITE, f"free finite places: {criterion.certification.value}"
    else:
        status = LOWER_BOUND
        reason = (f"unresolved primes {unresolved}" if unresolved
                  else f"free places searched to {prime_bound} only")
    base_group = group if group is not None and group.field == E.base else None
    for sig, found in algebras.items():
        reps = class_representatives(found, base_group)
        classes = sorted((_make_class(A, E, B, r_counts) for B in reps),
                         key=lambda c: c.sort_key())
        signatures[sig] = SignatureResult(sig, status, classes, prime_bound, reason)
    logger.info("%s: %s", E, {sig: r.count for sig, r in signatures.items()})
    return ClassificationResult(E, criterion, signatures, criterion.certification,
                                tuple(finite_free[:2]))


# -------------------------------------------------------------------------
# Twists and even places
# -------------------------------------------------------------------------

def find_even_places(E: SubfieldEmbedding, bound: int, want: int,
                     exclude: Iterable[int] = (), seed: int = 0) -> List[FinitePlace]:
    """Up to ``want`` base places above unramified primes <= bound whose
    fibers all have even local degree."""
    skip = set(exclude)
    for K in (E.top, E.base):
        skip.update(K.ramified_primes)
        skip.update(K.unresolved_primes)
    found: List[FinitePlace] = []
    for p in primerange(2, bound + 1):
        if p in skip or E.top.disc_defining % p == 0:
            continue
        try:
            matches = match_finite_places(E, p, seed)
        except IndexDivisibleError:
            continue
        for match in matches:
            if all(fiber.local_degree % 2 == 0 for fiber in match.fibers):
                found.append(match.base_place)
                if len(found) >= want:
                    return found
    return found


def _check_free(B: QuaternionAlgebra, E: SubfieldEmbedding, place: FinitePlace,
                seed: int) -> None:
    if place in B.ram_finite:
        raise NotFreeError(f"{place} already ramifies in {B}")
    for match in match_finite_places(E, place.p, seed):
        if match.base_place == place:
            if match.odd_places:
                raise NotFreeError(f"{place} has an odd local degree in {E.top.label}")
            return
    raise NotFreeError(f"{place} is not a place of {E.base.label}")


def twist(B: QuaternionAlgebra, E: SubfieldEmbedding, p1: FinitePlace, p2: FinitePlace,
          group: Optional[AutomorphismGroup] = None, seed: int = 0) -> QuaternionAlgebra:
    """B' with Ram(B') = Ram(B) + {p1, p2} and the same base change to K.

    Raises:
        NotFreeError: p1 = p2, or either place is not Free
        BaseChangeMismatchError: recomputation disagrees (inconsistent data)
    """
    if p1 == p2:
        raise NotFreeError("twisting needs two distinct places")
    for place in (p1, p2):
        _check_free(B, E, place, seed)
    twisted = QuaternionAlgebra(B.field, B.ram_finite | {p1, p2}, B.ram_infinite)
    if base_change(twisted, E, seed) != base_change(B, E, seed):
        raise BaseChangeMismatchError(f"{twisted} and {B} differ after base change")
    if same_class(B, twisted, group):
        raise BaseChangeMismatchError(f"{twisted} is in the class of {B}")
    return twisted


def twist_family(B: QuaternionAlgebra, E: SubfieldEmbedding, k: int,
                 bound: int = DEFAULT_PRIME_BOUND,
                 group: Optional[AutomorphismGroup] = None,
                 seed: int = 0) -> List[QuaternionAlgebra]:
    """k twists of B by disjoint pairs of even places.

    Returns fewer than k twists when the bound does not contain 2k places.
    """
    places = find_even_places(E, bound, 2 * k, exclude=B.ramified_primes, seed=seed)
    family = []
    for p1, p2 in zip(places[0::2], places[1::2]):
        family.append(twist(B, E, p1, p2, group, seed))
    if len(family) < k:
        logger.warning("only %d of %d twists found below %d", len(family), k, bound)
    return family


# -------------------------------------------------------------------------
# Full report
# -------------------------------------------------------------------------

@dataclass
class SubfieldInput:
    embedding: SubfieldEmbedding
    group: Optional[AutomorphismGroup] = None
    certificate: Optional[SplittingTypeCertificate] = None
    relative_autos: Sequence = ()
    label: str = ""


@dataclass
class SubfieldEntry:
    label: str
    embedding: SubfieldEmbedding
    admissible_signatures: List[Tuple[int, int]]
    screen: Optional[Dict[int, bool]] = None
    classification: Optional[ClassificationResult] = None
    error: Optional[str] = None
    notes: List[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.error is not None:
            return INCONCLUSIVE
        assert self.classification is not None
        return self.classification.status


@dataclass
class SublatticeReport:
    algebra: QuaternionAlgebra
    signature: Tuple[int, int]
    cocompact: bool
    trivial: CommensurabilityClass
    entries: List[SubfieldEntry]
    prime_bound: int

    @property
    def status(self) -> str:
        statuses = [e.status for e in self.entries]
        if INFINITE in statuses:
            return INFINITE
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        if LOWER_BOUND in statuses:
            return LOWER_BOUND
        return FINITE

    @property
    def total_positive_codimension(self) -> Optional[int]:
        if self.status == INFINITE:
            return None
        return sum(e.classification.count or 0 for e in self.entries
                   if e.classification is not None)

    @property
    def total_with_trivial(self) -> Optional[int]:
        total = self.total_positive_codimension
        return None if total is None else total + 1


def admissible_signatures(A: QuaternionAlgebra, E: SubfieldEmbedding,
                          refine_cap: int = DEFAULT_REFINE_CAP) -> List[Tuple[int, int]]:
    """Signatures (c, d) for which some choice of ramified real places of K0
    makes the degree formula return [K:K0]."""
    a, b = lattice_signature(A).as_tuple()
    stats = arch_stats(E, refine_cap)
    d = E.base.signature[1]
    out = set()
    for size in range(len(stats) + 1):
        for chosen in itertools.combinations(stats, size):
            c = len(stats) - size
            if c + d == 0:
                continue
            try:
                value = degree_formula(a, b, c, d, [s.real_count for s in chosen])
            except ZeroDenominatorError:
                continue
            if value == E.relative_degree:
                out.add((c, d))
    return sorted(out)


def full_sublattice_report(A: QuaternionAlgebra, subfields: Sequence[SubfieldInput],
                           prime_bound: int = DEFAULT_PRIME_BOUND, seed: int = 0,
                           workers: int = 1,
                           refine_cap: int = DEFAULT_REFINE_CAP) -> SublatticeReport:
    """Classify sublattices over every supplied subfield plus the trivial class.

    Failures of one subfield are logged and stored in its entry.
    """
    signature = lattice_signature(A)
    a, b = signature.as_tuple()
    trivial = CommensurabilityClass(identity_embedding(A.field), A, (a, b), trivial=True)
    entries: List[SubfieldEntry] = []
    for item in subfields:
        E = item.embedding
        if E.is_identity:
            continue
        label = item.label or E.base.label
        entry = SubfieldEntry(label, E, [])
        entries.append(entry)
        try:
            entry.admissible_signatures = admissible_signatures(A, E, refine_cap)
            if A.field.is_totally_real and E.base.is_totally_real:
                entry.screen = {c: totally_real_screen(a, c, E.relative_degree)
                                for c in range(1, E.base.degree + 1)}
            result = enumerate_classes(A, E, item.group, prime_bound, item.certificate,
                                       seed, workers, item.relative_autos, refine_cap)
            entry.classification = result
            if result.status == INFINITE and result.certification is Certification.GALOIS:
                entry.notes.append(
                    "even-degree Galois subfield: infinitely many pairwise "
                    "incommensurable classes, one per twist")
        except QuatlatError as e:
            logger.error("subfield %s: %s", label, e)
            entry.error = f"{type(e).__name__}: {e}"
    report = SublatticeReport(A, (a, b), signature.cocompact, trivial, entries, prime_bound)
    logger.info("report for %s: %s, total %s", A, report.status, report.total_with_trivial)
    return report
