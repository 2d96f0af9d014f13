"""Number fields Q[t]/(f): signature, ramified primes and prime decomposition."""

import logging
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple

import mpmath
from mpmath.libmp import NoConvergence
from sympy import divisors, factorint, primerange

from .errors import (
    DegreeError,
    FieldDefinitionError,
    IndexDivisibleError,
    IntervalSeparationError,
)
from .exact import (
    Poly,
    RealRoot,
    discriminant,
    is_squarefree,
    isolate_real_roots,
    sturm_real_root_count,
    sturm_sequence,
)
from .finite_field import FpPoly, factor_mod_p, fp_gcd, product

logger = logging.getLogger(__name__)

IRREDUCIBILITY_PRIME_BOUND = 100
APPROXIMATION_WIDTH = Fraction(1, 2**48)

CERTIFIED = "certified"
UNVERIFIED = "unverified"
ASSERTED = "asserted"


@dataclass(frozen=True)
class FinitePlace:
    """Place of a number field above the rational prime p.

    ``index`` is the position of ``local_factor`` in the sorted factor list
    of the defining polynomial modulo p.
    """

    field_label: str
    p: int
    index: int
    local_factor: FpPoly
    e: int
    f: int

    @property
    def local_degree(self) -> int:
        """[K_w : Q_p] = e * f."""
        return self.e * self.f

    @property
    def label(self) -> str:
        return f"{self.p}.{self.index}"

    def __str__(self) -> str:
        return f"{self.field_label}:{self.label}(e={self.e},f={self.f})"


@dataclass(frozen=True)
class InfinitePlace:
    """Archimedean place, real (a root interval) or complex (a conjugate pair)."""

    field_label: str
    kind: str
    index: int
    root: Optional[RealRoot] = field(default=None, compare=False, repr=False)
    approximation: complex = field(default=0j, compare=False, repr=False)

    @property
    def is_real(self) -> bool:
        return self.kind == "real"

    @property
    def local_degree(self) -> int:
        return 1 if self.is_real else 2

    @property
    def label(self) -> str:
        return f"{'inf' if self.is_real else 'cpx'}.{self.index}"

    def __str__(self) -> str:
        return f"{self.field_label}:{self.label}"


@dataclass(frozen=True)
class PrimeDecomposition:
    p: int
    places: Tuple[FinitePlace, ...]
    index_divisible: bool = False

    @property
    def splitting_type(self) -> Tuple[int, ...]:
        """Sorted local degrees e*f of the places above p."""
        return tuple(sorted(w.local_degree for w in self.places))

    @property
    def is_ramified(self) -> bool:
        return any(w.e > 1 for w in self.places)

    def place(self, index: int) -> FinitePlace:
        for w in self.places:
            if w.index == index:
                return w
        raise IndexError(f"no place with index {index} above {self.p}")


class NumberField:
    """The field Q(theta) with theta a root of a monic integer polynomial.

    Construct through :func:`make_field`, which validates the polynomial.
    Decompositions are cached per prime; the cache is write-once and
    guarded by a lock so that concurrent readers may share a field.
    """

    def __init__(self, poly: Poly, label: str = "", irreducibility: str = CERTIFIED):
        self.poly = poly
        self.label = label or poly.format("t")
        self.irreducibility = irreducibility
        self.degree = poly.degree
        self.disc_defining = int(discriminant(poly))
        r1 = sturm_real_root_count(poly)
        self.signature: Tuple[int, int] = (r1, (self.degree - r1) // 2)
        self._decompositions: Dict[int, PrimeDecomposition] = {}
        self._lock = threading.Lock()
        self._infinite: Optional[List[InfinitePlace]] = None
        self.ramified_primes: List[int] = []
        self.unresolved_primes: List[int] = []
        self._classify_discriminant_primes()

    def _classify_discriminant_primes(self) -> None:
        if self.degree == 1:
            return
        for p in sorted(factorint(abs(self.disc_defining))):
            try:
                if decompose_prime(self, p).is_ramified:
                    self.ramified_primes.append(p)
            except IndexDivisibleError:
                logger.warning("%s: prime %d divides the index of Z[theta]; "
                               "its ramification is unresolved", self.label, p)
                self.unresolved_primes.append(p)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    @property
    def is_totally_real(self) -> bool:
        return self.signature[1] == 0

    def reduce(self, g: Poly) -> Poly:
        """Canonical representative of g modulo the defining polynomial."""
        return g % self.poly

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NumberField):
            return NotImplemented
        return self.poly == other.poly

    def __hash__(self) -> int:
        return hash(self.poly)

    def __repr__(self) -> str:
        return f"NumberField({self.label!r}, {self.poly})"


def _has_rational_root(f: Poly) -> bool:
    """Rational roots of a monic integer polynomial are integer divisors of f(0)."""
    constant = int(f.coefficients[0])
    if constant == 0:
        return True
    return any(f(s * d) == 0 for d in divisors(abs(constant)) for s in (1, -1))


def _subset_sums(degrees: List[int]) -> Set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def irreducibility_certificate(f: Poly, bound: int = IRREDUCIBILITY_PRIME_BOUND) -> bool:
    """True when factorizations modulo small primes rule out every proper factor.

    A proper factor over Q of degree k reduces to a product of irreducible
    factors mod p whose degrees sum to k, for every p not dividing the
    discriminant. Intersecting the achievable subset sums over all primes
    below the bound certifies irreducibility when only 0 and n survive.
    """
    n = f.degree
    possible = set(range(n + 1))
    disc = int(discriminant(f))
    for p in primerange(2, bound + 1):
        if disc % p == 0:
            continue
        factors = factor_mod_p(FpPoly.from_poly(f, p))
        possible &= _subset_sums([g.degree for g, _ in factors])
        if possible <= {0, n}:
            return True
    return False


def make_field(f: Poly, label: str = "", assume_irreducible: bool = False) -> NumberField:
    """Build a number field from its defining polynomial.

    Args:
        f: Monic polynomial with integer coefficients
        label: Name used in place labels and reports
        assume_irreducible: Record irreducibility as asserted by the caller

    Returns:
        Field with signature, discriminant and ramified primes populated

    Raises:
        DegreeError: for constant f
        FieldDefinitionError: non-monic, non-integral, repeated roots or a rational root
    """
    if f.degree < 1:
        raise DegreeError("a defining polynomial needs degree >= 1")
    if not f.is_monic() or not f.has_integer_coefficients():
        raise FieldDefinitionError(f"{f} is not monic with integer coefficients")
    if not is_squarefree(f):
        raise FieldDefinitionError(f"{f} has repeated roots")
    if f.degree == 1:
        return NumberField(f, label or "Q")
    if _has_rational_root(f):
        raise FieldDefinitionError(f"{f} has a rational root")

    if assume_irreducible:
        status = ASSERTED
    elif irreducibility_certificate(f):
        status = CERTIFIED
    else:
        status = UNVERIFIED
        logger.warning("irreducibility of %s unverified below %d",
                       f, IRREDUCIBILITY_PRIME_BOUND)
    K = NumberField(f, label, status)
    logger.info("Field %s: degree %d, signature %s, ramified %s",
                K.label, K.degree, K.signature, K.ramified_primes)
    return K


RATIONALS = NumberField(Poly.gen(), "Q")
"""Q as the degree-one field Q[t]/(t); its generator is 0."""


# -------------------------------------------------------------------------
# Finite places
# -------------------------------------------------------------------------

def _dedekind_from_factors(f: Poly, p: int, factors: List[Tuple[FpPoly, int]]) -> bool:
    g = product([(h, 1) for h, _ in factors], p)
    h = product([(h, e - 1) for h, e in factors if e > 1], p)
    gh = g.lift() * h.lift()
    remainder = f - gh
    reduced = FpPoly(p, (int(c) // p for c in remainder.coefficients))
    common = fp_gcd(fp_gcd(g, h), reduced)
    return common.is_one()


def dedekind_index_check(K: NumberField, p: int) -> bool:
    """True iff p does not divide the index [O_K : Z[theta]] (Dedekind's criterion)."""
    if K.disc_defining % p != 0:
        return True
    factors = factor_mod_p(FpPoly.from_poly(K.poly, p))
    return _dedekind_from_factors(K.poly, p, factors)


def decompose_prime(K: NumberField, p: int, seed: int = 0) -> PrimeDecomposition:
    """Places of K above p read off the factorization of f mod p.

    The factor list is sorted, so place indices do not depend on ``seed``.

    Raises:
        IndexDivisibleError: p divides [O_K : Z[theta]]
    """
    cached = K._decompositions.get(p)
    if cached is not None:
        return _checked(cached, K)
    factors = factor_mod_p(FpPoly.from_poly(K.poly, p), seed)
    divisible = (K.disc_defining % p == 0
                 and not _dedekind_from_factors(K.poly, p, factors))
    places = () if divisible else tuple(
        FinitePlace(K.label, p, i, h, e, h.degree)
        for i, (h, e) in enumerate(factors)
    )
    decomposition = PrimeDecomposition(p, places, divisible)
    with K._lock:
        decomposition = K._decompositions.setdefault(p, decomposition)
    logger.debug("%s: %d -> %s", K.label, p,
                 "index divisible" if divisible else decomposition.splitting_type)
    return _checked(decomposition, K)


def _checked(decomposition: PrimeDecomposition, K: NumberField) -> PrimeDecomposition:
    if decomposition.index_divisible:
        raise IndexDivisibleError(decomposition.p, K.label)
    return decomposition


def finite_place(K: NumberField, p: int, index: int) -> FinitePlace:
    return decompose_prime(K, p).place(index)


# -------------------------------------------------------------------------
# Infinite places
# -------------------------------------------------------------------------

COMPLEX_ROOT_PRECISIONS = (50, 100, 200, 400)
SEPARATION_FACTOR = 10**6


def _separated(roots: List[mpmath.mpc], count: int, eps: mpmath.mpf) -> Optional[List[complex]]:
    """Upper-half-plane roots in canonical order, or None while any
    comparison along the way is within the error bound.

    Real parts closer than 2*eps count as equal and are ordered by |imag|;
    every other comparison needs a gap above SEPARATION_FACTOR * eps.
    """
    gap = SEPARATION_FACTOR * eps
    by_height = sorted(roots, key=lambda z: -abs(mpmath.im(z)))
    lowest = abs(mpmath.im(by_height[2 * count - 1]))
    if lowest <= gap:
        return None
    if len(by_height) > 2 * count and abs(mpmath.im(by_height[2 * count])) > 2 * eps:
        return None
    upper = sorted((z for z in by_height[:2 * count] if mpmath.im(z) > 0), key=mpmath.re)
    if len(upper) != count:
        return None
    clusters: List[List[mpmath.mpc]] = []
    for z in upper:
        if clusters:
            step = mpmath.re(z) - mpmath.re(clusters[-1][-1])
            if step <= 2 * eps:
                clusters[-1].append(z)
                continue
            if step <= gap:
                return None
        clusters.append([z])
    ordered: List[complex] = []
    for cluster in clusters:
        cluster.sort(key=lambda z: mpmath.im(z))
        if any(mpmath.im(b) - mpmath.im(a) <= gap for a, b in zip(cluster, cluster[1:])):
            return None
        ordered.extend(complex(z) for z in cluster)
    return ordered


def _complex_roots(f: Poly, count: int) -> List[complex]:
    """Roots in the upper half plane, ordered by real part then |imag|.

    The working precision doubles until every comparison behind the order
    clears the error estimate of the root finder.

    Raises:
        IntervalSeparationError: still ambiguous at the highest precision
    """
    for dps in COMPLEX_ROOT_PRECISIONS:
        with mpmath.workdps(dps):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(f.coefficients)]
            try:
                roots, err = mpmath.polyroots(coeffs, maxsteps=4 * dps, extraprec=2 * dps,
                                              error=True)
            except NoConvergence:
                logger.debug("%s: root finder did not converge at %d digits", f, dps)
                continue
            eps = max(mpmath.mpf(err), mpmath.mpf(10) ** (10 - dps))
            ordered = _separated(list(roots), count, eps)
        if ordered is not None:
            return ordered
        logger.debug("%s: complex roots not separated at %d digits", f, dps)
    raise IntervalSeparationError(
        f"complex roots of {f} not separated at {COMPLEX_ROOT_PRECISIONS[-1]} digits")


def _narrow(root: RealRoot, seq: List[Poly]) -> RealRoot:
    while root.hi - root.lo > APPROXIMATION_WIDTH:
        root = root.refine(seq)
    return root


def infinite_places(K: NumberField) -> List[InfinitePlace]:
    """Real places by increasing root, then complex places."""
    if K._infinite is not None:
        return K._infinite
    seq = sturm_sequence(K.poly)
    roots = [_narrow(root, seq) for root in isolate_real_roots(K.poly)]
    places = [
        InfinitePlace(K.label, "real", i, root, complex(root.approximate()))
        for i, root in enumerate(roots)
    ]
    r2 = K.signature[1]
    if r2:
        places.extend(
            InfinitePlace(K.label, "complex", i, None, z)
            for i, z in enumerate(_complex_roots(K.poly, r2))
        )
    K._infinite = places
    return places


def real_places(K: NumberField) -> List[InfinitePlace]:
    return [v for v in infinite_places(K) if v.is_real]


def complex_places(K: NumberField) -> List[InfinitePlace]:
    return [v for v in infinite_places(K) if not v.is_real]

