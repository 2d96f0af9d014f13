"""Exact arithmetic over the rationals.

Dense univariate polynomials with ``Fraction`` coefficients, the
fraction-free subresultant resultant, discriminants, Sturm sequences and
real-root isolation by Sturm-guided bisection. Everything here is a pure
function of immutable values.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import DegreeError, IntervalSeparationError, NotSquarefreeError

logger = logging.getLogger(__name__)

Rat = Fraction
"""Rationals: numerator and positive denominator in lowest terms."""

ZERO_DEGREE = -1
"""Degree reported for the zero polynomial."""

Scalar = Union[int, Fraction]


class Poly:
    """Univariate polynomial over Q, coefficients ascending by degree.

    Instances are immutable and canonical (no trailing zero coefficients),
    so equality and hashing are structural.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coefficients: Iterable[Scalar] = ()):
        coeffs = [Fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self._coeffs: Tuple[Fraction, ...] = tuple(coeffs)

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, value: Scalar) -> "Poly":
        return cls([value])

    @classmethod
    def gen(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def from_ints(cls, coefficients: Sequence[int]) -> "Poly":
        return cls(coefficients)

    # -- basic accessors --------------------------------------------------

    @property
    def coefficients(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self._coeffs)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other: Union["Poly", Scalar]) -> "Poly":
        return other if isinstance(other, Poly) else Poly.constant(other)

    def __add__(self, other: Union["Poly", Scalar]) -> "Poly":
        other = self._coerce(other)
        n = max(len(self._coeffs), len(other._coeffs))
        return Poly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self._coeffs)

    def __sub__(self, other: Union["Poly", Scalar]) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Scalar) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(a * c for a in self._coeffs)
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative exponent")
        result, base = Poly.constant(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other: "Poly") -> Tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._coeffs)
        dq = len(rem) - len(other._coeffs)
        if dq < 0:
            return Poly(), self
        quo = [Fraction(0)] * (dq + 1)
        lc = other.leading
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lc
            quo[k] = c
            if c:
                for j, b in enumerate(other._coeffs):
                    rem[k + j] -= c * b
        return Poly(quo), Poly(rem[:other.degree])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    # -- evaluation and calculus ------------------------------------------

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self._coeffs) if i)

    def compose(self, inner: "Poly") -> "Poly":
        """Return self(inner) by Horner's rule."""
        acc = Poly()
        for c in reversed(self._coeffs):
            acc = acc * inner + c
        return acc

    def compose_mod(self, inner: "Poly", modulus: "Poly") -> "Poly":
        """Return self(inner) reduced modulo ``modulus``, reducing at every step."""
        acc = Poly()
        for c in reversed(self._coeffs):
            acc = (acc * inner + c) % modulus
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self * (1 / self.leading)

    def primitive(self) -> Tuple[Fraction, List[int]]:
        """Split into rational content and primitive integer coefficients.

        Returns:
            (content, coefficients) with self == content * coefficients
            and a positive leading integer coefficient.
        """
        if self.is_zero():
            return Fraction(0), []
        den = reduce(lambda a, b: a * b // math.gcd(a, b),
                     (c.denominator for c in self._coeffs), 1)
        ints = [int(c * den) for c in self._coeffs]
        g = reduce(math.gcd, (abs(i) for i in ints), 0)
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), [i // g for i in ints]

    # -- dunder plumbing --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self._coeffs == other._coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        return self.format("t")

    def format(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self._coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over Q; gcd(a, 0) = monic(a) and gcd(0, 0) = 0.

    Runs the subresultant PRS on the primitive integer parts; the last
    nonzero remainder is an associate of the gcd.
    """
    if b.is_zero():
        return a.monic()
    if a.is_zero():
        return b.monic()
    _, A = a.primitive()
    _, B = b.primitive()
    if _int_degree(A) < _int_degree(B):
        A, B = B, A
    return Poly(_int_last_subresultant(A, B)).monic()


# -------------------------------------------------------------------------
# Subresultant PRS, resultants and discriminants
# -------------------------------------------------------------------------

def _int_degree(f: List[int]) -> int:
    return len(f) - 1


def _int_strip(f: List[int]) -> List[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _int_prem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, over Z."""
    rem = list(a)
    db = _int_degree(b)
    lc = b[-1]
    delta = _int_degree(a) - db
    if delta < 0:
        return rem
    for _ in range(delta + 1):
        if _int_degree(rem) < db:
            rem = [lc * c for c in rem]
            continue
        shift = _int_degree(rem) - db
        lead = rem[-1]
        rem = [lc * c for c in rem]
        for j, coeff in enumerate(b):
            rem[shift + j] -= lead * coeff
        rem = _int_strip(rem)
    return rem


def _int_last_subresultant(a: List[int], b: List[int]) -> List[int]:
    """Last nonzero member of the subresultant PRS of a and b, deg a >= deg b."""
    g = h = 1
    while True:
        delta = _int_degree(a) - _int_degree(b)
        r = _int_prem(a, b)
        if not r:
            return b
        a = b
        divisor = g * h ** delta
        b = [c // divisor for c in r]
        g = a[-1]
        h = h if delta == 0 else g ** delta // h ** (delta - 1)


def _int_resultant(a: List[int], b: List[int]) -> int:
    """Resultant of two nonzero primitive integer polynomials.

    Fraction-free subresultant PRS (Collins, Brown; Cohen Alg. 3.3.7).
    """
    g = h = 1
    s = 1
    if _int_degree(a) < _int_degree(b):
        a, b = b, a
        if _int_degree(a) % 2 and _int_degree(b) % 2:
            s = -1
    while _int_degree(b) > 0:
        delta = _int_degree(a) - _int_degree(b)
        if _int_degree(a) % 2 and _int_degree(b) % 2:
            s = -s
        r = _int_prem(a, b)
        if not r:
            return 0
        a = b
        divisor = g * h ** delta
        b = [c // divisor for c in r]
        g = a[-1]
        h = h if delta == 0 else g ** delta // h ** (delta - 1)
    da = _int_degree(a)
    return s * (b[-1] ** da // h ** (da - 1))


def resultant(f: Poly, g: Poly) -> Fraction:
    """Resultant res(f, g) over Q.

    Contents are pulled out so the PRS runs on primitive integer
    polynomials: res(c*F, d*G) = c^deg G * d^deg F * res(F, G).
    """
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    if f.degree == 0 and g.degree == 0:
        return Fraction(1)
    if g.degree == 0:
        return g.leading ** f.degree
    if f.degree == 0:
        return f.leading ** g.degree
    cf, F = f.primitive()
    cg, G = g.primitive()
    core = _int_resultant(F, G)
    return cf ** g.degree * cg ** f.degree * core


def discriminant(f: Poly) -> Fraction:
    """disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f).

    Raises:
        DegreeError: for constant input
    """
    n = f.degree
    if n < 1:
        raise DegreeError("discriminant needs degree >= 1")
    if n == 1:
        return Fraction(1)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.leading


# -------------------------------------------------------------------------
# Sturm sequences and real roots
# -------------------------------------------------------------------------

def is_squarefree(f: Poly) -> bool:
    return poly_gcd(f, f.derivative()).degree <= 0


def squarefree_part(f: Poly) -> Poly:
    """f / gcd(f, f'), monic."""
    if f.degree < 1:
        return f.monic()
    return (f // poly_gcd(f, f.derivative())).monic()


def sturm_sequence(f: Poly) -> List[Poly]:
    """Canonical Sturm chain f, f', -rem(f, f'), ... down to a constant."""
    seq = [f, f.derivative()]
    while not seq[-1].is_zero() and seq[-1].degree > 0:
        rem = -(seq[-2] % seq[-1])
        if rem.is_zero():
            break
        seq.append(rem)
    return [p for p in seq if not p.is_zero()]


def _variations(values: Iterable[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for x, y in zip(signs, signs[1:]) if x != y)


def _variations_at_infinity(seq: Sequence[Poly], positive: bool) -> int:
    vals = []
    for p in seq:
        lc = p.leading
        vals.append(lc if positive or p.degree % 2 == 0 else -lc)
    return _variations(vals)


def sturm_count(seq: Sequence[Poly], lo: Fraction, hi: Fraction) -> int:
    """Number of distinct roots of seq[0] in the half-open interval (lo, hi]."""
    return _variations(p(lo) for p in seq) - _variations(p(hi) for p in seq)


def sturm_real_root_count(f: Poly) -> int:
    """Number of distinct real roots of the squarefree polynomial f.

    Raises:
        NotSquarefreeError: caller must divide by gcd(f, f') first
        DegreeError: for the zero polynomial
    """
    if f.is_zero():
        raise DegreeError("zero polynomial has no root count")
    if f.degree == 0:
        return 0
    if not is_squarefree(f):
        raise NotSquarefreeError(f"{f} is not squarefree")
    seq = sturm_sequence(f)
    return _variations_at_infinity(seq, False) - _variations_at_infinity(seq, True)


def cauchy_bound(f: Poly) -> Fraction:
    """Every complex root z of f satisfies |z| < 1 + max |a_i / a_n|."""
    lc = f.leading
    return 1 + max((abs(c / lc) for c in f.coefficients[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class Interval:
    """Closed rational interval [lo, hi] with interval arithmetic."""

    lo: Fraction
    hi: Fraction

    @classmethod
    def point(cls, x: Scalar) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "Interval") -> "Interval":
        products = (self.lo * other.lo, self.lo * other.hi,
                    self.hi * other.lo, self.hi * other.hi)
        return Interval(min(products), max(products))

    def overlaps(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


def evaluate_interval(f: Poly, x: Interval) -> Interval:
    """Enclosure of f over x by interval Horner evaluation."""
    acc = Interval.point(0)
    for c in reversed(f.coefficients):
        acc = acc * x + Interval.point(c)
    return acc


@dataclass(frozen=True)
class RealRoot:
    """Isolating interval for one real root of a squarefree polynomial.

    The root lies in (lo, hi], or equals lo when lo == hi.
    """

    poly: Poly
    lo: Fraction
    hi: Fraction

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def refine(self, seq: Optional[Sequence[Poly]] = None) -> "RealRoot":
        """Halve the isolating interval."""
        if self.is_exact():
            return self
        mid = (self.lo + self.hi) / 2
        if self.poly(mid) == 0:
            return RealRoot(self.poly, mid, mid)
        if self.poly(self.lo) != 0:
            # ordinary sign-change bisection
            lo_sign = self.poly(self.lo) > 0
            if (self.poly(mid) > 0) != lo_sign:
                return RealRoot(self.poly, self.lo, mid)
            return RealRoot(self.poly, mid, self.hi)
        seq = seq if seq is not None else sturm_sequence(self.poly)
        if sturm_count(seq, self.lo, mid) == 1:
            return RealRoot(self.poly, self.lo, mid)
        return RealRoot(self.poly, mid, self.hi)

    def approximate(self) -> float:
        return float((self.lo + self.hi) / 2)


def isolate_real_roots(f: Poly) -> List[RealRoot]:
    """Isolate the real roots of a squarefree f, sorted by value.

    Sturm-guided bisection of (-B, B] for the Cauchy bound B. An interval
    whose right endpoint is a root is collapsed to that point.
    """
    if f.degree < 1:
        return []
    if not is_squarefree(f):
        raise NotSquarefreeError(f"{f} is not squarefree")
    seq = sturm_sequence(f)
    bound = cauchy_bound(f)
    stack = [(-bound, bound)]
    roots: List[RealRoot] = []
    while stack:
        lo, hi = stack.pop()
        n = sturm_count(seq, lo, hi)
        if n == 0:
            continue
        if n == 1:
            if f(hi) == 0:
                roots.append(RealRoot(f, hi, hi))
            else:
                roots.append(RealRoot(f, lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    roots.sort(key=lambda r: r.lo)
    logger.debug("isolated %d real roots of %s", len(roots), f)
    return roots


def separate_roots(roots: Sequence[RealRoot], max_steps: int = 256) -> List[RealRoot]:
    """Refine sorted isolating intervals until their closures are disjoint."""
    roots = list(roots)
    seqs = {}
    for _ in range(max_steps):
        clash = False
        for i in range(len(roots) - 1):
            left, right = roots[i], roots[i + 1]
            if left.hi >= right.lo:
                clash = True
                for j in (i, i + 1):
                    poly = roots[j].poly
                    seq = seqs.setdefault(poly, sturm_sequence(poly))
                    roots[j] = roots[j].refine(seq)
        if not clash:
            return roots
    raise IntervalSeparationError("isolating intervals did not separate")
