"""Polynomials over prime fields F_p and their quotient rings.

Dense ascending coefficient tuples, square-free decomposition,
Cantor-Zassenhaus distinct/equal-degree factorization driven by an explicit
seeded generator, and arithmetic in F_p[t]/(h).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from sympy import factorint, isprime

from .errors import CompositeModulusError, NonInvertibleError
from .exact import Poly

logger = logging.getLogger(__name__)


class LinearCongruentialGenerator:
    """64-bit LCG (Knuth's MMIX constants); reproducible across platforms."""

    MULTIPLIER = 6364136223846793005
    INCREMENT = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int = 0):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.MULTIPLIER * self.state + self.INCREMENT) & self.MASK
        return self.state >> 11

    def below(self, bound: int) -> int:
        """Integer in [0, bound)."""
        value, span = 0, 1
        while span < bound * (1 << 16):
            value = (value << 53) | self.next()
            span <<= 53
        return value % bound


class FpPoly:
    """Polynomial over F_p with residues in [0, p), ascending by degree."""

    __slots__ = ("p", "_coeffs")

    def __init__(self, p: int, coefficients: Iterable[int] = ()):
        coeffs = [c % p for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.p = p
        self._coeffs: Tuple[int, ...] = tuple(coeffs)

    @classmethod
    def from_poly(cls, f: Poly, p: int) -> "FpPoly":
        """Reduce a rational polynomial modulo p.

        Raises:
            NonInvertibleError: some coefficient denominator is divisible by p
        """
        coeffs = []
        for c in f.coefficients:
            if c.denominator % p == 0:
                raise NonInvertibleError(p, c.denominator)
            coeffs.append(c.numerator * pow(c.denominator, -1, p))
        return cls(p, coeffs)

    def one(self) -> "FpPoly":
        return FpPoly(self.p, [1])

    def gen(self) -> "FpPoly":
        return FpPoly(self.p, [0, 1])

    @property
    def coefficients(self) -> Tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def leading(self) -> int:
        return self._coeffs[-1] if self._coeffs else 0

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_one(self) -> bool:
        return self._coeffs == (1,)

    def __getitem__(self, i: int) -> int:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else 0

    def __add__(self, other: "FpPoly") -> "FpPoly":
        n = max(len(self._coeffs), len(other._coeffs))
        return FpPoly(self.p, (self[i] + other[i] for i in range(n)))

    def __neg__(self) -> "FpPoly":
        return FpPoly(self.p, (-c for c in self._coeffs))

    def __sub__(self, other: "FpPoly") -> "FpPoly":
        n = max(len(self._coeffs), len(other._coeffs))
        return FpPoly(self.p, (self[i] - other[i] for i in range(n)))

    def __mul__(self, other: "FpPoly") -> "FpPoly":
        if self.is_zero() or other.is_zero():
            return FpPoly(self.p)
        out = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a:
                for j, b in enumerate(other._coeffs):
                    out[i + j] += a * b
        return FpPoly(self.p, out)

    def scale(self, c: int) -> "FpPoly":
        return FpPoly(self.p, (a * c for a in self._coeffs))

    def __divmod__(self, other: "FpPoly") -> Tuple["FpPoly", "FpPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        p = self.p
        rem = list(self._coeffs)
        dq = len(rem) - len(other._coeffs)
        if dq < 0:
            return FpPoly(p), self
        inv = pow(other.leading, -1, p)
        quo = [0] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] * inv % p
            quo[k] = c
            if c:
                for j, b in enumerate(other._coeffs):
                    rem[k + j] = (rem[k + j] - c * b) % p
        return FpPoly(p, quo), FpPoly(p, rem[:other.degree])

    def __floordiv__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "FpPoly") -> "FpPoly":
        return divmod(self, other)[1]

    def monic(self) -> "FpPoly":
        if self.is_zero():
            return self
        return self.scale(pow(self.leading, -1, self.p))

    def derivative(self) -> "FpPoly":
        return FpPoly(self.p, (i * c for i, c in enumerate(self._coeffs) if i))

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self._coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def pow_mod(self, exponent: int, modulus: "FpPoly") -> "FpPoly":
        result, base = self.one(), self % modulus
        while exponent:
            if exponent & 1:
                result = result * base % modulus
            base = base * base % modulus
            exponent >>= 1
        return result

    def lift(self) -> Poly:
        """Integer lift with coefficients in [0, p)."""
        return Poly(self._coeffs)

    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return self.degree, self._coeffs

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FpPoly):
            return NotImplemented
        return self.p == other.p and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.p, self._coeffs))

    def __repr__(self) -> str:
        return f"FpPoly({self.p}, {self})"

    def __str__(self) -> str:
        return Poly(self._coeffs).format("t")


def fp_gcd(a: FpPoly, b: FpPoly) -> FpPoly:
    """Monic gcd in F_p[t]."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# -------------------------------------------------------------------------
# Factorization
# -------------------------------------------------------------------------

def _pth_root(f: FpPoly) -> FpPoly:
    """g with g(t^p) = f, for f with f' = 0 (a^p = a in F_p)."""
    p = f.p
    return FpPoly(p, (f[i * p] for i in range(f.degree // p + 1)))


def squarefree_decomposition(f: FpPoly) -> List[Tuple[FpPoly, int]]:
    """Monic squarefree factors with multiplicities (Yun / Musser, char p aware)."""
    f = f.monic()
    if f.degree < 1:
        return []
    factors: List[Tuple[FpPoly, int]] = []
    scale = 1
    while f.degree > 0:
        d = f.derivative()
        if d.is_zero():
            f = _pth_root(f)
            scale *= f.p
            continue
        g = fp_gcd(f, d)
        h = f // g
        i = 1
        while not h.is_one():
            common = fp_gcd(g, h)
            part = h // common
            if part.degree > 0:
                factors.append((part.monic(), i * scale))
            g, h, i = g // common, common, i + 1
        if g.degree < 1:
            break
        # what remains is a p-th power
        f = _pth_root(g.monic())
        scale *= f.p
    return factors


def distinct_degree_factorization(f: FpPoly) -> List[Tuple[FpPoly, int]]:
    """Split a monic squarefree f into products of equal-degree irreducibles."""
    x = f.gen()
    h = x
    out: List[Tuple[FpPoly, int]] = []
    i = 1
    while 2 * i <= f.degree:
        h = h.pow_mod(f.p, f)
        g = fp_gcd(f, h - x)
        if not g.is_one():
            out.append((g, i))
            f = f // g
            h = h % f
        i += 1
    if f.degree > 0:
        out.append((f, f.degree))
    return out


def _random_poly(rng: LinearCongruentialGenerator, p: int, degree: int) -> FpPoly:
    return FpPoly(p, [rng.below(p) for _ in range(degree + 1)])


def equal_degree_factorization(f: FpPoly, d: int,
                               rng: LinearCongruentialGenerator) -> List[FpPoly]:
    """Cantor-Zassenhaus splitting of f, a product of degree-d irreducibles."""
    if f.degree <= d:
        return [f.monic()]
    p = f.p
    while True:
        r = _random_poly(rng, p, f.degree - 1)
        if r.degree < 1:
            continue
        if p == 2:
            # trace map r + r^2 + ... + r^(2^(d-1))
            term, acc = r % f, r % f
            for _ in range(d - 1):
                term = term * term % f
                acc = acc + term
            candidate = acc
        else:
            candidate = r.pow_mod((p ** d - 1) // 2, f) - f.one()
        g = fp_gcd(f, candidate)
        if 0 < g.degree < f.degree:
            return (equal_degree_factorization(g, d, rng)
                    + equal_degree_factorization(f // g, d, rng))


def factor_mod_p(f: FpPoly, seed: int = 0) -> List[Tuple[FpPoly, int]]:
    """Complete factorization of f into monic irreducibles over F_p.

    Args:
        f: Nonzero polynomial over F_p
        seed: Seed for the equal-degree splitting generator

    Returns:
        (factor, multiplicity) pairs sorted by degree, then coefficients

    Raises:
        CompositeModulusError: if the modulus is not prime
    """
    if not isprime(f.p):
        raise CompositeModulusError(f.p)
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = LinearCongruentialGenerator(seed)
    result: List[Tuple[FpPoly, int]] = []
    for part, mult in squarefree_decomposition(f):
        for block, d in distinct_degree_factorization(part):
            for factor in equal_degree_factorization(block, d, rng):
                result.append((factor, mult))
    result.sort(key=lambda fm: (fm[0].sort_key(), fm[1]))
    return result


def is_irreducible(f: FpPoly) -> bool:
    """Rabin's test: t^(p^n) = t mod f and gcd(t^(p^(n/q)) - t, f) = 1 for primes q | n."""
    n = f.degree
    if n < 1:
        return False
    f = f.monic()
    x = f.gen()
    for q in factorint(n):
        h = x.pow_mod(f.p ** (n // q), f)
        if not fp_gcd(f, h - x).is_one():
            return False
    return x.pow_mod(f.p ** n, f) == x % f


def product(factors: Sequence[Tuple[FpPoly, int]], p: int) -> FpPoly:
    """Multiply out a factor list."""
    acc = FpPoly(p, [1])
    for g, e in factors:
        for _ in range(e):
            acc = acc * g
    return acc


# -------------------------------------------------------------------------
# Quotient rings F_p[t]/(h)
# -------------------------------------------------------------------------

@dataclass(frozen=True)
class FpQuotientElem:
    """Element of F_p[t]/(h); the representative is kept reduced mod h."""

    modulus: FpPoly
    representative: FpPoly

    @classmethod
    def of(cls, modulus: FpPoly, value: FpPoly) -> "FpQuotientElem":
        return cls(modulus, value % modulus)

    @classmethod
    def generator(cls, modulus: FpPoly) -> "FpQuotientElem":
        return cls.of(modulus, modulus.gen())

    @property
    def p(self) -> int:
        return self.modulus.p

    def is_zero(self) -> bool:
        return self.representative.is_zero()

    def __add__(self, other: "FpQuotientElem") -> "FpQuotientElem":
        return FpQuotientElem.of(self.modulus, self.representative + other.representative)

    def __mul__(self, other: "FpQuotientElem") -> "FpQuotientElem":
        return FpQuotientElem.of(self.modulus, self.representative * other.representative)

    def scalar(self, c: int) -> "FpQuotientElem":
        return FpQuotientElem.of(self.modulus, FpPoly(self.p, [c]))


def _residue(c: Fraction, p: int) -> int:
    if c.denominator % p == 0:
        raise NonInvertibleError(p, c.denominator)
    return c.numerator * pow(c.denominator, -1, p) % p


def evaluate_in_quotient(g: Poly, x: FpQuotientElem) -> FpQuotientElem:
    """g(x) in F_p[t]/(h) for rational g whose denominators are prime to p.

    Raises:
        NonInvertibleError: a coefficient denominator is divisible by p
    """
    p = x.p
    acc = x.scalar(0)
    for c in reversed(g.coefficients):
        acc = acc * x + x.scalar(_residue(c, p))
    return acc


def evaluate_fp_in_quotient(g: FpPoly, x: FpQuotientElem) -> FpQuotientElem:
    """g(x) for g already reduced mod p."""
    acc = x.scalar(0)
    for c in reversed(g.coefficients):
        acc = acc * x + x.scalar(c)
    return acc
