"""Scripted checks of the headline classification results."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from sympy import isprime, primerange

from .classify import (
    FINITE,
    SplittingTypeCertificate,
    SubfieldInput,
    degree_formula,
    full_sublattice_report,
    kleinian_fuchsian_degree,
    tau,
)
from .corpus import Corpus
from .exact import Poly
from .numfield import RATIONALS, decompose_prime
from .quat import algebra_over_primes, base_change
from .relext import verify_embedding

logger = logging.getLogger(__name__)

A5_LABEL = "a5-sextic"
A5_TYPES = frozenset({(1, 1, 1, 1, 1, 1), (1, 1, 2, 2), (1, 5), (3, 3)})
A5_CENSUS_BOUND = 1000
A5_PRIME_LIMIT = 50
CYCLIC_LABELS = {3: "cyclic-cubic", 5: "cyclic-quintic"}


@dataclass
class ReproduceResult:
    target: str
    passed: bool = True
    lines: List[str] = field(default_factory=list)

    def check(self, ok: bool, message: str) -> bool:
        self.lines.append(f"{'PASS' if ok else 'FAIL'}: {message}")
        self.passed = self.passed and ok
        return ok

    def __str__(self) -> str:
        return "\n".join([*self.lines, f"{self.target}: {'PASS' if self.passed else 'FAIL'}"])


def a5_census(corpus: Corpus, bound: int = A5_CENSUS_BOUND) -> Dict[Tuple[int, ...], List[int]]:
    """Splitting types of unramified primes below ``bound`` in the A5 sextic."""
    K = corpus.field(A5_LABEL)
    census: Dict[Tuple[int, ...], List[int]] = {}
    for p in primerange(2, bound + 1):
        if K.disc_defining % p == 0:
            continue
        census.setdefault(decompose_prime(K, p).splitting_type, []).append(p)
    return census


def reproduce_a5(corpus: Corpus, primes: Sequence[int] = (2, 3),
                 prime_bound: int = 200, seed: int = 0) -> ReproduceResult:
    """Unique Fuchsian class for the base change of B_S to the A5 sextic."""
    result = ReproduceResult("a5")
    K = corpus.field(A5_LABEL)
    primes = sorted(set(primes))
    if not all(isprime(p) and p < A5_PRIME_LIMIT for p in primes):
        result.check(False, f"S = {primes} must consist of primes below {A5_PRIME_LIMIT}")
        return result
    if len(primes) % 2 or set(primes) & {19, 293}:
        result.check(False, f"S = {primes} must be even and avoid 19, 293")
        return result

    census = a5_census(corpus)
    result.check(set(census) <= A5_TYPES and len(census) == len(A5_TYPES),
                 f"splitting types below {A5_CENSUS_BOUND}: {sorted(census)}")

    E = verify_embedding(RATIONALS, K, Poly())
    B = algebra_over_primes(RATIONALS, primes)
    A = base_change(B, E, seed)
    certificate = SplittingTypeCertificate(A5_TYPES, A5_CENSUS_BOUND)
    report = full_sublattice_report(
        A, [SubfieldInput(E, certificate=certificate, label="Q")], prime_bound, seed)
    entry = report.entries[0]
    fuchsian = entry.classification.signatures.get((1, 0)) if entry.classification else None
    ok = (report.status == FINITE and fuchsian is not None and fuchsian.count == 1
          and fuchsian.classes[0].algebra == B)
    result.check(ok, f"unique Fuchsian class, Ram(B) = {B.labels()}")

    rival = algebra_over_primes(RATIONALS, [*primes, 19, 293])
    extra = base_change(rival, E, seed).ram_finite - A.ram_finite
    degree_one = [w for w in extra if w.p == 293 and w.local_degree == 1]
    result.check(bool(degree_one),
                 "Ram(B') = S + {19, 293} rejected: B' (x) K ramifies at "
                 + ", ".join(str(w) for w in degree_one))
    return result


def reproduce_cyclic(corpus: Corpus, n: int = 3, prime_bound: int = 200,
                     seed: int = 0) -> ReproduceResult:
    """tau(n) classes for a cyclic field of prime degree n ramified above two split primes."""
    result = ReproduceResult(f"cyclic n={n}")
    if n not in CYCLIC_LABELS:
        result.check(False, f"no bundled cyclic field of degree {n}")
        return result
    entry = corpus.load(CYCLIC_LABELS[n])
    K = entry.field
    p, q = entry.split_primes[:2]
    A = algebra_over_primes(K, [p, q])
    E = verify_embedding(RATIONALS, K, Poly())
    autos = list(entry.automorphisms.elements) if entry.automorphisms else []
    report = full_sublattice_report(
        A, [SubfieldInput(E, relative_autos=autos, label="Q")], prime_bound, seed)
    expected = tau(n).count
    result.check(report.status == FINITE and report.total_with_trivial == expected,
                 f"{report.total_with_trivial} classes including the trivial one, "
                 f"tau({n}) = {expected}")
    classes = report.entries[0].classification.classes if report.entries[0].classification else []
    result.check(len(classes) == 1 and classes[0].signature == (1, 0),
                 f"nontrivial classes: {[(c.signature, c.algebra.labels()) for c in classes]}")
    return result


def reproduce_kleinian_degree(max_degree: int = 12) -> ReproduceResult:
    """Degree formula: Kleinian case gives 2, totally real case gives n/m."""
    result = ReproduceResult("kleinian-degree")
    kleinian = [kleinian_fuchsian_degree(k) for k in range(0, 4)]
    result.check(all(d == 2 for d in kleinian), "Fuchsian in Kleinian forces [K:K0] = 2")
    failures = []
    for n in range(1, max_degree + 1):
        for m in (m for m in range(1, n + 1) if n % m == 0):
            for k in range(0, 3):
                value = degree_formula(n, 0, m, 0, [n // m] * k)
                if value != Fraction(n, m):
                    failures.append((n, m, k, value))
    result.check(not failures, f"totally real sweep n <= {max_degree}, m | n gives n/m"
                 + (f"; failures {failures}" if failures else ""))
    return result


TARGETS: Dict[str, Callable[..., ReproduceResult]] = {
    "a5": reproduce_a5,
    "cyclic": reproduce_cyclic,
    "kleinian-degree": reproduce_kleinian_degree,
}


def run_target(target: str, corpus: Optional[Corpus] = None, n: int = 3,
               prime_bound: int = 200, seed: int = 0,
               primes: Optional[Sequence[int]] = None) -> ReproduceResult:
    if target == "kleinian-degree":
        return reproduce_kleinian_degree()
    corpus = corpus or Corpus()
    if target == "a5":
        return reproduce_a5(corpus, primes or (2, 3), prime_bound, seed)
    if target == "cyclic":
        return reproduce_cyclic(corpus, n, prime_bound, seed)
    raise ValueError(f"unknown target {target!r}; choose from {sorted(TARGETS)}")
