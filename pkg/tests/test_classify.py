"""Tests for verdicts, the embedding criterion, enumeration and twists."""

import itertools
import random
from fractions import Fraction

import pytest
from sympy import primerange

from quatlat.classify import (
    ABSENT,
    FINITE,
    INFINITE,
    INFINITELY_MANY,
    UNKNOWN,
    Certification,
    PlaceVerdict,
    SplittingTypeCertificate,
    SubfieldInput,
    Verdict,
    VerdictSet,
    admissible_signatures,
    check_certificate,
    degree_formula,
    embedding_criterion,
    enumerate_classes,
    find_even_places,
    free_place_status,
    full_sublattice_report,
    kleinian_fuchsian_degree,
    place_verdicts,
    tau,
    totally_real_screen,
    twist,
    twist_family,
    verdict_primes,
)
from quatlat.errors import (
    CertificateViolationError,
    InconclusiveError,
    NotFreeError,
    OddRamificationError,
    ZeroDenominatorError,
)
from quatlat.numfield import (
    RATIONALS,
    FinitePlace,
    decompose_prime,
    finite_place,
    infinite_places,
    real_places,
)
from quatlat.quat import (
    QuaternionAlgebra,
    algebra_over_primes,
    base_change,
    make_algebra,
)
from quatlat.relext import (
    PlaceMatch,
    identity_embedding,
    is_relatively_galois,
    match_finite_places,
    verify_embedding,
)
from quatlat.utils import parse_poly

A5_TYPES = frozenset({(1, 1, 1, 1, 1, 1), (1, 1, 2, 2), (1, 5), (3, 3)})


@pytest.fixture
def a5_problem(from_rationals, a5_sextic):
    E = from_rationals(a5_sextic)
    A = base_change(algebra_over_primes(RATIONALS, [2, 3]), E)
    return A, E


@pytest.fixture
def golden_problem(from_rationals, golden):
    return algebra_over_primes(golden, [11, 31]), from_rationals(golden)


class TestDegreeFormula:
    """Test cases for the degree formula and its screens."""

    def test_values(self):
        assert degree_formula(6, 0, 1, 0, []) == 6
        assert degree_formula(0, 1, 1, 0, []) == 2
        assert degree_formula(2, 0, 1, 0, [2]) == 2
        assert degree_formula(1, 0, 2, 0, []) == Fraction(1, 2)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominatorError):
            degree_formula(3, 0, 0, 0, [])

    @pytest.mark.parametrize("k", range(4))
    def test_fuchsian_in_kleinian(self, k):
        assert kleinian_fuchsian_degree(k) == 2

    def test_totally_real_sweep(self):
        """Test that the formula returns n/m whenever every r(v) equals n/m."""
        for n in range(1, 13):
            for m in (m for m in range(1, n + 1) if n % m == 0):
                for k in range(3):
                    assert degree_formula(n, 0, m, 0, [n // m] * k) == Fraction(n, m)

    @pytest.mark.parametrize("a, c, degree, expected", [
        (6, 1, 6, True),
        (6, 4, 2, False),
        (4, 2, 2, True),
        (2, 2, 1, True),
        (2, 1, 2, True),
        (3, 2, 1, False),
    ])
    def test_totally_real_screen(self, a, c, degree, expected):
        assert totally_real_screen(a, c, degree) is expected

    def test_tau(self):
        assert [tau(n).count for n in (1, 3, 5, 6, 12)] == [1, 2, 2, 4, 6]
        with pytest.raises(ValueError):
            tau(0)


class TestVerdicts:
    """Test cases for place verdicts."""

    def test_a5_verdicts(self, a5_problem):
        A, E = a5_problem
        verdicts = place_verdicts(A, E, prime_bound=50)
        by_label = {v.base_place.label: v.status for v in verdicts.verdicts}
        assert by_label["2.0"] is Verdict.FORCED
        assert by_label["3.0"] is Verdict.FORCED
        assert by_label["19.0"] is Verdict.FREE
        assert by_label["293.0"] is Verdict.FORBIDDEN
        assert by_label["inf.0"] is Verdict.FORBIDDEN
        assert by_label["5.0"] is Verdict.FORBIDDEN
        assert verdicts.unresolved == []
        assert verdicts.searched_to == 50

    def test_verdict_primes_include_ramification(self, a5_problem):
        A, E = a5_problem
        primes = verdict_primes(A, E, 10)
        assert primes == [2, 3, 5, 7, 19, 293]

    def test_violation(self, from_rationals, golden):
        """Test ramification at only one of the two places above 11 and 31."""
        A = make_algebra(golden, [(11, 0), (31, 0)])
        verdicts = place_verdicts(A, from_rationals(golden), prime_bound=40)
        violations = verdicts.with_status(Verdict.VIOLATION)
        assert {v.base_place.p for v in violations} == {11, 31}
        assert violations[0].failed_condition() == "unramified place of odd local degree"

    def test_even_local_degree_violation(self, from_rationals, golden):
        """Test ramification at the place of local degree 2 above 5."""
        A = make_algebra(golden, [(5, 0), (11, 0)])
        verdicts = place_verdicts(A, from_rationals(golden), prime_bound=20)
        verdict = verdicts.of(finite_place(RATIONALS, 5, 0))
        assert verdict.status is Verdict.VIOLATION
        assert verdict.failed_condition() == "ramified place of even local degree"

    def test_workers_do_not_change_verdicts(self, a5_problem):
        A, E = a5_problem
        serial = place_verdicts(A, E, prime_bound=60, workers=1)
        parallel = place_verdicts(A, E, prime_bound=60, workers=4)
        assert serial.verdicts == parallel.verdicts


class TestCertificates:
    """Test cases for splitting-type certificates and free-place status."""

    def test_a5_certificate_holds(self, a5_problem):
        _, E = a5_problem
        seen = check_certificate(SplittingTypeCertificate(A5_TYPES, 1000), E)
        assert seen == set(A5_TYPES)

    def test_certificate_violation(self, a5_problem):
        _, E = a5_problem
        narrow = SplittingTypeCertificate(frozenset({(1, 5), (3, 3)}), 100)
        with pytest.raises(CertificateViolationError) as info:
            check_certificate(narrow, E)
        assert info.value.p == 61
        assert info.value.found == (1, 1, 2, 2)

    def test_free_place_status(self, a5_problem, from_rationals, golden, pure_cubic):
        _, E = a5_problem
        galois = is_relatively_galois(E)
        assert free_place_status(E, galois) == (UNKNOWN, Certification.UNCERTIFIED)
        certificate = SplittingTypeCertificate(A5_TYPES)
        assert certificate.excludes_free_places
        assert free_place_status(E, galois, certificate) == (
            ABSENT, Certification.TYPE_CERTIFICATE)
        E2 = from_rationals(golden)
        assert free_place_status(E2, is_relatively_galois(E2)) == (
            INFINITELY_MANY, Certification.GALOIS)
        E3 = from_rationals(pure_cubic)
        assert free_place_status(E3, is_relatively_galois(E3)) == (
            ABSENT, Certification.ODD_DEGREE)


class TestCriterion:
    """Test cases for embedding_criterion."""

    def test_golden_exists(self, golden_problem):
        A, E = golden_problem
        result = embedding_criterion(A, E, prime_bound=100)
        assert result.outcome == "Exists"
        assert [v.p for v in result.forced] == [11, 31]
        assert result.free_status == INFINITELY_MANY
        assert result.witness == algebra_over_primes(RATIONALS, [11, 31])

    def test_violation_means_not_exists(self, from_rationals, golden):
        A = make_algebra(golden, [(11, 0), (31, 0)])
        result = embedding_criterion(A, from_rationals(golden), prime_bound=40)
        assert result.outcome == "NotExists"
        assert "unramified place of odd local degree" in result.reason

    def test_odd_forced_without_free_places(self, from_rationals, pure_cubic):
        """Test a single forced place over an odd-degree extension."""
        E = from_rationals(pure_cubic)
        A = make_algebra(pure_cubic, [(5, 0), (11, 0)])
        assert embedding_criterion(A, E, prime_bound=60).exists
        forced = finite_place(RATIONALS, 5, 0)
        match = match_finite_places(E, 5)[0]
        verdicts = VerdictSet([PlaceVerdict(forced, Verdict.FORCED, (), (), match)], 60)
        result = embedding_criterion(A, E, verdicts=verdicts)
        assert result.outcome == "NotExists"
        assert result.reason == "odd number of forced places and no free place"

    def test_inconclusive(self, a5_problem):
        """Test that parity without certification raises instead of guessing."""
        A, E = a5_problem
        forced = finite_place(RATIONALS, 2, 0)
        verdicts = VerdictSet(
            [PlaceVerdict(forced, Verdict.FORCED, (), (), PlaceMatch(forced, ()))], 60)
        with pytest.raises(InconclusiveError) as info:
            embedding_criterion(A, E, verdicts=verdicts)
        assert info.value.searched_to == 60
        certificate = SplittingTypeCertificate(A5_TYPES)
        result = embedding_criterion(A, E, certificate=certificate, verdicts=verdicts)
        assert result.outcome == "NotExists"


class TestEnumeration:
    """Test cases for enumerate_classes."""

    def test_a5_unique_class(self, a5_problem):
        A, E = a5_problem
        result = enumerate_classes(
            A, E, certificate=SplittingTypeCertificate(A5_TYPES, 1000))
        assert result.status == FINITE
        assert result.certification is Certification.TYPE_CERTIFICATE
        assert list(result.signatures) == [(1, 0)]
        (cls,) = result.classes
        assert cls.algebra == algebra_over_primes(RATIONALS, [2, 3])
        assert not cls.trivial

    def test_cyclic_cubic(self, corpus, from_rationals, cubic_rotation):
        entry = corpus.load("cyclic-cubic")
        A = algebra_over_primes(entry.field, entry.split_primes)
        result = enumerate_classes(A, from_rationals(entry.field),
                                   relative_autos=[cubic_rotation])
        assert result.status == FINITE
        assert result.certification is Certification.GALOIS
        assert result.count == 1
        assert result.classes[0].signature == (1, 0)

    def test_cyclic_quintic(self, corpus, from_rationals):
        entry = corpus.load("cyclic-quintic")
        A = algebra_over_primes(entry.field, entry.split_primes)
        result = enumerate_classes(A, from_rationals(entry.field),
                                   relative_autos=list(entry.automorphisms.elements))
        assert result.count == tau(5).count - 1

    def test_pure_cubic_odd_degree(self, from_rationals, pure_cubic):
        A = make_algebra(pure_cubic, [(5, 0), (11, 0)])
        result = enumerate_classes(A, from_rationals(pure_cubic), prime_bound=60)
        assert result.status == FINITE
        assert result.certification is Certification.ODD_DEGREE
        (cls,) = result.classes
        assert cls.algebra == algebra_over_primes(RATIONALS, [5, 11])
        assert cls.signature == (1, 0)

    def test_golden_is_infinite(self, golden_problem):
        A, E = golden_problem
        result = enumerate_classes(A, E, prime_bound=100)
        assert result.status == INFINITE
        assert result.count is None
        assert result.certification is Certification.GALOIS
        assert result.signatures[(1, 0)].status == INFINITE
        assert len(result.twist_witnesses) == 2

    def test_not_exists_gives_no_classes(self, from_rationals, golden):
        A = make_algebra(golden, [(11, 0), (31, 0)])
        result = enumerate_classes(A, from_rationals(golden), prime_bound=40)
        assert result.signatures == {}
        assert result.count == 0

    def test_infinite_without_finite_witness(self, monkeypatch, from_rationals, gaussian):
        """Test that certified free places stay infinite when none is searched."""
        A = make_algebra(gaussian, [(5, 0), (5, 1), (13, 0), (13, 1), (17, 0), (17, 1)])
        monkeypatch.setattr("quatlat.classify.verdict_primes",
                            lambda A, E, bound: list(A.ramified_primes))
        result = enumerate_classes(A, from_rationals(gaussian), prime_bound=20)
        assert result.criterion.exists
        assert result.status == INFINITE
        assert result.count is None
        entry = result.signatures[(1, 0)]
        assert entry.status == INFINITE
        assert entry.classes == []
        assert "no witness below 20" in entry.reason
        assert result.twist_witnesses == ()

    def test_relative_quadratic_with_real_ramification(self, golden, quartic):
        """Test a sublattice over the golden field with one ramified real place."""
        E = verify_embedding(golden, quartic, parse_poly("t^2 - 2"))
        A = make_algebra(quartic, [], [0, 3])
        result = enumerate_classes(A, E, prime_bound=100)
        assert result.status == INFINITE
        (cls,) = result.signatures[(1, 0)].classes
        assert [v.label for v in cls.algebra.ram_infinite] == ["inf.1"]
        assert base_change(cls.algebra, E) == A


class TestTwists:
    """Test cases for twists by pairs of even places."""

    def test_even_places(self, golden_problem):
        _, E = golden_problem
        places = find_even_places(E, 60, 4)
        assert [v.p for v in places] == [2, 3, 7, 13]

    def test_family_of_five(self, golden_problem):
        A, E = golden_problem
        B = algebra_over_primes(RATIONALS, [11, 31])
        family = twist_family(B, E, 5)
        assert len(family) == 5
        assert len(set(family)) == 5
        for twisted in family:
            assert base_change(twisted, E) == A
            assert len(twisted.ram_finite) == 4

    def test_twist_rejects_split_place(self, golden_problem):
        _, E = golden_problem
        B = algebra_over_primes(RATIONALS, [11, 31])
        with pytest.raises(NotFreeError):
            twist(B, E, finite_place(RATIONALS, 2, 0), finite_place(RATIONALS, 19, 0))

    def test_twist_needs_distinct_places(self, golden_problem):
        _, E = golden_problem
        B = algebra_over_primes(RATIONALS, [11, 31])
        place = finite_place(RATIONALS, 2, 0)
        with pytest.raises(NotFreeError):
            twist(B, E, place, place)

    def test_random_twists_keep_base_change(self, golden_problem):
        """Test 100 random pairs of even places, each twisted twice."""
        A, E = golden_problem
        B = algebra_over_primes(RATIONALS, [11, 31])
        even = find_even_places(E, 600, 30)
        assert len(even) == 30
        rng = random.Random(31)
        for _ in range(100):
            v1, v2, v3, v4 = rng.sample(even, 4)
            once = twist(B, E, v1, v2)
            assert base_change(once, E) == A
            assert once.ram_finite == B.ram_finite | {v1, v2}
            twice = twist(once, E, v3, v4)
            assert base_change(twice, E) == A
            assert len(twice.ram_finite) == 6


class TestFullReport:
    """Test cases for full_sublattice_report."""

    def test_cubic_totals(self, corpus, from_rationals, cubic_rotation):
        entry = corpus.load("cyclic-cubic")
        A = algebra_over_primes(entry.field, entry.split_primes)
        report = full_sublattice_report(
            A, [SubfieldInput(from_rationals(entry.field), relative_autos=[cubic_rotation])])
        assert report.status == FINITE
        assert report.total_positive_codimension == 1
        assert report.total_with_trivial == tau(3).count
        assert report.trivial.trivial
        assert report.signature == (3, 0)

    def test_identity_is_skipped(self, corpus):
        K = corpus.field("golden")
        A = algebra_over_primes(K, [11, 31])
        report = full_sublattice_report(A, [SubfieldInput(identity_embedding(K))])
        assert report.entries == []
        assert report.total_with_trivial == 1

    def test_failures_are_recorded(self, a5_problem):
        A, E = a5_problem
        forced_odd = SubfieldInput(
            E, certificate=SplittingTypeCertificate(frozenset({(3, 3)}), 10))
        report = full_sublattice_report(A, [forced_odd])
        assert report.status == "Inconclusive"
        assert report.entries[0].error.startswith("CertificateViolationError")

    def test_admissible_signatures(self, a5_problem, golden, quartic):
        A, E = a5_problem
        assert admissible_signatures(A, E) == [(1, 0)]
        E2 = verify_embedding(golden, quartic, parse_poly("t^2 - 2"))
        A2 = make_algebra(quartic, [], [0, 3])
        assert admissible_signatures(A2, E2) == [(1, 0)]


# -------------------------------------------------------------------------
# Randomized comparison against exhaustive search
# -------------------------------------------------------------------------

TOWERS = [
    ("Q", "golden", ""),
    ("Q", "gaussian", ""),
    ("Q", "cyclic-cubic", ""),
    ("Q", "pure-cubic", ""),
    ("golden", "quartic-cyclic", "t^2 - 2"),
]
SEARCH_BOUND = 60


def _silent(K0, E, place):
    """True when the one-place algebra at ``place`` becomes split over the top field."""
    try:
        return base_change(QuaternionAlgebra(K0, frozenset({place})), E).is_split()
    except OddRamificationError:
        return False


def _exhaustive_exists(A, E):
    """Brute force over quaternion algebras of the base field.

    Candidates are the even sets of base places drawn from the places above
    the primes of Ram(A) and the real places, completed when needed by one
    place above another prime below the bound. Ramification after base
    change is local, so an outside place either ramifies above a prime
    missing from Ram(A) or adds nothing; one silent place then stands in
    for any other.
    """
    K0 = E.base
    primes = set(A.ramified_primes)
    core = [w for p in sorted(primes) for w in decompose_prime(K0, p).places]
    core += real_places(K0)
    silent = [
        w for p in primerange(2, SEARCH_BOUND)
        if p not in primes and p not in E.top.unresolved_primes
        for w in decompose_prime(K0, p).places
        if _silent(K0, E, w)
    ]
    for size in range(len(core) + 1):
        for chosen in itertools.combinations(core, size):
            support = list(chosen)
            if size % 2:
                if not silent:
                    continue
                support.append(silent[0])
            B = QuaternionAlgebra(
                K0,
                frozenset(w for w in support if isinstance(w, FinitePlace)),
                frozenset(w for w in support if not isinstance(w, FinitePlace)),
            )
            if base_change(B, E) == A:
                return True
    return False


def _random_algebra(rng, K):
    candidates = [w for p in primerange(2, 31) if p not in K.unresolved_primes
                  for w in decompose_prime(K, p).places]
    candidates += [v for v in infinite_places(K) if v.is_real]
    chosen = [w for w in candidates if rng.random() < 0.15]
    if len(chosen) % 2:
        chosen.pop()
    finite = frozenset(w for w in chosen if isinstance(w, FinitePlace))
    infinite = frozenset(w for w in chosen if not isinstance(w, FinitePlace))
    return QuaternionAlgebra(K, finite, infinite)


@pytest.mark.slow
def test_criterion_matches_exhaustive_search(corpus):
    """Test 200 random instances: Exists iff an exhaustive search finds B."""
    rng = random.Random(20240601)
    embeddings = []
    for base, top, image in TOWERS:
        K0 = corpus.field(base)
        K = corpus.field(top)
        embeddings.append(verify_embedding(K0, K, parse_poly(image or "0")))
    for _ in range(200):
        E = rng.choice(embeddings)
        A = _random_algebra(rng, E.top)
        result = embedding_criterion(A, E, prime_bound=SEARCH_BOUND)
        assert result.exists == _exhaustive_exists(A, E), f"{A} over {E}"
        if result.witness is not None:
            assert base_change(result.witness, E) == A
