"""Tests for subfield embeddings, place matching and automorphisms."""

import pytest
from sympy import primerange

from quatlat.errors import (
    DegreeMismatchError,
    MatchAmbiguousError,
    NotAnEmbeddingError,
    NotAutomorphismError,
)
from quatlat.exact import Poly
from quatlat.numfield import decompose_prime, infinite_places, make_field
from quatlat.relext import (
    arch_stats,
    identity_embedding,
    is_relatively_galois,
    match_finite_places,
    match_infinite_places,
    place_permutation,
    verify_automorphisms,
    verify_embedding,
)
from quatlat.utils import parse_poly


@pytest.fixture
def golden_i(golden):
    """The golden field inside Q(sqrt5, i) = Q[t]/(t^4 + 3t^2 + 1), phi -> -(t^2 + 1)."""
    K = make_field(parse_poly("t^4 + 3t^2 + 1"), "golden-i", assume_irreducible=True)
    return verify_embedding(golden, K, parse_poly("-t^2 - 1"))


class TestEmbeddings:
    """Test cases for verify_embedding."""

    def test_golden_into_quartic(self, golden, quartic):
        E = verify_embedding(golden, quartic, parse_poly("t^2 - 2"))
        assert E.relative_degree == 2
        assert not E.is_identity

    def test_image_is_reduced(self, golden, quartic):
        """Test that an image of degree >= 4 is reduced modulo the quartic."""
        E = verify_embedding(golden, quartic, parse_poly("t^4 - 4t^2 + 3"))
        assert E.image == parse_poly("t^2 - 2")

    def test_not_an_embedding(self, golden, quartic):
        with pytest.raises(NotAnEmbeddingError):
            verify_embedding(golden, quartic, parse_poly("t^2"))

    def test_degree_mismatch(self, golden, cyclic_cubic):
        with pytest.raises(DegreeMismatchError):
            verify_embedding(golden, cyclic_cubic, parse_poly("t"))

    def test_from_rationals(self, from_rationals, a5_sextic):
        E = from_rationals(a5_sextic)
        assert E.relative_degree == 6
        assert E.image == Poly()

    def test_identity(self, golden):
        assert identity_embedding(golden).is_identity


class TestFinitePlaceMatching:
    """Test cases for match_finite_places."""

    def test_split_prime_in_cyclic_cubic(self, from_rationals, cyclic_cubic):
        matches = match_finite_places(from_rationals(cyclic_cubic), 17)
        assert len(matches) == 1
        assert [fiber.local_degree for fiber in matches[0].fibers] == [1, 1, 1]
        assert len(matches[0].odd_places) == 3

    def test_a5_fibers_above_293(self, from_rationals, a5_sextic):
        """Test that only the two unramified places above 293 have odd degree."""
        (match,) = match_finite_places(from_rationals(a5_sextic), 293)
        assert match.total_degree() == 6
        assert sorted(w.local_degree for w in match.odd_places) == [1, 1]

    def test_relative_quadratic(self, golden, quartic):
        """Test fibers over each place of the golden field above 11."""
        E = verify_embedding(golden, quartic, parse_poly("t^2 - 2"))
        matches = match_finite_places(E, 11)
        assert len(matches) == 2
        assert {m.base_place for m in matches} == set(decompose_prime(golden, 11).places)
        for match in matches:
            assert match.total_degree() == 2

    def test_ramified_relative_prime(self, golden, quartic):
        """Test that 2 is inert in the golden field and ramifies above it."""
        E = verify_embedding(golden, quartic, parse_poly("t^2 - 2"))
        (match,) = match_finite_places(E, 2)
        assert [fiber.local_degree for fiber in match.fibers] == [2]
        assert match.odd_places == []

    def test_local_degrees_multiply_in_a_tower(self, golden, quartic):
        """Test [K_w : Q_p] = [K_w : K0_v] * [K0_v : Q_p] for Q in golden in quartic."""
        E = verify_embedding(golden, quartic, parse_poly("t^2 - 2"))
        skip = set(quartic.unresolved_primes) | set(golden.unresolved_primes)
        for p in primerange(2, 100):
            if p in skip:
                continue
            for match in match_finite_places(E, p):
                v = match.base_place
                for fiber in match.fibers:
                    w = fiber.place
                    assert w.e % v.e == 0 and w.f % v.f == 0
                    assert w.local_degree == fiber.local_degree * v.local_degree

    @pytest.mark.parametrize("label", [
        "golden", "gaussian", "cyclic-cubic", "cyclic-quintic", "quartic-cyclic",
    ])
    def test_galois_fields_have_equal_local_degrees(self, corpus, label):
        """Test that all places above a prime share e and f in a Galois field."""
        K = corpus.field(label)
        for p in primerange(2, 200):
            if p in K.unresolved_primes:
                continue
            places = decompose_prime(K, p).places
            assert len({(w.e, w.f) for w in places}) == 1, f"{label} at {p}"
            assert places[0].local_degree * len(places) == K.degree


class TestInfinitePlaceMatching:
    """Test cases for match_infinite_places and arch_stats."""

    def test_real_fibers(self, golden, quartic):
        E = verify_embedding(golden, quartic, parse_poly("t^2 - 2"))
        matches = match_infinite_places(E)
        assert [m.base_place.label for m in matches] == ["inf.0", "inf.1"]
        for match in matches:
            assert [fiber.local_degree for fiber in match.fibers] == [1, 1]
        # theta^2 - 2 = 1.618... at the outer roots of the quartic
        outer = {w.label for w in matches[1].places}
        assert outer == {"inf.0", "inf.3"}

    def test_complex_fiber(self, from_rationals, gaussian):
        (match,) = match_infinite_places(from_rationals(gaussian))
        assert [w.label for w in match.places] == ["cpx.0"]
        assert match.odd_places == []

    def test_mixed_fiber(self, from_rationals, pure_cubic):
        (stats,) = arch_stats(from_rationals(pure_cubic))
        assert stats.real_count == 1
        assert stats.complex_count == 1

    def test_every_place_is_matched(self, from_rationals, a5_sextic):
        (match,) = match_infinite_places(from_rationals(a5_sextic))
        assert set(match.places) == set(infinite_places(a5_sextic))

    def test_complex_places_over_real_base(self, golden_i):
        """Test that each real place of the golden field has one complex place above it."""
        matches = match_infinite_places(golden_i)
        assert [m.base_place.label for m in matches] == ["inf.0", "inf.1"]
        for match in matches:
            assert [fiber.local_degree for fiber in match.fibers] == [2]
        # phi = -(theta^2 + 1), so the root of height 0.618 lies over phi = -0.618
        assert [w.label for w in matches[0].places] == ["cpx.0"]

    def test_ambiguous_complex_match_raises(self, monkeypatch, golden_i):
        monkeypatch.setattr("quatlat.relext.MATCH_TOLERANCE", 10.0)
        with pytest.raises(MatchAmbiguousError):
            match_infinite_places(golden_i)


class TestAutomorphisms:
    """Test cases for automorphism verification and Galois certification."""

    def test_cubic_closure(self, cyclic_cubic, cubic_rotation):
        """Test that one generator closes to the cyclic group of order 3."""
        group = verify_automorphisms(cyclic_cubic, [cubic_rotation])
        assert group.order == 3
        assert not group.closed
        assert parse_poly("t^2 - t - 2") in group.elements

    def test_multiplication_table(self, cyclic_cubic, cubic_rotation):
        group = verify_automorphisms(cyclic_cubic, [cubic_rotation])
        table = group.table()
        assert len(table) == 3
        assert all(sorted(row) == [0, 1, 2] for row in table)
        assert table[0] == [0, 1, 2]

    def test_wrong_image_is_rejected(self, cyclic_cubic):
        """Test that t^2 - 2 does not define an automorphism of t^3 - 3t - 1."""
        with pytest.raises(NotAutomorphismError):
            verify_automorphisms(cyclic_cubic, [parse_poly("t^2 - 2")])

    def test_quintic_automorphism(self, cyclic_quintic):
        group = verify_automorphisms(cyclic_quintic, [parse_poly("t^2 - 2")])
        assert group.order == 5

    def test_galois_status(self, from_rationals, cyclic_cubic, pure_cubic, golden,
                           cubic_rotation):
        status = is_relatively_galois(from_rationals(cyclic_cubic), [cubic_rotation])
        assert status.certified and status.order == 3
        assert not is_relatively_galois(from_rationals(pure_cubic)).certified
        assert is_relatively_galois(from_rationals(golden)).certified

    def test_missing_automorphisms_do_not_certify(self, from_rationals, cyclic_cubic):
        status = is_relatively_galois(from_rationals(cyclic_cubic))
        assert not status.certified
        assert str(status) == "NotCertified"

    def test_non_fixing_automorphism_is_ignored(self, golden, quartic):
        """Test that t -> t^3 - 3t moves the golden subfield and is not counted."""
        E = verify_embedding(golden, quartic, parse_poly("t^2 - 2"))
        status = is_relatively_galois(E, [parse_poly("t^3 - 3t")])
        assert status.certified  # degree two
        assert is_relatively_galois(E, [parse_poly("-t")]).order == 2

    def test_rotation_permutes_split_places(self, cyclic_cubic, cubic_rotation):
        """Test that a nontrivial automorphism moves every place above 17."""
        group = verify_automorphisms(cyclic_cubic, [cubic_rotation])
        places = decompose_prime(cyclic_cubic, 17).places
        moved = place_permutation(group, cubic_rotation, places)
        assert set(moved.values()) == set(places)
        assert all(moved[w] != w for w in places)

    def test_identity_fixes_places(self, cyclic_cubic, cubic_rotation):
        group = verify_automorphisms(cyclic_cubic, [cubic_rotation])
        places = decompose_prime(cyclic_cubic, 19).places
        moved = place_permutation(group, parse_poly("t"), places)
        assert all(moved[w] == w for w in places)
