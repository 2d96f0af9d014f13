"""Tests for the bundled corpus and problem-spec loading."""

import json

import pytest

from quatlat.corpus import Corpus, bundled_spec, load_problem, resolve_problem
from quatlat.errors import SpecError
from quatlat.schema import parse_problem, problem_json_schema, report_json_schema

CORPUS_LABELS = [
    "a5-sextic",
    "cyclic-cubic",
    "cyclic-quintic",
    "gaussian",
    "golden",
    "pure-cubic",
    "quartic-cyclic",
    "sqrt5",
]


def _write_entry(directory, label, **known):
    entry = {"label": label, "poly": ["-1", "-1", "1"], "provenance": "test", "known": known}
    (directory / f"{label}.json").write_text(json.dumps(entry), encoding="utf-8")


class TestCorpus:
    """Test cases for Corpus."""

    def test_labels(self, corpus):
        assert sorted(corpus.labels()) == CORPUS_LABELS

    @pytest.mark.parametrize("label", CORPUS_LABELS)
    def test_every_entry_verifies(self, corpus, label):
        """Test that every recorded fact is re-verified on load."""
        entry = corpus.load(label)
        assert entry.field.label == label
        assert entry.provenance

    def test_list_entries(self, corpus):
        entries = {e["label"]: e for e in corpus.list_entries()}
        assert entries["a5-sextic"]["degree"] == 6
        assert entries["golden"]["degree"] == 2

    def test_automorphisms_are_closed(self, corpus):
        entry = corpus.load("cyclic-cubic")
        assert entry.automorphisms.order == 3
        assert entry.split_primes == [17, 19]

    def test_quartic_subfields(self, corpus, golden):
        entry = corpus.load("quartic-cyclic")
        assert entry.automorphisms.order == 4
        assert [E.base.label for E in entry.subfields] == ["golden", "sqrt5"]
        assert entry.subfields[0].base == golden

    def test_unknown_label(self, corpus):
        with pytest.raises(SpecError):
            corpus.load("no-such-field")

    def test_wrong_recorded_fact(self, tmp_path):
        """Test that a wrong ramified-prime list is rejected with its location."""
        _write_entry(tmp_path, "bad", ramified_primes=[2])
        with pytest.raises(SpecError) as info:
            Corpus(str(tmp_path)).load("bad")
        assert "bad" in info.value.location

    def test_wrong_split_prime(self, tmp_path):
        _write_entry(tmp_path, "bad-split", split_primes=[7])
        with pytest.raises(SpecError):
            Corpus(str(tmp_path)).load("bad-split")

    def test_valid_custom_entry(self, tmp_path):
        _write_entry(tmp_path, "phi", ramified_primes=[5], signature=[2, 0], split_primes=[11])
        assert Corpus(str(tmp_path)).field("phi").disc_defining == 5

    def test_missing_directory(self, tmp_path):
        with pytest.raises(SpecError):
            Corpus(str(tmp_path / "absent"))


class TestProblemSpecs:
    """Test cases for problem-spec parsing and resolution."""

    @pytest.mark.parametrize("name", [
        "a5_S23", "cubic_tau", "quad_sqrt5", "cyclic_quintic", "quartic_tower",
    ])
    def test_bundled_specs_resolve(self, corpus, name):
        problem = load_problem(str(bundled_spec(name)), corpus)
        assert not problem.algebra.is_split()
        assert problem.subfields

    def test_a5_spec(self, corpus):
        problem = load_problem(str(bundled_spec("a5_S23")), corpus)
        assert problem.algebra.field.label == "a5-sextic"
        assert problem.algebra.ramified_primes == [2, 3]
        (item,) = problem.subfields
        assert item.certificate is not None
        assert item.certificate.sample_bound == 1000
        assert not item.certificate.asserted_by_user

    def test_invalid_json_location(self):
        with pytest.raises(SpecError) as info:
            parse_problem('{"algebra": ', "broken.json")
        assert info.value.location.startswith("broken.json:1:")

    def test_schema_violation_location(self):
        with pytest.raises(SpecError) as info:
            parse_problem(json.dumps({"embeddings": []}), "missing.json")
        assert info.value.location == "missing.json:algebra"

    def test_unknown_keys_are_rejected(self):
        with pytest.raises(SpecError):
            parse_problem(json.dumps({"algebra": {"field": "Q"}, "colour": "red"}))

    def test_inline_field(self, corpus):
        spec = parse_problem(json.dumps({
            "fields": [{"label": "k", "poly": "t^2 + 1"}],
            "embeddings": [{"base": "Q", "top": "k"}],
            "algebra": {"field": "k", "ram_primes": ["5"]},
        }))
        problem = resolve_problem(spec, corpus)
        assert problem.algebra.labels() == ["5.0", "5.1"]
        assert problem.subfields[0].embedding.relative_degree == 2

    def test_unresolved_field_reference(self, corpus):
        spec = parse_problem(json.dumps({"algebra": {"field": "nowhere"}}))
        with pytest.raises(SpecError) as info:
            resolve_problem(spec, corpus, "ref.json")
        assert "unresolved field reference" in info.value.message
        assert info.value.location == "ref.json:algebra.field"

    def test_odd_ramification_location(self, corpus):
        spec = parse_problem(json.dumps({
            "algebra": {"field": "cyclic-cubic", "ram_primes": ["17"]},
        }))
        with pytest.raises(SpecError) as info:
            resolve_problem(spec, corpus, "odd.json")
        assert info.value.location == "odd.json:algebra"

    def test_bad_embedding_location(self, corpus):
        spec = parse_problem(json.dumps({
            "embeddings": [{"base": "golden", "top": "quartic-cyclic", "image": ["0", "0", "1"]}],
            "algebra": {"field": "quartic-cyclic"},
        }))
        with pytest.raises(SpecError) as info:
            resolve_problem(spec, corpus, "emb.json")
        assert info.value.location == "emb.json:embeddings.0"

    def test_missing_spec_file(self, tmp_path):
        with pytest.raises(SpecError) as info:
            load_problem(str(tmp_path / "nope.json"))
        assert "cannot read spec" in info.value.message

    def test_json_schemas(self):
        assert "algebra" in problem_json_schema()["properties"]
        assert "subfields" in report_json_schema()["properties"]
