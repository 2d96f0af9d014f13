"""Bundled field corpus and problem-spec resolution."""

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from .classify import SplittingTypeCertificate, SubfieldInput
from .errors import QuatlatError, SpecError
from .exact import Poly
from .numfield import RATIONALS, NumberField, decompose_prime, make_field
from .quat import QuaternionAlgebra, base_change, make_algebra
from .relext import (
    AutomorphismGroup,
    SubfieldEmbedding,
    verify_automorphisms,
    verify_embedding,
)
from .schema import (
    RATIONALS_LABEL,
    AlgebraModel,
    CorpusEntryModel,
    FieldModel,
    ProblemSpec,
    parse_problem,
)
from .utils import parse_poly, poly_from_strings

logger = logging.getLogger(__name__)

DATA_DIR = Path(__file__).parent / "data"
BUNDLED_CORPUS = DATA_DIR / "corpus"
BUNDLED_SPECS = DATA_DIR / "specs"


@dataclass
class CorpusEntry:
    label: str
    field: NumberField
    provenance: str
    automorphisms: Optional[AutomorphismGroup] = None
    subfields: List[SubfieldEmbedding] = field(default_factory=list)
    split_primes: List[int] = field(default_factory=list)


class Corpus:
    """Fields stored as JSON files, one per label.

    Known facts recorded in an entry are re-verified when it is loaded.
    """

    def __init__(self, corpus_dir: Optional[str] = None):
        """Initialize the corpus.

        Args:
            corpus_dir: Directory of ``*.json`` entries (defaults to the bundled corpus)
        """
        self.corpus_dir = Path(corpus_dir) if corpus_dir else BUNDLED_CORPUS
        self._cache: Dict[str, CorpusEntry] = {}
        if not self.corpus_dir.is_dir():
            raise SpecError(f"corpus directory {self.corpus_dir} does not exist")

    def _read(self, path: Path) -> CorpusEntryModel:
        try:
            with open(path, "r", encoding="utf-8") as f:
                return CorpusEntryModel.model_validate(json.load(f))
        except (json.JSONDecodeError, ValidationError) as e:
            raise SpecError(f"invalid corpus entry: {e}", str(path)) from e

    def _models(self) -> Dict[str, CorpusEntryModel]:
        models = {}
        for path in sorted(self.corpus_dir.glob("*.json")):
            model = self._read(path)
            models[model.label] = model
        return models

    def list_entries(self) -> List[Dict[str, Any]]:
        """Labels, degrees and provenance of every entry, without verification."""
        return [
            {"label": m.label, "degree": len(m.poly) - 1, "provenance": m.provenance}
            for m in self._models().values()
        ]

    def labels(self) -> List[str]:
        return list(self._models())

    def load(self, label: str) -> CorpusEntry:
        """Load and verify one entry.

        Raises:
            SpecError: unknown label or a known fact that does not hold
        """
        if label in self._cache:
            return self._cache[label]
        models = self._models()
        if label not in models:
            raise SpecError(f"unknown corpus label {label!r}", str(self.corpus_dir))
        model = models[label]
        K = make_field(poly_from_strings(model.poly), model.label)
        entry = CorpusEntry(model.label, K, model.provenance)
        known = model.known
        where = f"{self.corpus_dir}/{label}"
        if known.signature is not None and list(K.signature) != known.signature:
            raise SpecError(f"signature {K.signature} != recorded {known.signature}", where)
        if known.ramified_primes is not None and K.ramified_primes != sorted(known.ramified_primes):
            raise SpecError(
                f"ramified primes {K.ramified_primes} != recorded {known.ramified_primes}", where)
        try:
            if known.automorphisms:
                entry.automorphisms = verify_automorphisms(
                    K, [poly_from_strings(h) for h in known.automorphisms])
            for sub in known.subfields:
                K0 = self.field(sub.base)
                entry.subfields.append(verify_embedding(K0, K, poly_from_strings(sub.image)))
        except QuatlatError as e:
            raise SpecError(str(e), where) from e
        for p in known.split_primes:
            if decompose_prime(K, p).splitting_type != (1,) * K.degree:
                raise SpecError(f"{p} does not split completely", where)
        entry.split_primes = list(known.split_primes)
        self._cache[label] = entry
        logger.info("Loaded corpus entry %s (%s)", label, model.provenance)
        return entry

    def field(self, label: str) -> NumberField:
        if label == RATIONALS_LABEL:
            return RATIONALS
        return self.load(label).field


def bundled_spec(name: str) -> Path:
    """Path of a bundled problem spec, with or without the .json suffix."""
    path = BUNDLED_SPECS / (name if name.endswith(".json") else f"{name}.json")
    if not path.is_file():
        raise SpecError(f"no bundled spec {name!r}", str(BUNDLED_SPECS))
    return path


@dataclass
class Problem:
    """A problem spec with every reference resolved to verified objects."""

    fields: Dict[str, NumberField]
    algebra: QuaternionAlgebra
    subfields: List[SubfieldInput]
    prime_bound: Optional[int]
    seed: Optional[int]


class _Resolver:
    def __init__(self, spec: ProblemSpec, corpus: Corpus, source: str):
        self.spec = spec
        self.corpus = corpus
        self.source = source
        self.fields: Dict[str, NumberField] = {RATIONALS_LABEL: RATIONALS}
        self.embeddings: Dict[str, SubfieldEmbedding] = {}
        self.groups: Dict[str, AutomorphismGroup] = {}

    def fail(self, message: str, location: str) -> SpecError:
        return SpecError(message, f"{self.source}:{location}")

    def field(self, label: str, location: str) -> NumberField:
        if label not in self.fields:
            try:
                self.fields[label] = self.corpus.field(label)
            except SpecError as e:
                raise self.fail(f"unresolved field reference {label!r}", location) from e
        return self.fields[label]

    def define_field(self, model: FieldModel, location: str) -> None:
        try:
            poly: Poly = (parse_poly(model.poly) if isinstance(model.poly, str)
                          else poly_from_strings(model.poly))
            self.fields[model.label] = make_field(poly, model.label, model.assume_irreducible)
        except QuatlatError as e:
            raise self.fail(str(e), location) from e

    def group(self, label: str) -> Optional[AutomorphismGroup]:
        if label in self.groups:
            return self.groups[label]
        images = self.spec.automorphisms.get(label)
        if images is None:
            if label == RATIONALS_LABEL:
                return None
            try:
                return self.corpus.load(label).automorphisms
            except SpecError:
                return None
        K = self.field(label, f"automorphisms.{label}")
        try:
            group = verify_automorphisms(K, [poly_from_strings(h) for h in images])
        except QuatlatError as e:
            raise self.fail(str(e), f"automorphisms.{label}") from e
        self.groups[label] = group
        return group

    def embedding(self, base: str, top: str, image: Sequence[str],
                  location: str) -> SubfieldEmbedding:
        K0 = self.field(base, f"{location}.base")
        K = self.field(top, f"{location}.top")
        try:
            return verify_embedding(K0, K, poly_from_strings(image))
        except QuatlatError as e:
            raise self.fail(str(e), location) from e

    def algebra(self, model: AlgebraModel, location: str) -> QuaternionAlgebra:
        K = self.field(model.field, f"{location}.field")
        try:
            finite = [(int(ref.p), ref.factor_index) for ref in model.ram_finite]
            finite += [w for p in model.ram_primes for w in decompose_prime(K, int(p)).places]
            B = make_algebra(K, finite, model.ram_real)
            if model.base_change_of is None:
                return B
        except (QuatlatError, IndexError) as e:
            raise self.fail(str(e), location) from e
        inner = self.algebra(model.base_change_of, f"{location}.base_change_of")
        if model.via is not None:
            if model.via not in self.embeddings:
                raise self.fail(f"unresolved embedding {model.via!r}", f"{location}.via")
            E = self.embeddings[model.via]
        elif inner.field == RATIONALS:
            E = verify_embedding(RATIONALS, K, Poly())
        else:
            raise self.fail("base change needs 'via' unless the base is Q", location)
        if E.base != inner.field or E.top != K:
            raise self.fail("embedding does not connect the two fields", location)
        try:
            extended = base_change(inner, E)
        except QuatlatError as e:
            raise self.fail(str(e), location) from e
        return QuaternionAlgebra(K, B.ram_finite ^ extended.ram_finite,
                                 B.ram_infinite ^ extended.ram_infinite)

    def resolve(self) -> Problem:
        for i, model in enumerate(self.spec.fields):
            self.define_field(model, f"fields.{i}")
        subfields: List[SubfieldInput] = []
        for i, model in enumerate(self.spec.embeddings):
            location = f"embeddings.{i}"
            E = self.embedding(model.base, model.top, model.image, location)
            label = model.label or model.base
            self.embeddings[label] = E
            certificate = None
            if model.certificate is not None:
                certificate = SplittingTypeCertificate(
                    frozenset(tuple(sorted(kind)) for kind in model.certificate.allowed),
                    model.certificate.sample_bound,
                    model.certificate.asserted_by_user,
                )
            subfields.append(SubfieldInput(
                E,
                group=self.group(model.base),
                certificate=certificate,
                relative_autos=[poly_from_strings(h) for h in model.relative_automorphisms],
                label=label,
            ))
        A = self.algebra(self.spec.algebra, "algebra")
        for item in subfields:
            if item.embedding.top != A.field:
                raise self.fail(f"embedding {item.label} does not land in {A.field.label}",
                                "embeddings")
        return Problem(self.fields, A, subfields, self.spec.prime_bound, self.spec.seed)


def resolve_problem(spec: ProblemSpec, corpus: Optional[Corpus] = None,
                    source: str = "<spec>") -> Problem:
    """Resolve references and verify every embedding, group and algebra.

    Raises:
        SpecError: with a location inside the document
    """
    return _Resolver(spec, corpus or Corpus(), source).resolve()


def load_problem(path: str, corpus: Optional[Corpus] = None) -> Problem:
    """Read, validate and resolve a problem-spec file.

    Raises:
        SpecError: unreadable file, schema violation or unresolved reference
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise SpecError(f"cannot read spec: {e.strerror}", path) from e
    return resolve_problem(parse_problem(text, path), corpus, path)
