"""Pydantic models for every JSON document quatlat reads or writes."""

import json
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import SpecError

RATIONALS_LABEL = "Q"


def _check_rational(text: str) -> str:
    parts = text.strip().split("/")
    if len(parts) > 2 or not all(p.strip().lstrip("+-").isdigit() for p in parts):
        raise ValueError(f"{text!r} is not an integer or a/b rational")
    if len(parts) == 2 and int(parts[1]) == 0:
        raise ValueError(f"{text!r} has a zero denominator")
    return text.strip()


class FieldModel(BaseModel):
    """A number field: ascending coefficient strings or a polynomial string."""

    model_config = ConfigDict(extra="forbid")

    label: str
    poly: Union[List[str], str]
    assume_irreducible: bool = False

    @field_validator("poly")
    @classmethod
    def _coefficients(cls, value: Union[List[str], str]) -> Union[List[str], str]:
        if isinstance(value, list):
            if len(value) < 2:
                raise ValueError("a defining polynomial needs degree >= 1")
            return [_check_rational(c) for c in value]
        return value


class PlaceRef(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p: str
    factor_index: int = Field(ge=0)

    @field_validator("p")
    @classmethod
    def _prime_text(cls, value: str) -> str:
        if not value.isdigit():
            raise ValueError(f"{value!r} is not a positive integer")
        return value


class AlgebraModel(BaseModel):
    """Ramification data over ``field``.

    ``ram_primes`` ramifies every place above each listed prime.
    ``base_change_of`` defines the algebra as the base change of another
    algebra along the embedding named by ``via`` (or the structure map of Q).
    """

    model_config = ConfigDict(extra="forbid")

    field: str
    ram_finite: List[PlaceRef] = Field(default_factory=list)
    ram_primes: List[str] = Field(default_factory=list)
    ram_real: List[int] = Field(default_factory=list)
    base_change_of: Optional["AlgebraModel"] = None
    via: Optional[str] = None


class CertificateModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    allowed: List[List[int]]
    sample_bound: int = Field(default=0, ge=0)
    asserted_by_user: bool = True

    @field_validator("allowed")
    @classmethod
    def _nonempty_types(cls, value: List[List[int]]) -> List[List[int]]:
        if not value or any(not kind or min(kind) < 1 for kind in value):
            raise ValueError("allowed types must be nonempty lists of positive degrees")
        return value


class EmbeddingModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    label: Optional[str] = None
    base: str
    top: str
    image: List[str] = Field(default_factory=list)
    relative_automorphisms: List[List[str]] = Field(default_factory=list)
    certificate: Optional[CertificateModel] = None

    @field_validator("image")
    @classmethod
    def _image_coefficients(cls, value: List[str]) -> List[str]:
        return [_check_rational(c) for c in value]


class ProblemSpec(BaseModel):
    """One classification problem: fields, subfields, the algebra and limits."""

    model_config = ConfigDict(extra="forbid")

    fields: List[FieldModel] = Field(default_factory=list)
    automorphisms: Dict[str, List[List[str]]] = Field(default_factory=dict)
    embeddings: List[EmbeddingModel] = Field(default_factory=list)
    algebra: AlgebraModel
    prime_bound: Optional[int] = Field(default=None, ge=2)
    seed: Optional[int] = None


class KnownSubfield(BaseModel):
    model_config = ConfigDict(extra="forbid")

    base: str
    image: List[str]


class KnownFacts(BaseModel):
    model_config = ConfigDict(extra="forbid")

    signature: Optional[List[int]] = None
    ramified_primes: Optional[List[int]] = None
    automorphisms: List[List[str]] = Field(default_factory=list)
    subfields: List[KnownSubfield] = Field(default_factory=list)
    split_primes: List[int] = Field(default_factory=list)


class CorpusEntryModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    label: str
    poly: List[str]
    provenance: str
    known: KnownFacts = Field(default_factory=KnownFacts)


# -------------------------------------------------------------------------
# Reports
# -------------------------------------------------------------------------

class ClassModel(BaseModel):
    subfield: str
    degree: int
    signature: List[int]
    ramification: List[str]
    trivial: bool = False
    immersed_subspaces: str = "infinitely many"


class SignatureModel(BaseModel):
    signature: List[int]
    status: str
    count: Optional[int]
    representatives: List[ClassModel]
    search_bound: Optional[int] = None
    reason: str = ""


class SubfieldReportModel(BaseModel):
    subfield: str
    degree: int
    status: str
    criterion: Optional[str] = None
    certification: Optional[str] = None
    forced: List[str] = Field(default_factory=list)
    free: List[str] = Field(default_factory=list)
    twist_witnesses: List[str] = Field(default_factory=list)
    admissible_signatures: List[List[int]] = Field(default_factory=list)
    screen: Optional[Dict[str, bool]] = None
    signatures: List[SignatureModel] = Field(default_factory=list)
    unresolved_primes: List[int] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)
    error: Optional[str] = None


class ReportModel(BaseModel):
    field: str
    algebra: List[str]
    signature: List[int]
    cocompact: bool
    status: str
    prime_bound: int
    total_with_trivial: Optional[int]
    total_positive_codimension: Optional[int]
    trivial: ClassModel
    subfields: List[SubfieldReportModel]


AlgebraModel.model_rebuild()


def _location(error: dict) -> str:
    return ".".join(str(part) for part in error.get("loc", ()))


def parse_problem(text: str, source: str = "<spec>") -> ProblemSpec:
    """Validate a problem-spec document.

    Raises:
        SpecError: invalid JSON or a schema violation, with its location
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(f"invalid JSON: {e.msg}", f"{source}:{e.lineno}:{e.colno}") from e
    try:
        return ProblemSpec.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise SpecError(f"{first['msg']} ({len(e.errors())} errors)",
                        f"{source}:{_location(first)}") from e


def problem_json_schema() -> dict:
    return ProblemSpec.model_json_schema()


def report_json_schema() -> dict:
    return ReportModel.model_json_schema()
