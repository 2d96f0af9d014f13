"""Tool catalogue shared by the command line and the MCP server."""

import json
import logging
from typing import Any, Dict, List, Optional, Sequence

from mcp.types import CallToolResult, TextContent, Tool

from .classify import (
    DEFAULT_PRIME_BOUND,
    degree_formula,
    full_sublattice_report,
)
from .corpus import Corpus, bundled_spec, load_problem
from .errors import QuatlatError, SpecError
from .numfield import NumberField, decompose_prime, infinite_places, make_field
from .relext import DEFAULT_REFINE_CAP
from .report import render_json, render_text
from .reproduce import run_target
from .utils import parse_poly

logger = logging.getLogger(__name__)


# -------------------------------------------------------------------------
# Handlers (plain functions, also used by the CLI)
# -------------------------------------------------------------------------

def resolve_field(corpus: Corpus, label: Optional[str] = None,
                  poly: Optional[str] = None) -> NumberField:
    """A corpus field by label, or a field defined by a polynomial string."""
    if poly:
        return make_field(parse_poly(poly), label or "")
    if label:
        return corpus.field(label)
    raise SpecError("either a label or a polynomial is required")


def decomposition_info(K: NumberField, p: int, seed: int = 0) -> Dict[str, Any]:
    decomposition = decompose_prime(K, p, seed)
    return {
        "p": p,
        "type": list(decomposition.splitting_type),
        "ramified": decomposition.is_ramified,
        "places": [
            {"label": w.label, "e": w.e, "f": w.f, "factor": str(w.local_factor)}
            for w in decomposition.places
        ],
    }


def field_info(corpus: Corpus, label: Optional[str] = None, poly: Optional[str] = None,
               primes: Sequence[int] = (), seed: int = 0) -> Dict[str, Any]:
    K = resolve_field(corpus, label, poly)
    info: Dict[str, Any] = {
        "label": K.label,
        "poly": K.poly.format("t"),
        "degree": K.degree,
        "signature": list(K.signature),
        "discriminant": K.disc_defining,
        "ramified_primes": K.ramified_primes,
        "unresolved_primes": K.unresolved_primes,
        "irreducibility": K.irreducibility,
        "infinite_places": [v.label for v in infinite_places(K)],
    }
    decompositions = []
    for p in primes:
        try:
            decompositions.append(decomposition_info(K, p, seed))
        except QuatlatError as e:
            decompositions.append({"p": p, "error": str(e)})
    if decompositions:
        info["decompositions"] = decompositions
    return info


def field_factor(corpus: Corpus, p: int, label: Optional[str] = None,
                 poly: Optional[str] = None, seed: int = 0) -> Dict[str, Any]:
    K = resolve_field(corpus, label, poly)
    return {"label": K.label, **decomposition_info(K, p, seed)}


def classify_spec(corpus: Corpus, spec: str, prime_bound: Optional[int] = None,
                  seed: Optional[int] = None, workers: int = 1,
                  refine_cap: int = DEFAULT_REFINE_CAP,
                  default_prime_bound: int = DEFAULT_PRIME_BOUND, default_seed: int = 0):
    """Load a problem spec (a path or a bundled spec name) and classify it.

    Explicit arguments win over the values stored in the spec, which win
    over the defaults.
    """
    try:
        problem = load_problem(spec, corpus)
    except SpecError as e:
        if "cannot read spec" not in e.message:
            raise
        problem = load_problem(str(bundled_spec(spec)), corpus)
    bound = prime_bound or problem.prime_bound or default_prime_bound
    chosen_seed = next(s for s in (seed, problem.seed, default_seed) if s is not None)
    return full_sublattice_report(problem.algebra, problem.subfields, bound,
                                  chosen_seed, workers, refine_cap)


def degree_formula_text(a: int, b: int, c: int, d: int, r_values: Sequence[int]) -> str:
    value = degree_formula(a, b, c, d, r_values)
    return (f"(2b + a + sum r) / (2d + c + #Ram_inf) = "
            f"({2 * b + a + sum(r_values)}) / ({2 * d + c + len(r_values)}) = {value}")


# -------------------------------------------------------------------------
# MCP surface
# -------------------------------------------------------------------------

_FIELD_PROPERTIES = {
    "label": {"type": "string", "description": "Corpus label (e.g. 'a5-sextic')"},
    "poly": {"type": "string", "description": "Polynomial such as 't^2-t-1'"},
}


class ClassifierTools:
    """Implementation of MCP tools for the classifier."""

    def __init__(self, config: Dict[str, Any]):
        """Initialize tools with configuration.

        Args:
            config: Configuration dictionary from :func:`quatlat.config.load_config`
        """
        self.config = config
        self.corpus = Corpus(config.get("corpus_dir"))

    def get_tools(self) -> List[Tool]:
        """Get list of available MCP tools.

        Returns:
            List of Tool objects
        """
        return [
            Tool(
                name="field_info",
                description="Signature, discriminant, ramified primes and optional "
                            "prime decompositions of a number field",
                inputSchema={
                    "type": "object",
                    "properties": {
                        **_FIELD_PROPERTIES,
                        "primes": {
                            "type": "array",
                            "items": {"type": "integer", "minimum": 2},
                            "description": "Primes to decompose",
                        },
                    },
                },
            ),
            Tool(
                name="field_factor",
                description="Decomposition of a prime p in a number field",
                inputSchema={
                    "type": "object",
                    "properties": {
                        **_FIELD_PROPERTIES,
                        "p": {"type": "integer", "minimum": 2},
                    },
                    "required": ["p"],
                },
            ),
            Tool(
                name="classify",
                description="Classify commensurability classes of arithmetic sublattices "
                            "for a problem spec (file path or bundled spec name)",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "spec": {"type": "string", "description": "Spec path or bundled name"},
                        "prime_bound": {"type": "integer", "minimum": 2},
                        "seed": {"type": "integer"},
                        "json": {"type": "boolean", "default": False},
                    },
                    "required": ["spec"],
                },
            ),
            Tool(
                name="reproduce",
                description="Run a scripted check of a headline result",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "target": {"type": "string", "enum": ["a5", "cyclic", "kleinian-degree"]},
                        "n": {"type": "integer", "enum": [3, 5], "default": 3},
                        "primes": {"type": "array", "items": {"type": "integer"},
                                   "description": "Even set S of primes below 50 for a5"},
                    },
                    "required": ["target"],
                },
            ),
            Tool(
                name="degree_formula",
                description="Evaluate (2b + a + sum r) / (2d + c + #Ram_inf) exactly",
                inputSchema={
                    "type": "object",
                    "properties": {
                        "a": {"type": "integer", "minimum": 0},
                        "b": {"type": "integer", "minimum": 0},
                        "c": {"type": "integer", "minimum": 0},
                        "d": {"type": "integer", "minimum": 0},
                        "r_values": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    },
                    "required": ["a", "b", "c", "d"],
                },
            ),
            Tool(
                name="corpus_list",
                description="List the fields of the corpus with provenance",
                inputSchema={"type": "object", "properties": {}},
            ),
        ]

    async def call_tool(self, name: str, arguments: Dict[str, Any]) -> CallToolResult:
        """Call a specific tool with arguments.

        Args:
            name: Tool name
            arguments: Tool arguments

        Returns:
            Tool execution result
        """
        try:
            if name == "field_info":
                text = json.dumps(field_info(
                    self.corpus, arguments.get("label"), arguments.get("poly"),
                    arguments.get("primes", []), self.config.get("seed", 0)), indent=2)
            elif name == "field_factor":
                text = json.dumps(field_factor(
                    self.corpus, int(arguments["p"]), arguments.get("label"),
                    arguments.get("poly"), self.config.get("seed", 0)), indent=2)
            elif name == "classify":
                report = classify_spec(
                    self.corpus, arguments["spec"],
                    arguments.get("prime_bound"), arguments.get("seed"),
                    self.config.get("workers", 1),
                    self.config.get("refine_cap", DEFAULT_REFINE_CAP),
                    self.config.get("prime_bound", DEFAULT_PRIME_BOUND),
                    self.config.get("seed", 0))
                text = render_json(report) if arguments.get("json") else render_text(report)
            elif name == "reproduce":
                text = str(run_target(arguments["target"], self.corpus,
                                      int(arguments.get("n", 3)),
                                      self.config.get("prime_bound", DEFAULT_PRIME_BOUND),
                                      self.config.get("seed", 0),
                                      arguments.get("primes")))
            elif name == "degree_formula":
                text = degree_formula_text(
                    arguments["a"], arguments["b"], arguments["c"], arguments["d"],
                    arguments.get("r_values", []))
            elif name == "corpus_list":
                text = json.dumps(self.corpus.list_entries(), indent=2)
            else:
                return CallToolResult(
                    content=[TextContent(type="text", text=f"Unknown tool: {name}")]
                )
        except (QuatlatError, KeyError, ValueError) as e:
            logger.error(f"Tool execution failed for {name}: {e}")
            return CallToolResult(
                content=[TextContent(type="text", text=f"Error executing {name}: {e}")],
                isError=True,
            )
        return CallToolResult(content=[TextContent(type="text", text=text)])
