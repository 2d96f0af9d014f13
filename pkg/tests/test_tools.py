"""Tests for the MCP tool catalogue and environment configuration."""

import json

import pytest

from quatlat.config import load_config, validate_environment
from quatlat.server import ClassifierServer
from quatlat.tools import ClassifierTools, degree_formula_text, resolve_field
from quatlat.errors import SpecError


@pytest.fixture
def tools(mock_config):
    return ClassifierTools(mock_config)


class TestClassifierTools:
    """Test cases for ClassifierTools."""

    def test_tool_names(self, tools):
        names = [tool.name for tool in tools.get_tools()]
        assert names == [
            "field_info", "field_factor", "classify", "reproduce", "degree_formula", "corpus_list",
        ]

    async def test_degree_formula(self, tools):
        result = await tools.call_tool("degree_formula", {"a": 0, "b": 1, "c": 1, "d": 0})
        assert not result.isError
        assert result.content[0].text.endswith("= 2")

    async def test_zero_denominator(self, tools):
        result = await tools.call_tool("degree_formula", {"a": 3, "b": 0, "c": 0, "d": 0})
        assert result.isError
        assert result.content[0].text.startswith("Error executing degree_formula:")

    async def test_unknown_tool(self, tools):
        result = await tools.call_tool("summon", {})
        assert result.content[0].text == "Unknown tool: summon"

    async def test_field_info(self, tools):
        result = await tools.call_tool("field_info", {"label": "golden", "primes": [11]})
        info = json.loads(result.content[0].text)
        assert info["signature"] == [2, 0]
        assert info["decompositions"][0]["type"] == [1, 1]

    async def test_field_info_error(self, tools):
        """Test that an invalid field comes back as an error result."""
        result = await tools.call_tool("field_info", {"poly": "2t^2 + 1"})
        assert result.isError

    async def test_missing_argument(self, tools):
        result = await tools.call_tool("field_factor", {"label": "golden"})
        assert result.isError

    async def test_corpus_list(self, tools):
        result = await tools.call_tool("corpus_list", {})
        labels = {entry["label"] for entry in json.loads(result.content[0].text)}
        assert "cyclic-cubic" in labels

    async def test_classify_text(self, tools):
        result = await tools.call_tool("classify", {"spec": "cubic_tau"})
        assert "2 classes (incl. trivial)" in result.content[0].text

    async def test_reproduce(self, tools):
        result = await tools.call_tool("reproduce", {"target": "cyclic", "n": 5})
        assert result.content[0].text.endswith("cyclic n=5: PASS")

    async def test_reproduce_passes_primes(self, tools):
        result = await tools.call_tool("reproduce", {"target": "a5", "primes": [2, 19]})
        assert "must be even and avoid 19, 293" in result.content[0].text
        assert result.content[0].text.endswith("a5: FAIL")

    def test_degree_formula_text(self):
        assert degree_formula_text(6, 0, 1, 0, []) == "(2b + a + sum r) / (2d + c + #Ram_inf) = (6) / (1) = 6"

    def test_resolve_field_needs_input(self, tools):
        with pytest.raises(SpecError):
            resolve_field(tools.corpus)


class TestServer:
    """Test cases for server construction."""

    def test_initialization(self, monkeypatch):
        monkeypatch.delenv("QUATLAT_CORPUS", raising=False)
        server = ClassifierServer()
        assert server.tools.corpus.labels()
        assert server.config["prime_bound"] > 0


class TestConfig:
    """Test cases for load_config and validate_environment."""

    def test_defaults(self, monkeypatch):
        for name in ("QUATLAT_PRIME_BOUND", "QUATLAT_SEED", "QUATLAT_WORKERS", "QUATLAT_CORPUS"):
            monkeypatch.delenv(name, raising=False)
        config = load_config()
        assert config["prime_bound"] == 200
        assert config["seed"] == 0
        assert config["workers"] == 1
        assert config["refine_cap"] == 4096
        assert "corpus_dir" not in config

    def test_environment(self, monkeypatch):
        monkeypatch.setenv("QUATLAT_PRIME_BOUND", "500")
        monkeypatch.setenv("QUATLAT_SEED", "11")
        config = load_config()
        assert config["prime_bound"] == 500
        assert config["seed"] == 11

    def test_overrides_win(self, monkeypatch):
        monkeypatch.setenv("QUATLAT_PRIME_BOUND", "500")
        config = load_config(prime_bound=50, seed=None)
        assert config["prime_bound"] == 50

    def test_non_integer_is_ignored(self, monkeypatch, caplog):
        monkeypatch.setenv("QUATLAT_WORKERS", "many")
        config = load_config()
        assert config["workers"] == 1
        assert "QUATLAT_WORKERS" in caplog.text

    def test_validate_environment(self, monkeypatch, tmp_path):
        monkeypatch.setenv("QUATLAT_CORPUS", str(tmp_path))
        monkeypatch.setenv("QUATLAT_PRIME_BOUND", "lots")
        validation = validate_environment()
        assert validation["corpus_override"]
        assert validation["corpus_readable"]
        assert not validation["prime_bound"]
