"""MCP stdio server exposing the classifier tools."""

import asyncio
import json
import logging
import os
import sys

from mcp.server import Server
from mcp.server.stdio import stdio_server
from mcp.types import EmbeddedResource, ImageContent, Resource, TextContent, Tool

from .config import load_config, validate_environment
from .tools import ClassifierTools
from .utils import setup_logging

logger = logging.getLogger(__name__)


class ClassifierServer:
    """MCP Server for the sublattice classifier."""

    def __init__(self):
        """Initialize the server."""
        self.server = Server("quatlat")
        self.config = load_config()

        validation = validate_environment()
        missing = [key for key, valid in validation.items() if not valid and key != "corpus_override"]
        if missing:
            logger.warning(f"Configuration problems: {missing}")

        try:
            self.tools = ClassifierTools(self.config)
            logger.info("Classifier tools initialized successfully")
        except Exception as e:
            logger.error(f"Failed to initialize classifier tools: {e}")
            raise

        self._register_handlers()

    def _register_handlers(self):
        """Register MCP server handlers."""

        @self.server.list_resources()
        async def list_resources() -> list[Resource]:
            return [
                Resource(
                    uri="quatlat://config",
                    name="Classifier Configuration",
                    description="Current configuration and environment validation",
                    mimeType="application/json",
                ),
                Resource(
                    uri="quatlat://corpus",
                    name="Field Corpus",
                    description="Labels, degrees and provenance of the corpus fields",
                    mimeType="application/json",
                ),
            ]

        @self.server.read_resource()
        async def read_resource(uri: str) -> str:
            if str(uri) == "quatlat://config":
                return json.dumps({"config": self.config, "validation": validate_environment()},
                                  indent=2, default=str)
            if str(uri) == "quatlat://corpus":
                return json.dumps(self.tools.corpus.list_entries(), indent=2)
            raise ValueError(f"Unknown resource: {uri}")

        @self.server.list_tools()
        async def list_tools() -> list[Tool]:
            tools = self.tools.get_tools()
            logger.info(f"Listed {len(tools)} available tools")
            return tools

        @self.server.call_tool()
        async def call_tool(name: str, arguments: dict) -> list[TextContent | ImageContent | EmbeddedResource]:
            logger.info(f"Calling tool: {name} with arguments: {arguments}")
            try:
                result = await self.tools.call_tool(name, arguments)
                return result.content
            except Exception as e:
                logger.error(f"Tool call failed for {name}: {e}")
                return [TextContent(type="text", text=f"Error: {str(e)}")]

    async def run(self):
        """Run the MCP server."""
        # stdout carries the protocol; everything else goes to the log
        logger.info("Starting quatlat MCP server")
        logger.info(f"Corpus: {self.tools.corpus.corpus_dir}")
        logger.info(f"Prime bound: {self.config.get('prime_bound')}")

        async with stdio_server() as (read_stream, write_stream):
            await self.server.run(
                read_stream,
                write_stream,
                self.server.create_initialization_options(),
            )


def main():
    """Main entry point for the server."""
    setup_logging(os.getenv("LOG_LEVEL", "INFO"))
    try:
        server = ClassifierServer()
        asyncio.run(server.run())
    except KeyboardInterrupt:
        logger.info("Server stopped by user")
    except Exception as e:
        logger.error(f"Server error: {e}")
        sys.exit(1)


if __name__ == "__main__":
    main()
