"""Connectivity-keeping caterpillars and spiders in bipartite graphs."""

__version__ = "0.1.0"
