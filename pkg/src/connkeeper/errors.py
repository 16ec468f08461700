"""Exception hierarchy for connkeeper."""

from __future__ import annotations


class ConnKeeperError(Exception):
    """Base class for every error raised by this package."""


class GraphError(ConnKeeperError):
    pass


class SelfLoop(GraphError):
    def __init__(self, u: int):
        super().__init__(f"self-loop at vertex {u}")
        self.u = u


class VertexOutOfRange(GraphError):
    def __init__(self, u: int, n: int):
        super().__init__(f"vertex {u} out of range for a graph on {n} vertices")
        self.u = u
        self.n = n


class NotBipartite(GraphError):
    def __init__(self, cycle: list[int]):
        super().__init__(f"odd cycle {cycle}")
        self.cycle = cycle


class ParseError(GraphError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class NotASubdivision(GraphError):
    pass


class TreeError(ConnKeeperError):
    pass


class EmptySpec(TreeError):
    pass


class ZeroLengthLeg(TreeError):
    pass


class NotATree(TreeError):
    pass


class PreconditionViolated(ConnKeeperError):
    pass


class SideMismatch(ConnKeeperError):
    pass


class NoNeighborOnPath(ConnKeeperError):
    pass


class InvalidEmbedding(ConnKeeperError):
    pass


class InsufficientFreshNeighbors(ConnKeeperError):
    """A constructive extension ran out of fresh neighbours.

    Can only happen if the degree hypothesis was violated, so it is treated
    as an internal consistency failure.
    """


class TreeTooLarge(ConnKeeperError):
    pass


class InfeasibleSpec(ConnKeeperError):
    pass
