"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for all toolkit-specific errors."""


class NotASubgame(ToolkitError):
    """A vertex of the requested induced substructure has no outgoing edge."""


class InvalidParams(ToolkitError):
    """Tree parameters outside the valid range (need h >= k >= 1, t >= 0)."""


class BudgetExceeded(ToolkitError):
    """A configured resource cap (leaves, vertices, time) would be exceeded."""


class NotALeaf(ToolkitError):
    """The given component tuple is not a leaf of the configured tree."""


class NotADominion(ToolkitError):
    """The player does not win everywhere on the given game."""


class KMaxExceeded(ToolkitError):
    """The winning partition was still incomplete at the supplied k cap."""


class NotFullyWon(ToolkitError):
    """Even does not win from every vertex, so no full progress measure exists."""


class StateSpaceExceeded(ToolkitError):
    """The register-game state space estimate is above the configured cap."""


class CapExceeded(ToolkitError):
    """No k within the supplied cap satisfied the register/defensive test."""


class GameSyntaxError(ToolkitError):
    """Malformed game file.  Carries a 1-based line/column position."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{message} (line {line}, column {col})" if line else message)
        self.line = line
        self.col = col


class DuplicateId(GameSyntaxError):
    """The same vertex id is defined twice."""


class DanglingSuccessor(GameSyntaxError):
    """A record names a successor id that is never defined."""


class NoSuccessor(GameSyntaxError):
    """A record has an empty successor list."""
