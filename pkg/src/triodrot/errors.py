"""Exception hierarchy. Every domain failure raises a TriodError subclass;
the CLI maps TriodError to exit code 1 and argparse usage errors to 2."""


class TriodError(Exception):
    """Base class for all domain errors."""


class PatternError(TriodError):
    """Invalid pattern data."""


class EmptyPattern(PatternError):
    pass


class BadBranchIndex(PatternError):
    pass


class DuplicateLabel(PatternError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"duplicate label: {label!r}")


class NotSingleCycle(PatternError):
    pass


class UnknownPoint(TriodError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"unknown point: {label!r}")


class BranchEmpty(TriodError):
    def __init__(self, branch: int):
        self.branch = branch
        super().__init__(f"branch b{branch} has no points")


class CodeUndefinedAtOneThird(TriodError):
    def __init__(self):
        super().__init__("code function is undefined at rotation number 1/3")


class NoCanonicalOrdering(TriodError):
    def __init__(self):
        super().__init__(
            "no branch relabeling makes every innermost point black "
            "(the cycle is not regular)"
        )


class NotStronglyConnected(TriodError):
    pass


class CapExceeded(TriodError):
    pass


class CoverBroken(TriodError):
    def __init__(self, index: int):
        self.index = index
        super().__init__(f"interval at position {index} does not cover its successor")


class BadRho(TriodError):
    pass


class GlueFailed(TriodError):
    pass
