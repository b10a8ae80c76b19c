"""Exception types. Each carries the CLI exit code it maps to."""


class BranchLabError(Exception):
    code = "error"
    exit_code = 2


class WordSyntaxError(BranchLabError, ValueError):
    code = "syntax"

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class GeneratorRangeError(BranchLabError, ValueError):
    code = "range"


class NotInStabilizerError(BranchLabError, ValueError):
    code = "not-in-stabilizer"


class ResourceLimitError(BranchLabError):
    code = "resource"
    exit_code = 3


class EnumerationOverflow(ResourceLimitError):
    code = "overflow"


class CosetError(BranchLabError, ValueError):
    code = "coset"
