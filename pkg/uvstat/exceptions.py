from typing import List


class UVStatError(Exception):
    pass


class ConfigError(UVStatError):
    pass


class SupportError(UVStatError, ValueError):
    pass


class IndexRangeError(UVStatError, IndexError):
    pass


class OrderTooLargeError(UVStatError, ValueError):
    pass


class SizeGuardError(UVStatError, ValueError):
    pass


class QuadratureError(UVStatError, ArithmeticError):
    def __init__(self, message: str, error_estimate: float):
        super().__init__(f"{message} (achieved error estimate {error_estimate:.3e})")
        self.error_estimate = error_estimate


class FactorizationError(UVStatError, ArithmeticError):
    pass


class AsymmetricKernelError(UVStatError, ValueError):
    pass


class NonSummableError(UVStatError, ValueError):
    pass


class EmptySampleError(UVStatError, ValueError):
    pass


class UnknownScenarioError(UVStatError, KeyError):
    def __init__(self, name: str, suggestions: List[str]):
        hint = f", did you mean {', '.join(suggestions)}?" if suggestions else ""
        super().__init__(f"unknown scenario {name!r}{hint}")
        self.name = name
        self.suggestions = suggestions

    def __str__(self):
        return self.args[0]
