from __future__ import annotations

from typing import Optional

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2
EXIT_OVERFLOW = 3


class MzlabError(Exception):
    exit_code = EXIT_USAGE

    def __init__(self, detail: str) -> None:
        super().__init__(detail)
        self.detail = detail


class UsageError(MzlabError):
    pass


class ParseError(MzlabError):
    def __init__(self, detail: str, position: Optional[int] = None) -> None:
        super().__init__(detail if position is None else f"{detail} at position {position}")
        self.position = position


class UnknownVariable(ParseError):
    pass


class NegativeExponentWithoutLaurent(ParseError):
    pass


class RingMismatch(MzlabError):
    pass


class NonInvertibleImage(MzlabError):
    pass


class UnsupportedOverQ(MzlabError):
    pass


class PreconditionFailed(MzlabError):
    def __init__(self, identity: str) -> None:
        super().__init__(f"precondition failed: {identity}")
        self.identity = identity


class NotCommutative(MzlabError):
    pass


class CharacteristicTooSmall(MzlabError):
    pass


class ZeroPolynomial(MzlabError):
    pass


class NonSplit(MzlabError):
    def __init__(self, degrees: list[int]) -> None:
        super().__init__(f"characteristic polynomial does not split; irreducible factor degrees {degrees}")
        self.degrees = degrees


class UnknownExample(MzlabError):
    pass


class OutOfWindow(MzlabError):
    exit_code = EXIT_OVERFLOW

    def __init__(self, detail: str, power: Optional[int] = None) -> None:
        super().__init__(detail)
        self.power = power


class TargetOverflow(MzlabError):
    exit_code = EXIT_OVERFLOW


class BudgetExceeded(MzlabError):
    exit_code = EXIT_OVERFLOW


class NotLocallyNilpotentAt(MzlabError):
    exit_code = EXIT_OVERFLOW

    def __init__(self, element: str, cap: int) -> None:
        super().__init__(f"series for {element} did not terminate within {cap} iterations")
        self.element = element
        self.cap = cap


class NotInRadical(MzlabError):
    exit_code = EXIT_FALSIFIED

    def __init__(self, m: int) -> None:
        super().__init__(f"power {m} of the candidate is not in the subspace")
        self.m = m


class DecompositionMismatch(MzlabError):
    exit_code = EXIT_FALSIFIED
