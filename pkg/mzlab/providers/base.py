from dataclasses import dataclass
from typing import Optional

from mzlab.schemas import ClaimStatus


@dataclass
class Claim:
    statement: str
    status: ClaimStatus
    exact: bool
    degree: int
    power: int
    witness: Optional[str] = None


def checked(
    statement: str, holds: bool, exact: bool, degree: int, power: int, witness: Optional[str] = None
) -> Claim:
    """Claim whose status follows from a computed truth value and its exactness."""
    if not holds:
        status = ClaimStatus.FALSIFIED
    elif exact:
        status = ClaimStatus.VERIFIED
    else:
        status = ClaimStatus.BOUNDED_EVIDENCE
    return Claim(statement, status, exact, degree, power, witness)


class ExampleCheck:
    id = ""
    anchor = ""

    def run(self) -> list[Claim]:
        raise NotImplementedError
