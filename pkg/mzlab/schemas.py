from enum import Enum
from typing import Optional

from pydantic import BaseModel

from mzlab.errors import EXIT_FALSIFIED, EXIT_OK


class ClaimStatus(str, Enum):
    VERIFIED = "verified"
    FALSIFIED = "falsified"
    BOUNDED_EVIDENCE = "bounded-evidence"
    THEOREM_ASSERTED = "theorem-asserted"


class Bounds(BaseModel):
    degree: int
    power: int


class ClaimRead(BaseModel):
    statement: str
    status: ClaimStatus
    exact: bool
    bounds: Bounds
    witness: Optional[str] = None


class ReportRead(BaseModel):
    command: str
    claims: list[ClaimRead]

    @property
    def exit_code(self) -> int:
        if any(c.status is ClaimStatus.FALSIFIED for c in self.claims):
            return EXIT_FALSIFIED
        return EXIT_OK


class ExampleRead(BaseModel):
    id: str
    anchor: str
    quote: str
    summary: str
