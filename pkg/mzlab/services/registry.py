import logging

from mzlab.errors import UnknownExample
from mzlab.providers import polynomial_examples, structural_checks
from mzlab.providers.base import ExampleCheck
from mzlab.providers.catalog import EXAMPLE_CATALOG
from mzlab.schemas import Bounds, ClaimRead, ExampleRead, ReportRead

logger = logging.getLogger(__name__)

_CHECKS: dict[str, type[ExampleCheck]] = {
    cls.id: cls
    for cls in (
        polynomial_examples.NonLocallyFiniteDerivation,
        polynomial_examples.TranslationSquaringEDerivation,
        polynomial_examples.EulerDerivationIdealImage,
        polynomial_examples.ScalingEDerivationIdealImage,
        polynomial_examples.PositiveCharacteristicDerivative,
        polynomial_examples.InversionOverF2Laurent,
        polynomial_examples.FrobeniusEDerivation,
        polynomial_examples.LaurentScalarEDerivation,
        polynomial_examples.IntegerScalingFamily,
        polynomial_examples.PrincipalIdealImages,
        structural_checks.ProjectionInvolutionSuite,
        structural_checks.PeriodicEndomorphismSuite,
        structural_checks.FiniteOrderAutomorphisms,
        structural_checks.AlgebraicEndomorphismsOfKx,
        structural_checks.PolytopeConsistency,
    )
}


def build_check(example_id: str) -> ExampleCheck:
    try:
        return _CHECKS[example_id]()
    except KeyError:
        known = ", ".join(entry["id"] for entry in EXAMPLE_CATALOG)
        raise UnknownExample(f"unknown example {example_id!r}; known ids: {known}") from None


def list_examples() -> list[ExampleRead]:
    return [ExampleRead(**entry) for entry in EXAMPLE_CATALOG]


def run_example(example_id: str) -> ReportRead:
    check = build_check(example_id)
    logger.info("running %s (%s)", check.id, check.anchor)
    claims = [
        ClaimRead(
            statement=claim.statement,
            status=claim.status,
            exact=claim.exact,
            bounds=Bounds(degree=claim.degree, power=claim.power),
            witness=claim.witness,
        )
        for claim in check.run()
    ]
    logger.info("%s produced %s claim(s)", check.id, len(claims))
    return ReportRead(command=f"verify {example_id}", claims=claims)
