"""Command handlers, one per verb; each returns a ReportRead for the cli to render."""
from __future__ import annotations

import argparse
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Optional

from jinja2 import Environment, FileSystemLoader
from pydantic import TypeAdapter

from mzlab.config import settings
from mzlab.errors import ParseError, UnsupportedOverQ, UsageError
from mzlab.parser import parse_images, parse_poly
from mzlab.poly import Poly
from mzlab.providers.base import checked
from mzlab.rings import CoeffRing, PrimeField, build_ring
from mzlab.schemas import Bounds, ClaimRead, ClaimStatus, ExampleRead, ReportRead
from mzlab.services import finalg, polytope, registry
from mzlab.services.maps import EDeriv, MapKind, MapSpec, Operator
from mzlab.services.subspace import (
    DiagonalModule,
    Lattice,
    Span,
    Window,
    map_image,
    ms_falsify,
    radical_probe,
    span_vectors,
)

logger = logging.getLogger(__name__)

base_dir = Path(__file__).resolve().parent
templates = Environment(loader=FileSystemLoader(str(base_dir / "templates")), keep_trailing_newline=True)


def _claim(statement: str, holds: bool, exact: bool, power: int = 0, witness: Optional[str] = None) -> ClaimRead:
    claim = checked(statement, holds, exact, settings.max_degree, power, witness)
    return ClaimRead(
        statement=claim.statement,
        status=claim.status,
        exact=claim.exact,
        bounds=Bounds(degree=claim.degree, power=claim.power),
        witness=claim.witness,
    )


def _variables(args: argparse.Namespace) -> tuple[str, ...]:
    names = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    if not names:
        raise UsageError("--vars needs at least one variable name")
    return names


def _poly(args: argparse.Namespace, text: str) -> Poly:
    return parse_poly(text, build_ring(args.ring), _variables(args), args.laurent)


# polynomial subspaces


def _operator(args: argparse.Namespace) -> Operator:
    if bool(args.subspace_from_derivation) == bool(args.subspace_from_endo):
        raise UsageError("give exactly one of --subspace-from-derivation and --subspace-from-endo")
    ring, variables = build_ring(args.ring), _variables(args)
    if args.subspace_from_derivation:
        return MapSpec.derivation(parse_images(args.subspace_from_derivation, ring, variables, args.laurent))
    return EDeriv(MapSpec.endomorphism(parse_images(args.subspace_from_endo, ring, variables, args.laurent)))


def _source_degree(m: Operator, N: int) -> int:
    """Largest box degree whose monomial images stay inside the degree-N box."""
    phi = m.phi if isinstance(m, EDeriv) else m
    n = len(phi.variables)
    if phi.kind is MapKind.DERIVATION:
        shifts = [e[j] - (1 if i == j else 0) for i, img in enumerate(phi.images) for e in img.terms for j in range(n)]
        growth = max((abs(s) if phi.laurent else s for s in shifts), default=0)
        return max(0, N - growth)
    spread = max(sum(max((abs(e[j]) for e in img.terms), default=0) for img in phi.images) for j in range(n))
    return N // max(1, spread)


def _subspace(args: argparse.Namespace) -> tuple[Operator, Span]:
    m = _operator(args)
    N = settings.max_degree
    nvars = len(m.variables)
    source = Window.box(nvars, _source_degree(m, N), args.laurent)
    target = Window.box(nvars, N, args.laurent)
    logger.debug("source window %s, target window %s", source.describe(), target.describe())
    return m, map_image(m, source, target)


def _span_basis(S: Span) -> list[str]:
    if isinstance(S, DiagonalModule):
        return [
            f"({S.ring.fmt(s)})*{Poly.monomial(S.ring, S.variables, exp, laurent=S.window.laurent)}"
            for exp, s in S.scalars
        ]
    if isinstance(S, Lattice):
        return [str(S.window.poly(v, build_ring("z"), S.variables)) for v in S.basis]
    return [str(p) for p in S.basis_polys()]


def image(args: argparse.Namespace) -> ReportRead:
    m, S = _subspace(args)
    basis = _span_basis(S)
    shown = ", ".join(basis[:8]) + (", ..." if len(basis) > 8 else "")
    claim = _claim(
        f"windowed image of {m.describe()} has rank {len(basis)} in {S.window.describe()}",
        True,
        S.exact,
        witness=shown or "zero subspace",
    )
    return ReportRead(command="image", claims=[claim])


# finite-dimensional algebras


def _algebra(args: argparse.Namespace) -> finalg.StructAlgebra:
    if not args.algebra:
        raise UsageError("this command needs --algebra FILE")
    try:
        text = Path(args.algebra).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.algebra}: {exc.strerror}") from None
    return finalg.from_text(text)


def _scalar(text: str, field: CoeffRing) -> Any:
    try:
        value = Fraction(text.strip())
    except ValueError:
        raise ParseError(f"bad coefficient {text!r}") from None
    return field.from_fraction(value.numerator, value.denominator)


def _rows(text: Optional[str], field: CoeffRing, width: int) -> list[list[Any]]:
    """``;``-separated rows of ``,``-separated scalars."""
    if not text or not text.strip():
        return []
    rows = []
    for chunk in text.split(";"):
        row = [_scalar(w, field) for w in chunk.split(",")]
        if len(row) != width:
            raise ParseError(f"expected {width} entries per row, got {len(row)} in {chunk.strip()!r}")
        rows.append(row)
    return rows


def _vector_subspace(args: argparse.Namespace, A: finalg.StructAlgebra):
    return span_vectors(_rows(args.subspace, A.field, A.dim), A.field, A.dim)


def _element(text: str, A: finalg.StructAlgebra) -> finalg.Element:
    rows = _rows(text, A.field, A.dim)
    if len(rows) != 1:
        raise ParseError("an algebra element is one row of coordinates")
    return tuple(rows[0])


def radical_probe_command(args: argparse.Namespace) -> ReportRead:
    M = settings.max_power
    if args.algebra:
        A = _algebra(args)
        V = _vector_subspace(args, A)
        a = _element(args.target, A)
        if isinstance(A.field, PrimeField):
            inside = a in set(finalg.radical_finite(A, V))
        elif A.is_split:
            inside = finalg.radical_member_split(A, V, a)
        else:
            raise UnsupportedOverQ("radicals over Q are decided for split products only")
        verdict = "lies" if inside else "does not lie"
        claim = _claim(f"{args.target} {verdict} in r(V) inside {A.describe()}", True, True)
        return ReportRead(command="radical-probe", claims=[claim])
    m, S = _subspace(args)
    a = _poly(args, args.target)
    verdict = radical_probe(S, a, M)
    claim = _claim(f"powers of {a} in Im of {m.describe()}: {verdict.describe()}", True, verdict.exact, M)
    return ReportRead(command="radical-probe", claims=[claim])


def ms_falsify_command(args: argparse.Namespace) -> ReportRead:
    M = settings.max_power
    m, S = _subspace(args)
    a, left, right = _poly(args, args.target), _poly(args, args.left), _poly(args, args.right)
    cert = ms_falsify(S, a, left, right, M)
    witness = f"escapes at m = {list(cert.escaped)}"
    if cert.retained:
        witness += f"; stays inside at m = {list(cert.retained)}"
    claim = _claim(
        f"Im of {m.describe()} is not a Mathieu subspace: {left} * ({a})^m * {right} leaves it",
        cert.holds,
        cert.exact,
        M,
        witness,
    )
    return ReportRead(command="ms-falsify", claims=[claim])


def ms_decide(args: argparse.Namespace) -> ReportRead:
    A = _algebra(args)
    V = _vector_subspace(args, A)
    side = args.side
    checks = []
    local = finalg.is_local(A)
    if isinstance(A.field, PrimeField):
        decided = finalg.ms_decide_finite(A, V, side)
        by_idempotents = finalg.ms_test_idempotent(A, V, side)
        checks.append(
            _claim(
                "the idempotent criterion agrees with the power-orbit decision",
                decided == by_idempotents,
                True,
                witness=f"orbits: {decided}, idempotents: {by_idempotents}",
            )
        )
    elif local:
        decided = finalg.ms_local_criterion(A, V)
    else:
        decided = finalg.ms_test_idempotent(A, V, side)
    if local:
        agrees = finalg.ms_local_criterion(A, V) == decided
        checks.append(_claim("for a local algebra the verdict matches whether 1 lies outside V", agrees, True))
    verdict = "is" if decided else "is not"
    headline = _claim(f"V (dimension {V.dim}) {verdict} a {side} Mathieu subspace of {A.describe()}", True, True)
    return ReportRead(command="ms-decide", claims=[headline, *checks])


def decompose(args: argparse.Namespace) -> ReportRead:
    A = _algebra(args)
    kind = args.kind
    matrix = _rows(args.matrix, A.field, A.dim)
    if len(matrix) != A.dim:
        raise UsageError(f"--matrix needs {A.dim} rows")
    op_kind = finalg.OpKind.DERIVATION if kind == "additive" else finalg.OpKind.ENDOMORPHISM
    psi = finalg.LinOp(A, tuple(tuple(r) for r in matrix), op_kind)
    dec = finalg.gen_eigendecomp(psi, kind=kind)
    blocks = ", ".join(f"{A.field.fmt(lam)}: dim {b.dim}" for lam, b in zip(dec.eigenvalues, dec.blocks))
    claims = [_claim(f"generalized eigenspaces of the {op_kind.value} span the algebra", True, True, witness=blocks)]
    claims.append(_claim(f"the decomposition is a {kind} grading", finalg.grading_check(A, dec), True))
    if kind == "additive":
        assembled = finalg.image_decomp(psi, dec, A.field.zero())
        label = "Im psi = psi(A_0) + sum of the other blocks"
    else:
        assembled = finalg.image_decomp(psi.identity_minus(), dec, A.field.one())
        label = "Im(I - phi) = (I - phi)(A_1) + sum of the other blocks"
    claims.append(_claim(label, True, True, witness=f"dimension {assembled.dim}"))
    if A.unit is not None and isinstance(A.field, PrimeField):
        delta = psi if kind == "additive" else psi.identity_minus()
        anomalies = finalg.idempotent_anomalies(A, delta)
        shown = "; ".join(",".join(A.field.fmt(c) for c in e) for e in anomalies) or None
        claims.append(_claim(f"{len(anomalies)} nonzero idempotent(s) lie in both Ker and Im", True, True, witness=shown))
    return ReportRead(command="decompose", claims=claims)


def polytope_command(args: argparse.Namespace) -> ReportRead:
    M = settings.max_power
    f = _poly(args, args.target)
    verdict = polytope.polytope_verdict(f, M)
    weights = None
    if verdict.contains_origin:
        S = polytope.support(f)
        weights = polytope.origin_weights(S)
        weights = ", ".join(f"{w}*{p}" for w, p in zip(weights, S.points) if w)
    claims = [
        _claim(
            f"0 {'lies' if verdict.contains_origin else 'does not lie'} in the polytope of {f}",
            True,
            True,
            witness=f"convex weights {weights}" if weights else None,
        )
    ]
    if verdict.in_radical:
        claims.append(_claim(f"{f} lies in the radical of the constant-term-free subspace", True, True, M))
    elif verdict.constant_term_power is not None:
        claims.append(_claim(f"{f}^{verdict.constant_term_power} has a nonzero constant term", True, True, M))
    else:
        claims.append(
            ClaimRead(
                statement=f"some power of {f} has a nonzero constant term (none up to m = {M})",
                status=ClaimStatus.THEOREM_ASSERTED,
                exact=False,
                bounds=Bounds(degree=settings.max_degree, power=M),
            )
        )
    return ReportRead(command="polytope", claims=claims)


def verify(args: argparse.Namespace) -> ReportRead:
    return registry.run_example(args.target)


HANDLERS: dict[str, Callable[[argparse.Namespace], ReportRead]] = {
    "image": image,
    "radical-probe": radical_probe_command,
    "ms-decide": ms_decide,
    "ms-falsify": ms_falsify_command,
    "polytope": polytope_command,
    "decompose": decompose,
    "verify": verify,
}


def render_report(report: ReportRead, fmt: str) -> str:
    if fmt == "json":
        return report.model_dump_json(indent=2) + "\n"
    return templates.get_template("report.txt.j2").render(report=report)


def render_examples(examples: list[ExampleRead], fmt: str) -> str:
    if fmt == "json":
        return TypeAdapter(list[ExampleRead]).dump_json(examples, indent=2).decode() + "\n"
    return templates.get_template("examples.txt.j2").render(examples=examples)
