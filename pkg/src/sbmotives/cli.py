"""Command-line front end.

One subcommand per engine operation, batch-style (no interactive mode).
Output is deterministic and byte-stable for fixed arguments: no timestamps,
canonical orderings everywhere.  Three formats are supported via
``--format`` (or the ``SBMOTIVES_FORMAT`` environment variable): ``text``,
``json`` and ``csv``.  JSON integers are emitted as decimal strings so
values above 2**53 survive any consumer.

Exit codes: 0 success, 1 engine domain error, 2 usage error, 3 failed
``verify`` identities.
"""

from __future__ import annotations

import io
import json
import sys

import click

from .errors import EngineError
from .motive import DivisionContext, MotiveExpr
from .qpoly import gaussian_binomial
from .severi_brauer import (
    CoverageReason,
    SBVariety,
    classify_reduced_dimension,
    function_field_decomposition,
    mu,
    rational_chow_order,
)
from .type_calculus import (
    indecomposability_judgment,
    rigidity_judgment,
    type_bound,
)
from .verify import run_identity_suite

FORMATS = ("text", "json", "csv")


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def _dump_json(obj: object) -> str:
    # compact separators; keys are emitted in canonical insertion order
    return json.dumps(obj, separators=(",", ":"))


def _csv_lines(header: str, rows: list[str]) -> str:
    return "\n".join([header] + rows)


def _prime_option():
    def validate(ctx, param, value):
        from .motive import _is_prime

        if value is not None and not _is_prime(value):
            raise click.BadParameter(f"{value} is not prime")
        return value

    return click.option(
        "--p", "p", type=int, required=True, callback=validate, help="Prime of the algebra."
    )


def _format_option(fn):
    fn = click.option(
        "--format",
        "-f",
        "fmt",
        type=click.Choice(FORMATS),
        default="text",
        show_default=True,
        envvar="SBMOTIVES_FORMAT",
        help="Output format (env: SBMOTIVES_FORMAT).",
    )(fn)
    fn = click.option("--out", "out", type=click.Path(dir_okay=False, writable=True), default=None, help="Write output to a file instead of stdout.")(fn)
    return fn


def _run(fn):
    """Map engine domain errors to exit code 1 with the engine's message."""
    try:
        return fn()
    except EngineError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


@click.group()
def cli() -> None:
    """Exact combinatorics of motivic decompositions of Severi-Brauer varieties."""


@cli.command()
@click.argument("d", type=int)
@click.argument("k", type=int)
@_format_option
def gaussian(d: int, k: int, fmt: str, out: str | None) -> None:
    """Gaussian binomial [D choose K]_q with exact integer coefficients."""
    poly = _run(lambda: gaussian_binomial(d, k))
    if fmt == "json":
        _emit(_dump_json(poly.to_json_dict()), out)
    elif fmt == "csv":
        rows = [f"{deg},{coeff}" for deg, coeff in poly.items()]
        _emit(_csv_lines("degree,coefficient", rows), out)
    else:
        lines = [
            f"[{d} choose {k}]_q = {poly}",
            f"rank {poly.rank()}, dimension {poly.dim() if poly else 0}",
        ]
        _emit("\n".join(lines), out)


@cli.command(name="mu")
@_prime_option()
@click.option("--n", "n", type=int, required=True, help="Exponent; the algebra has degree p^n.")
@click.option("--k", "k", type=int, required=True, help="Level; the variety is SB_{p^k}.")
@click.option("--i", "i", type=int, default=None, help="Single degree to report.")
@click.option("--all", "all_", is_flag=True, help="Tabulate every degree with a possibly nonzero count.")
@_format_option
def mu_command(p: int, n: int, k: int, i: int | None, all_: bool, fmt: str, out: str | None) -> None:
    """Box-partition counts behind the rational Chow-group orders."""
    if (i is None) == (not all_):
        raise click.UsageError("exactly one of --i or --all is required")

    def compute() -> list[tuple[int, int]]:
        context = DivisionContext(p, n)
        variety = SBVariety(context, k)  # validates the level range
        if all_:
            degrees = range(0, context.degree + variety.dimension() + 1)
        else:
            degrees = [i]
        return [(deg, mu(context, k, deg)) for deg in degrees]

    table = _run(compute)
    if fmt == "json":
        payload = {
            "p": str(p),
            "n": str(n),
            "k": str(k),
            "values": [{"i": str(deg), "mu": str(count)} for deg, count in table],
        }
        _emit(_dump_json(payload), out)
    elif fmt == "csv":
        _emit(_csv_lines("i,mu", [f"{deg},{count}" for deg, count in table]), out)
    else:
        lines = [f"mu counts for p={p}, n={n}, k={k}"]
        lines += [f"  i={deg}: {count}" for deg, count in table]
        _emit("\n".join(lines), out)


@cli.command(name="chow-order")
@_prime_option()
@click.option("--n", "n", type=int, required=True, help="Exponent; the algebra has degree p^n.")
@click.option("--k", "k", type=int, required=True, help="Level; the variety is SB_{p^k}.")
@_format_option
def chow_order(p: int, n: int, k: int, fmt: str, out: str | None) -> None:
    """Orders of the rational Chow groups of SB_1 x SB_{p^k}, all degrees."""

    def compute():
        variety = SBVariety(DivisionContext(p, n), k)
        max_i = (variety.context.degree - 1) + variety.dimension()
        return [rational_chow_order(variety, deg) for deg in range(max_i + 1)]

    reports = _run(compute)
    if fmt == "json":
        payload = {
            "p": str(p),
            "n": str(n),
            "k": str(k),
            "rows": [report.to_json_obj() for report in reports],
        }
        _emit(_dump_json(payload), out)
    elif fmt == "csv":
        rows = [
            f"{r.i},{r.summand_count},{r.order_exponent},{r.literal_order}"
            for r in reports
        ]
        _emit(_csv_lines("i,mu,order_exponent,literal_order", rows), out)
    else:
        lines = [f"rational Chow-group orders for p={p}, n={n}, k={k}"]
        for r in reports:
            lines.append(
                f"  i={r.i}: mu={r.summand_count}, order {p}^{r.order_exponent}"
                f" = {r.group_order()} (literal mu*p = {r.literal_order})"
            )
        _emit("\n".join(lines), out)


def _render_expr_text(expr: MotiveExpr) -> list[str]:
    if expr.is_zero:
        return ["  (zero motive)"]
    lines = []
    for term, mult in expr.term_items():
        suffix = f"  x{mult}" if mult > 1 else ""
        lines.append(f"  {term.obj!r} (twist {term.twist}){suffix}")
    return lines


@cli.command()
@_prime_option()
@click.option("--n", "n", type=int, required=True, help="Exponent; the algebra has degree p^n.")
@click.option("--k", "k", type=int, required=True, help="Level; the variety is SB_{p^k}.")
@_format_option
def decompose(p: int, n: int, k: int, fmt: str, out: str | None) -> None:
    """Function-field decomposition of SB_{2^k} with its conservation check."""

    def compute():
        variety = SBVariety(DivisionContext(p, n), k)
        expr = function_field_decomposition(variety)
        conserved = expr.split_poincare() == gaussian_binomial(
            variety.context.degree, variety.reduced_dimension
        )
        return expr, conserved

    expr, conserved = _run(compute)
    if fmt == "json":
        payload = {
            "p": str(p),
            "n": str(n),
            "k": str(k),
            "terms": expr.to_json_obj(),
            "conservation": "ok" if conserved else "failed",
        }
        _emit(_dump_json(payload), out)
    elif fmt == "csv":
        rows = []
        for entry in expr.to_json_obj():
            obj = entry["object"]
            payload_field = "" if obj["kind"] == "tate" else (
                obj.get("level") or ";".join(obj.get("dims", []))
            )
            rows.append(
                f"{obj['kind']},{obj.get('p', '')},{obj.get('n', '')},"
                f"{payload_field},{entry['twist']},{entry['multiplicity']}"
            )
        rows.append(f"conservation,,,{'ok' if conserved else 'failed'},,")
        _emit(_csv_lines("kind,p,n,payload,twist,multiplicity", rows), out)
    else:
        lines = [f"function-field decomposition of SB_{2**k} (p={p}, n={n}, k={k}):"]
        lines += _render_expr_text(expr)
        lines.append(f"conservation: {'OK' if conserved else 'FAILED'}")
        _emit("\n".join(lines), out)


@cli.command(name="type-bound")
@_prime_option()
@click.option("--n", "n", type=int, required=True, help="Exponent; the algebra has degree p^n.")
@click.option("--k", "k", type=int, required=True, help="Level; the variety is SB_{p^k}.")
@click.option("--trace", "show_trace", is_flag=True, help="Include the full proof trace.")
@_format_option
def type_bound_command(p: int, n: int, k: int, show_trace: bool, fmt: str, out: str | None) -> None:
    """Derived type bound with indecomposability and rigidity judgments."""

    def compute():
        variety = SBVariety(DivisionContext(p, n), k)
        return (
            type_bound(variety),
            indecomposability_judgment(variety),
            rigidity_judgment(variety),
        )

    bound, indec, rigid = _run(compute)
    if fmt == "json":
        payload = {
            "p": str(p),
            "n": str(n),
            "k": str(k),
            "bound": str(bound.bound),
            "indecomposability": indec.status.value,
            "rigidity": rigid.status.value,
        }
        if show_trace:
            payload["trace"] = bound.trace.to_json_obj()
        _emit(_dump_json(payload), out)
    elif fmt == "csv":
        rows = [
            f"bound,{bound.bound}",
            f"indecomposability,{indec.status.value}",
            f"rigidity,{rigid.status.value}",
        ]
        if show_trace:
            rows += [
                f"step {idx + 1},{step.rule_id}"
                for idx, step in enumerate(bound.trace.steps)
            ]
        _emit(_csv_lines("key,value", rows), out)
    else:
        lines = [
            f"type bound for SB_{p**k} of a degree-{p}^{n} division algebra: {bound.bound}",
            f"indecomposability: {indec.status.value}",
            f"rigidity: {rigid.status.value}",
        ]
        if show_trace:
            lines.append(bound.trace.render_text())
        _emit("\n".join(lines), out)


@cli.command()
@click.option("--k", "k", type=int, required=True, help="Reduced dimension of the ideals.")
@_format_option
def conjecture(k: int, fmt: str, out: str | None) -> None:
    """Is the decomposition-lifting question settled for SB_k?"""
    case = _run(lambda: classify_reduced_dimension(k))
    if fmt == "json":
        payload = {
            "k": str(k),
            "covered": case.covered,
            "reason": case.reason.value if case.reason else None,
            "odd_squarefree_part": (
                str(case.odd_squarefree_part) if case.odd_squarefree_part is not None else None
            ),
            "blocking_factor": (
                str(case.blocking_factor) if case.blocking_factor is not None else None
            ),
            "reductions": [
                {"p": str(c.prime), "reduced_dimension": str(c.reduced_dimension)}
                for c in case.reductions
            ],
        }
        _emit(_dump_json(payload), out)
    elif fmt == "csv":
        rows = [f"covered,{str(case.covered).lower()}"]
        if case.reason:
            rows.append(f"reason,{case.reason.value}")
        if case.odd_squarefree_part is not None:
            rows.append(f"odd_squarefree_part,{case.odd_squarefree_part}")
        if case.blocking_factor is not None:
            rows.append(f"blocking_factor,{case.blocking_factor}")
        for c in case.reductions:
            rows.append(f"reduction,p={c.prime}:SB_{c.reduced_dimension}")
        _emit(_csv_lines("key,value", rows), out)
    else:
        if not case.covered:
            _emit(f"OPEN (blocking factor {case.blocking_factor})", out)
            return
        if case.reason is CoverageReason.SQUAREFREE:
            lines = ["COVERED (squarefree)"]
        else:
            lines = [f"COVERED (4 x odd squarefree, odd part {case.odd_squarefree_part})"]
        for c in case.reductions:
            lines.append(f"  reduces to: SB_{c.reduced_dimension} at p={c.prime}")
        _emit("\n".join(lines), out)


@cli.command()
@click.option("--max-n", "max_n", type=click.IntRange(min=1), default=5, show_default=True, help="Largest exponent for range-parameterized identities.")
@_format_option
def verify(max_n: int, fmt: str, out: str | None) -> None:
    """Run the full identity suite; exit 3 when any identity fails."""
    report = run_identity_suite(max_n)
    if fmt == "json":
        payload = {
            "max_n": str(max_n),
            "passed": report.passed,
            "results": [
                {
                    "identity": r.identity,
                    "passed": r.passed,
                    "failures": list(r.failures[:5]),
                }
                for r in report.results
            ],
        }
        _emit(_dump_json(payload), out)
    elif fmt == "csv":
        rows = [f"{r.identity},{'pass' if r.passed else 'fail'}" for r in report.results]
        _emit(_csv_lines("identity,status", rows), out)
    else:
        buffer = io.StringIO()
        for r in report.results:
            buffer.write(f"{'ok  ' if r.passed else 'FAIL'} {r.identity}\n")
            if not r.passed:
                for failure in r.failures[:5]:
                    buffer.write(f"       {failure}\n")
        passed = sum(1 for r in report.results if r.passed)
        buffer.write(f"{passed}/{len(report.results)} identities hold (max n = {max_n})")
        if not report.passed:
            buffer.write("\nfailing: " + ", ".join(report.failing()))
        _emit(buffer.getvalue(), out)
    if not report.passed:
        sys.exit(3)


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
