"""Command-line surface: reduce, check, compare, witness, cantor, gen.

Exit codes: 0 success, 1 input error, 2 internal verification failure,
3 loop-deletion violation finding.  Reports print as tab-delimited key/value
lines, or as JSON with --json; figures render to the --svg path.
"""

from __future__ import annotations

import json
import sys
import time
from dataclasses import dataclass
from fractions import Fraction

import click

from . import wire
from .cancellation import (
    Verdict,
    empty_cancellation,
    is_collapsible,
    loop_deletion_witness,
    validate_cancellation,
)
from .coincidence import coincidence_set
from .errors import ArcError, DocumentError, ReductionVerificationError
from .fixtures import FixtureKind, FixtureSpec, build_fixture, build_quotient_fixture
from .params import OpenInterval, compare_families, normalize_family
from .paths import PathHandle, PolylinePath, evaluate, is_loop
from .reduction import (
    cantor_collapsing_map,
    constant_path_at,
    image_contained,
    injectivity_witness,
    maximalize,
    u_reduction,
)

EXIT_INPUT = 1
EXIT_VERIFY = 2
EXIT_VIOLATED = 3

# Exit 2 is reserved for internal verification failures; route click's own
# usage complaints through the input-error code instead.
click.UsageError.exit_code = EXIT_INPUT


def _fail(message: str, code: int = EXIT_INPUT) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _point_str(p) -> str:
    if isinstance(p, tuple):
        return "(" + ", ".join(wire.format_rational(c) for c in p) + ")"
    return p


def _path_kind(path: PathHandle) -> str:
    return "polyline" if isinstance(path, PolylinePath) else "discrete"


def _path_size(path: PathHandle) -> int:
    if isinstance(path, PolylinePath):
        return len(path.breakpoints)
    return len(path.labels)


def _is_constant(path: PathHandle) -> bool:
    if isinstance(path, PolylinePath):
        return all(p == path.breakpoints[0][1] for _, p in path.breakpoints)
    return all(lab == path.labels[0] for lab in path.labels)


@dataclass
class RunReport:
    """Reduce-command report; every verdict is recomputed from the outputs."""

    input_kind: str
    input_size: int
    intervals: list[str]
    iterations: int
    arc_size: int
    arc_start: str
    arc_end: str
    degenerate_loop: bool
    injective: bool
    endpoints_preserved: bool
    image_contained: bool
    elapsed_s: float

    @property
    def ok(self) -> bool:
        return self.injective and self.endpoints_preserved and self.image_contained

    def lines(self) -> list[str]:
        return [
            f"input\t{self.input_kind} ({self.input_size} vertices)",
            f"cancellation\t{len(self.intervals)} interval(s): "
            + (" ".join(self.intervals) if self.intervals else "(empty)"),
            f"iterations\t{self.iterations}",
            f"arc\t{self.arc_size} vertices, {self.arc_start} -> {self.arc_end}",
            f"degenerate_loop\t{self.degenerate_loop}",
            f"injective\t{self.injective}",
            f"endpoints_preserved\t{self.endpoints_preserved}",
            f"image_contained\t{self.image_contained}",
            f"elapsed_s\t{self.elapsed_s:.4f}",
        ]

    def to_json(self) -> dict:
        return {
            "input": {"kind": self.input_kind, "size": self.input_size},
            "cancellation": {"count": len(self.intervals), "intervals": self.intervals},
            "iterations": self.iterations,
            "arc": {
                "size": self.arc_size,
                "start": self.arc_start,
                "end": self.arc_end,
            },
            "degenerate_loop": self.degenerate_loop,
            "verdicts": {
                "injective": self.injective,
                "endpoints_preserved": self.endpoints_preserved,
                "image_contained": self.image_contained,
            },
            "elapsed_s": self.elapsed_s,
        }


def build_report(
    path: PathHandle, arc: PathHandle, intervals, iterations: int, elapsed: float
) -> RunReport:
    degenerate = is_loop(path) and _is_constant(arc)
    injective = degenerate or injectivity_witness(arc) is None
    endpoints = evaluate(arc, Fraction(0)) == evaluate(path, Fraction(0)) and evaluate(
        arc, Fraction(1)
    ) == evaluate(path, Fraction(1))
    return RunReport(
        input_kind=_path_kind(path),
        input_size=_path_size(path),
        intervals=[f"({wire.format_rational(iv.lo)},{wire.format_rational(iv.hi)})" for iv in intervals],
        iterations=iterations,
        arc_size=_path_size(arc),
        arc_start=_point_str(evaluate(arc, Fraction(0))),
        arc_end=_point_str(evaluate(arc, Fraction(1))),
        degenerate_loop=degenerate,
        injective=injective,
        endpoints_preserved=endpoints,
        image_contained=image_contained(path, arc),
        elapsed_s=elapsed,
    )


def _emit_report(report: RunReport, as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(report.to_json(), indent=2))
    else:
        for line in report.lines():
            click.echo(line)


@click.group()
def main():
    """Turn self-intersecting paths into injective arcs."""


@main.command("reduce")
@click.argument("input_file", type=click.Path(dir_okay=False))
@click.option("--arc", "arc_out", type=click.Path(), help="Write the arc path document here.")
@click.option("--cancellation", "cancellation_out", type=click.Path(), help="Write the cancellation document here.")
@click.option("--map", "map_out", type=click.Path(), help="Write the collapsing-map document here.")
@click.option("--coincidence", "coincidence_out", type=click.Path(), help="Debug: dump the input's coincidence set.")
@click.option("--svg", "svg_out", type=click.Path(), help="Render an overlay figure to this file.")
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
def cmd_reduce(input_file, arc_out, cancellation_out, map_out, coincidence_out, svg_out, as_json):
    """Extract a maximal loop-cancellation and the reduced arc."""
    try:
        path = wire.path_from_doc(wire.load_doc(input_file))
    except DocumentError as exc:
        _fail(str(exc))
    started = time.perf_counter()
    gamma = None
    try:
        if coincidence_out:
            wire.dump_doc(wire.coincidence_to_doc(coincidence_set(path)), coincidence_out)
        if is_loop(path):
            arc = constant_path_at(path)
            family = normalize_family([OpenInterval(Fraction(0), Fraction(1))])
            validate_cancellation(path, family)
            iterations = 0
        else:
            stats: dict = {}
            best = maximalize(path, empty_cancellation(path), stats=stats)
            result = u_reduction(path, best)
            arc, gamma, family = result.beta, result.gamma, best.family
            iterations = stats["iterations"]
    except ReductionVerificationError as exc:
        _fail(str(exc), EXIT_VERIFY)
    except ArcError as exc:
        _fail(str(exc))
    elapsed = time.perf_counter() - started

    report = build_report(path, arc, family, iterations, elapsed)
    if arc_out:
        wire.dump_doc(wire.path_to_doc(arc), arc_out)
    if cancellation_out:
        wire.dump_doc(wire.family_to_doc(family), cancellation_out)
    if map_out:
        if gamma is None:
            click.echo("note: loop input has no collapsing map; skipping --map", err=True)
        else:
            wire.dump_doc(wire.map_to_doc(gamma), map_out)
    if svg_out:
        from .figures import save_reduce_figure

        save_reduce_figure(svg_out, path, arc, family)
    _emit_report(report, as_json)
    if not report.ok:
        sys.exit(EXIT_VERIFY)


@main.command("check")
@click.argument("input_file", type=click.Path(dir_okay=False))
@click.argument("cancellation_file", type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
def cmd_check(input_file, cancellation_file, as_json):
    """Validate a cancellation against a path; report collapsibility."""
    try:
        path = wire.path_from_doc(wire.load_doc(input_file))
        family = wire.family_from_doc(wire.load_doc(cancellation_file))
        lc = validate_cancellation(path, family)
    except (DocumentError, ArcError) as exc:
        _fail(str(exc))
    collapsible = is_collapsible(lc)
    reduction_injective = None
    if collapsible:
        try:
            result = u_reduction(path, lc)
        except ReductionVerificationError as exc:
            _fail(str(exc), EXIT_VERIFY)
        reduction_injective = injectivity_witness(result.beta) is None
    if as_json:
        click.echo(
            json.dumps(
                {
                    "valid": True,
                    "collapsible": collapsible,
                    "reduction_injective": reduction_injective,
                }
            )
        )
    else:
        click.echo("valid\ttrue")
        click.echo(f"collapsible\t{str(collapsible).lower()}")
        click.echo(
            "reduction_injective\t"
            + ("n/a" if reduction_injective is None else str(reduction_injective).lower())
        )


@main.command("compare")
@click.argument("first", type=click.Path(dir_okay=False))
@click.argument("second", type=click.Path(dir_okay=False))
def cmd_compare(first, second):
    """Order two cancellation documents: LESS, GREATER, EQUAL, INCOMPARABLE."""
    try:
        u = wire.family_from_doc(wire.load_doc(first))
        v = wire.family_from_doc(wire.load_doc(second))
    except (DocumentError, ArcError) as exc:
        _fail(str(exc))
    click.echo(compare_families(u, v).value)


@main.command("witness")
@click.argument("input_file", type=click.Path(dir_okay=False))
@click.argument("pairs_file", type=click.Path(dir_okay=False))
@click.option("--json", "as_json", is_flag=True, help="Machine-readable report.")
def cmd_witness(input_file, pairs_file, as_json):
    """Check a nested pair list for a loop-deletion violation (exit 3 if found)."""
    try:
        path = wire.path_from_doc(wire.load_doc(input_file))
        pairs = wire.pairs_from_doc(wire.load_doc(pairs_file))
        verdict = loop_deletion_witness(path, pairs)
    except (DocumentError, ArcError) as exc:
        _fail(str(exc))
    start = _point_str(evaluate(path, Fraction(0)))
    end = _point_str(evaluate(path, Fraction(1)))
    if as_json:
        click.echo(
            json.dumps({"verdict": verdict.value, "start": start, "end": end})
        )
    else:
        click.echo(f"verdict\t{verdict.value}")
        click.echo(f"endpoints\t{start} vs {end}")
    if verdict is Verdict.VIOLATED:
        sys.exit(EXIT_VIOLATED)


@main.command("cantor")
@click.argument("depth", type=int)
@click.option("--out", "out_file", type=click.Path(), help="Write the map document here instead of stdout.")
@click.option("--svg", "svg_out", type=click.Path(), help="Render the staircase to this file.")
def cmd_cantor(depth, out_file, svg_out):
    """Emit the stage-DEPTH middle-thirds collapsing map."""
    if depth < 1:
        _fail("depth must be at least 1")
    gamma = cantor_collapsing_map(depth)
    doc = wire.map_to_doc(gamma)
    if out_file:
        wire.dump_doc(doc, out_file)
    else:
        click.echo(json.dumps(doc, indent=2))
    if svg_out:
        from .figures import save_map_figure

        save_map_figure(svg_out, gamma, title=f"stage-{depth} staircase")


@main.command("gen")
@click.option("--kind", type=click.Choice([k.value for k in FixtureKind]), required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--size", type=int, default=8, show_default=True, help="Vertex/sample count for random kinds.")
@click.option("--depth", type=int, default=2, show_default=True, help="Depth for nested/quotient kinds.")
@click.option("--loops", type=int, default=1, show_default=True, help="Forced subloops for random polylines.")
@click.option("--alphabet", type=int, default=3, show_default=True, help="Alphabet size for random discrete paths.")
@click.option("--out", "out_file", type=click.Path(), help="Write the path document here instead of stdout.")
@click.option("--pairs", "pairs_out", type=click.Path(), help="Quotient kind: also write the identified pairs.")
def cmd_gen(kind, seed, size, depth, loops, alphabet, out_file, pairs_out):
    """Emit a fixture as a path document."""
    spec = FixtureSpec(
        kind=FixtureKind(kind), seed=seed, size=size, depth=depth, loops=loops, alphabet=alphabet
    )
    if pairs_out and spec.kind is not FixtureKind.QUOTIENT:
        _fail("--pairs applies to the quotient kind only")
    try:
        fixture = build_fixture(spec)
    except (ValueError, ArcError) as exc:
        _fail(str(exc))
    doc = wire.path_to_doc(fixture)
    if out_file:
        wire.dump_doc(doc, out_file)
    else:
        click.echo(json.dumps(doc, indent=2))
    if pairs_out:
        _, pairs = build_quotient_fixture(spec.depth)
        wire.dump_doc(wire.pairs_to_doc(pairs), pairs_out)


if __name__ == "__main__":
    main()
