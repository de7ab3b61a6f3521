import functools
import json
import sys
from typing import Any, Callable

import click
from pydantic import ValidationError

from constants import exit_codes
from mbmod.connect import components, find_witness, reverse_witness, verify_witness
from mbmod.decompose import decompose
from mbmod.errors import InstanceError, QueryError, SizeLimitExceeded
from mbmod.gen import GenSpec, generate
from mbmod.minimal import check_star_multiplicative, forward_closure, is_minimal, minimal_closed_subsets
from mbmod.oracle import oracle_components, oracle_minimal_closed
from mbmod.scalar import FieldSpec
from mbmod.serialize import load_instance, save_instance, serialize_instance
from mbmod.star import step_name
from mbmod.table import ActionTable
from utils.config import config
from utils.logger import log_error
from utils.misc import apply_thread_limit, split_tokens

format_option = click.option("--format", "output_format", type=click.Choice(["text", "json"]), default="text", show_default=True)


def emit(output_format: str, document: dict[str, Any], lines: list[str]) -> None:
    if output_format == "json":
        click.echo(json.dumps(document, sort_keys=True))
    else:
        for line in lines:
            click.echo(line)


def handle_errors(command: Callable[..., None]) -> Callable[..., None]:
    """Maps failures onto the exit code contract: 1 invalid instance, 2 query, 3 I/O."""
    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            command(*args, **kwargs)
        except InstanceError as e:
            location = f"entries[{e.position}]: " if e.position is not None else ""
            log_error(f"{location}{type(e).__name__}: {e}")
            sys.exit(exit_codes.invalid_instance)
        except (QueryError, ValidationError) as e:
            log_error(f"{type(e).__name__}: {e}")
            sys.exit(exit_codes.query_error)
        except OSError as e:
            log_error(f"I/O error: {e}")
            sys.exit(exit_codes.io_error)

    return wrapper


def block_names(t: ActionTable, block: tuple[int, ...]) -> str:
    return "{" + ", ".join(t.v_name(i) for i in block) + "}"


def check_oracle_size(t: ActionTable, limit: int) -> None:
    if t.v_size > limit:
        raise SizeLimitExceeded(t.v_size, limit)


@click.group()
def cli() -> None:
    """Decomposes modules over linear spaces that admit a multiplicative basis."""
    apply_thread_limit()


@cli.command("validate")
@click.argument("path")
@handle_errors
def cmd_validate(path: str) -> None:
    t = load_instance(path)
    click.echo(f"{t.v_size}×{t.w_size}, {t.entry_count} entries, {t.field.describe()}")


@cli.command("decompose")
@click.argument("path")
@format_option
@click.option("--oracle", is_flag=True, help="Cross-check against the brute-force connection search.")
@handle_errors
def cmd_decompose(path: str, output_format: str, oracle: bool) -> None:
    t = load_instance(path)
    decomposition = components(t)
    modules = decompose(t)

    document: dict[str, Any] = {
        "components": [list(module.component) for module in modules],
        "blocks": [{"representative": module.representative, "indices": list(module.component), "entries": module.entry_count}
                   for module in modules],
    }
    lines = [f"{len(modules)} components"]
    lines += [f"[{module.representative}] {block_names(t, module.component)}: {module.entry_count} entries" for module in modules]

    if oracle:
        check_oracle_size(t, config["oracle"]["components_limit"])
        agreement = oracle_components(t) == decomposition
        document["oracle_agreement"] = agreement
        lines.append(f"oracle agreement: {str(agreement).lower()}")

    emit(output_format, document, lines)


@cli.command("witness")
@click.argument("path")
@click.option("--from", "source", required=True, help="Label or index.")
@click.option("--to", "target", required=True, help="Label or index.")
@format_option
@handle_errors
def cmd_witness(path: str, source: str, target: str, output_format: str) -> None:
    t = load_instance(path)
    witness = find_witness(t, t.v_index(source), t.v_index(target))
    reverse = reverse_witness(witness)
    if not (verify_witness(t, witness) and verify_witness(t, reverse)):
        raise RuntimeError(f"Witness from {source} to {target} failed verification")

    steps = [step_name(t, x) for x in witness.steps]
    reverse_steps = [step_name(t, x) for x in reverse.steps]
    emit(output_format, {
        "from": witness.source,
        "to": witness.target,
        "steps": steps,
        "reverse": reverse_steps,
    }, [
        f"{t.v_name(witness.source)} -> {t.v_name(witness.target)}: {' '.join(steps) if steps else '(empty)'}",
        f"{t.v_name(reverse.source)} -> {t.v_name(reverse.target)}: {' '.join(reverse_steps) if reverse_steps else '(empty)'}",
    ])


@cli.command("minimal")
@click.argument("path")
@format_option
@click.option("--oracle", is_flag=True, help="Cross-check the minimal closed subsets by powerset enumeration.")
@handle_errors
def cmd_minimal(path: str, output_format: str, oracle: bool) -> None:
    t = load_instance(path)
    report = is_minimal(t)
    subsets = minimal_closed_subsets(t)

    document: dict[str, Any] = {
        "minimal": report.minimal,
        "method": report.method,
        "minimal_subsets": [list(subset) for subset in subsets],
    }
    lines = [
        f"minimal: {str(report.minimal).lower()}",
        f"method: {report.method}",
        "minimal subsets: " + ", ".join(block_names(t, subset) for subset in subsets),
    ]

    if oracle:
        check_oracle_size(t, config["oracle"]["minimal_limit"])
        agreement = oracle_minimal_closed(t) == subsets
        document["oracle_agreement"] = agreement
        lines.append(f"oracle agreement: {str(agreement).lower()}")

    emit(output_format, document, lines)


@cli.command("check-star")
@click.argument("path")
@format_option
@handle_errors
def cmd_check_star(path: str, output_format: str) -> None:
    t = load_instance(path)
    report = check_star_multiplicative(t)
    emit(output_format, {
        "star_multiplicative": report.holds,
        "violations": [{"a": a, "b": b, "x": step_name(t, x)} for a, b, x in report.violations],
    }, [
        f"star-multiplicative: {str(report.holds).lower()}",
        f"violations: {len(report.violations)}",
    ] + [f"  a={t.v_name(a)} b={t.v_name(b)} x={step_name(t, x)}" for a, b, x in report.violations])


@cli.command("closure")
@click.argument("path")
@click.option("--seed-set", "seed_set", default="", help="Comma separated labels or indices.")
@format_option
@handle_errors
def cmd_closure(path: str, seed_set: str, output_format: str) -> None:
    t = load_instance(path)
    report = forward_closure(t, [t.v_index(token) for token in split_tokens(seed_set)])
    trace = sorted(report.trace.items())
    emit(output_format, {
        "seed": list(report.seed),
        "closure": list(report.closure),
        "trace": {str(member): {"i": t.entry(position).i, "j": t.entry(position).j} for member, position in trace},
    }, [
        f"seed: {block_names(t, report.seed)}",
        f"closure: {block_names(t, report.closure)}",
    ] + [f"  {t.v_name(member)} from {t.v_name(t.entry(position).i)} {t.w_name(t.entry(position).j)}" for member, position in trace])


@cli.command("generate")
@click.option("--v", "v_size", type=int, required=True)
@click.option("--w", "w_size", type=int, required=True)
@click.option("--density", type=float, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--field", "field_name", default="rational", show_default=True, help="rational, gf:<p> or <p>.")
@click.option("--components", "target_components", type=int, default=None)
@click.option("--star-multiplicative", is_flag=True)
@click.option("--out", "out_path", default=None, help="Output file, stdout when absent.")
@handle_errors
def cmd_generate(v_size: int, w_size: int, density: float, seed: int, field_name: str,
                 target_components: int | None, star_multiplicative: bool, out_path: str | None) -> None:
    spec = GenSpec(v_size=v_size, w_size=w_size, density=density, seed=seed,
                   modulus=FieldSpec.parse(field_name).modulus,
                   target_components=target_components, star_multiplicative=star_multiplicative)
    t = generate(spec)
    if out_path is None:
        click.echo(serialize_instance(t), nl=False)
    else:
        save_instance(t, out_path)


if __name__ == "__main__":
    cli()
