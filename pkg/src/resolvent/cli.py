"""Command line driver: ingest complexes from JSON files, run the
composition checks, compute structure maps, perform links, verify the
split-exact identity suite, and reproduce the worked examples.

Complex files are JSON objects with keys "ring" (list of variable names),
"format" (list of four ranks) and "d1", "d2", "d3" (matrices of
polynomial strings, rows indexed by the target basis).

Exit codes: 0 success, 1 failed verification, 2 unusable input.
"""

from __future__ import annotations

import json
import os
import sys

import click

from .complexes import (
    build_2541,
    build_br_2442,
    check_complex,
    complex_from_matrices,
    minimize,
)
from .linkage import (
    LinkVerificationError,
    classify_br_class,
    link_report,
    minimal_br_link,
    predicted_linked_maps,
)
from .ring import poly_parse
from .splitverify import certificate_json, verify_all
from .structmaps import MAP_IDS, compute_structure_maps
from ._solve import BoundTooSmallError, NoLiftError


class ComplexFileError(Exception):
    """The complex file does not parse or has inconsistent shapes."""


def load_complex_file(path):
    """Read a complex from a JSON file and validate its shapes."""
    try:
        with open(path) as f:
            data = json.load(f)
    except (OSError, json.JSONDecodeError) as exc:
        raise ComplexFileError("cannot read %s: %s" % (path, exc))
    for key in ("format", "d1", "d2", "d3"):
        if key not in data:
            raise ComplexFileError("missing key %r" % key)
    fmt = tuple(data["format"])
    if len(fmt) != 4:
        raise ComplexFileError("format must list four ranks")
    shapes = {
        "d1": (fmt[0], fmt[1]),
        "d2": (fmt[1], fmt[2]),
        "d3": (fmt[2], fmt[3]),
    }
    mats = {}
    for key, (rows, cols) in shapes.items():
        m = data[key]
        if len(m) != rows or any(len(r) != cols for r in m):
            raise ComplexFileError(
                "%s must be a %d x %d matrix of strings" % (key, rows, cols))
        try:
            mats[key] = [[poly_parse(s) for s in row] for row in m]
        except Exception as exc:
            raise ComplexFileError("cannot parse an entry of %s: %s"
                                   % (key, exc))
    return complex_from_matrices(mats["d1"], mats["d2"], mats["d3"])


def fixture_path(name):
    """Path of a bundled example complex."""
    return os.path.join(os.path.dirname(__file__), "fixtures", name)


def _write_report(report, out):
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
    else:
        click.echo(text)


def _map_table_json(maps):
    table = {}
    for mid in maps.ids():
        m = maps[mid]
        cols = {}
        for word in sorted(m.cols):
            cols[repr(word)] = {
                repr(k): str(p) for k, p in sorted(m.cols[word].items())}
        table[mid] = cols
    return {"table": table, "lift_log": dict(maps.lift_log)}


@click.group()
def main():
    """Exact structure-map engine for length-3 free resolutions."""


@main.command("check")
@click.argument("path")
def cmd_check(path):
    """Verify that both compositions of a complex file vanish."""
    try:
        C = load_complex_file(path)
    except ComplexFileError as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(2)
    rep = check_complex(C)
    _write_report({k: v for k, v in rep.items() if k != "ranks"}, None)
    sys.exit(0 if rep["d1d2_zero"] and rep["d2d3_zero"] else 1)


@main.command("maps")
@click.argument("path")
@click.option("--maps", "maps_opt", default=None,
              help="Comma separated map ids (default: all applicable).")
@click.option("--out", default=None, help="Write the JSON report here.")
def cmd_maps(path, maps_opt, out):
    """Compute structure maps of a complex file."""
    try:
        C = load_complex_file(path)
    except ComplexFileError as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(2)
    ids = None
    if maps_opt:
        ids = [s.strip() for s in maps_opt.split(",") if s.strip()]
        bad = [i for i in ids if i not in MAP_IDS]
        if bad:
            click.echo("error: unknown map ids %s" % ", ".join(bad), err=True)
            sys.exit(2)
    try:
        maps = compute_structure_maps(C, ids=ids)
    except (NoLiftError, BoundTooSmallError) as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(1)
    _write_report(_map_table_json(maps), out)
    sys.exit(0)


def _parse_alpha(text):
    """Alpha combinations given as JSON: [[[k, c], ...], ...]."""
    combos = json.loads(text)
    if len(combos) != 4:
        raise ValueError("alpha needs exactly four combinations")
    return [[(int(k), c) for k, c in combo] for combo in combos]


@main.command("link")
@click.argument("path")
@click.option("--cols", default="1,2,3,4",
              help="Four presentation columns, comma separated.")
@click.option("--alpha", default=None,
              help="Column combinations as JSON [[[k,c],...],...]; "
                   "overrides --cols.")
@click.option("--seed", default=0, show_default=True,
              help="Seed for the classifier's general-position search.")
@click.option("--out", default=None, help="Write the JSON report here.")
def cmd_link(path, cols, alpha, seed, out):
    """Link a complex along four presentation columns."""
    try:
        C = load_complex_file(path)
        col_idx = tuple(int(s) for s in cols.split(","))
        combos = _parse_alpha(alpha) if alpha else None
    except (ComplexFileError, ValueError, json.JSONDecodeError) as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(2)
    try:
        maps = compute_structure_maps(C, ids=["w31", "w21", "w11"])
        L = minimal_br_link(C, cols=col_idx, maps=maps, alpha=combos)
        pred, transfer = predicted_linked_maps(L)
        decision = classify_br_class(C, maps=maps, rng_seed=seed)
    except (LinkVerificationError, NoLiftError) as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(1)
    decision = dict(decision)
    decision["format"] = list(decision["format"])
    if decision["witness_word"] is not None:
        decision["witness_word"] = repr(decision["witness_word"])
    rep = link_report(L, classify=decision)
    rep["transfer"] = {
        "failures": [repr(f) for f in transfer["failures"]],
        "skipped": [repr(s) for s in transfer["skipped"]],
        "verified_ids": transfer["verified_ids"],
    }
    _write_report(rep, out)
    sys.exit(0)


_LEMMA_TAGS = {
    "4.1": ("relw31_1", "relw31_2", "relw31_3", "relw31_4"),
    "4.2": ("relw11_1", "relw11_2"),
    "4.3": ("relw32_1", "relw32_2", "relw32_3"),
    "4.4": ("relw12_1", "relw12_2"),
}


@main.command("split-verify")
@click.option("--format", "fmt", default="2,5,5,2", show_default=True,
              help="Split exact format: 2,5,5,2 or 2,6,5,1.")
@click.option("--lemma", default="all", show_default=True,
              type=click.Choice(["all", "4.1", "4.2", "4.3", "4.4"]),
              help="Restrict to one identity group.")
@click.option("--fail-fast", is_flag=True,
              help="Stop at the first nonzero difference.")
@click.option("--seed", default=0, show_default=True)
@click.option("--jobs", default=None, type=int,
              help="Worker threads (default: RESOLVENT_JOBS or 1).")
@click.option("--out", default=None, help="Write the certificate here.")
def cmd_split_verify(fmt, lemma, fail_fast, seed, jobs, out):
    """Verify the defect-variable identities over a split exact complex."""
    try:
        fmt_t = tuple(int(s) for s in fmt.split(","))
    except ValueError:
        click.echo("error: bad format %r" % fmt, err=True)
        sys.exit(2)
    if jobs is None:
        jobs = int(os.environ.get("RESOLVENT_JOBS", "1"))
    tags = None if lemma == "all" else _LEMMA_TAGS[lemma]
    try:
        cert = verify_all(fmt_t, fail_fast=fail_fast, seed=seed,
                          tags=tags, jobs=jobs)
    except ValueError as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(2)
    text = certificate_json(cert)
    if out:
        with open(out, "w") as f:
            f.write(text + "\n")
    else:
        click.echo(text)
    sys.exit(0 if cert["all_pass"] else 1)


def _print_matrix(label, m):
    click.echo(label)
    for row in m.dense():
        click.echo("  [" + ", ".join(str(p) for p in row) + "]")


def _print_map(maps, mid):
    m = maps.get(mid)
    if m is None:
        click.echo("%s: unavailable (%s)"
                   % (mid, maps.lift_log.get(mid, "not computed")))
        return
    click.echo("%s:" % mid)
    for word in sorted(m.cols):
        for k, p in sorted(m.cols[word].items()):
            click.echo("  %s -> %s : %s" % (word, k, p))


@main.command("demo")
@click.argument("name", type=click.Choice(
    ["example-3.3", "br-generic", "format-2541"]))
def cmd_demo(name):
    """Run a bundled worked example end to end."""
    if name == "br-generic":
        C = build_br_2442()
        click.echo("Buchsbaum-Rim complex on a generic 2 x 4 presentation")
        maps = compute_structure_maps(
            C, ids=["w31", "w21", "w11", "w2_2_1"])
        for mid in ("w31", "w21", "w11", "w2_2_1"):
            _print_map(maps, mid)
        return
    if name == "format-2541":
        C = build_2541()
        click.echo("generic complex of format (2, 5, 4, 1)")
        maps = compute_structure_maps(C)
        for mid in maps.ids():
            _print_map(maps, mid)
        return
    C = load_complex_file(fixture_path("example_3_3_A.json"))
    click.echo("resolution of format %s" % (C.format,))
    _print_matrix("d1:", C.d1)
    _print_matrix("d2:", C.d2)
    _print_matrix("d3:", C.d3)
    click.echo("composition check: %s" % check_complex(C))
    maps = compute_structure_maps(C, ids=["w31", "w21", "w11"])
    click.echo("degree-one map on the wedge words:")
    _print_map(maps, "w11")
    decision = classify_br_class(C, maps=maps)
    click.echo("classifier: %s" % decision)
    alpha = [[(1, 1)], [(2, 1), (4, 1)], [(3, 1), (6, 1)], [(5, 1)]]
    L = minimal_br_link(C, alpha=alpha)
    click.echo("perfect link: reduced format %s, fully minimal %s"
               % (L.minimized.format, minimize(L.minimized).format))
    _print_matrix("linked d1:", L.minimized.d1)
    alpha2 = [[(1, 1)], [(2, 1), (3, 1)], [(4, 1), (5, 1)], [(6, 1)]]
    L2 = minimal_br_link(C, alpha=alpha2)
    click.echo("second link choice: reduced format %s, fully minimal %s"
               % (L2.minimized.format, minimize(L2.minimized).format))


if __name__ == "__main__":
    main()
