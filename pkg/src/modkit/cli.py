"""Command-line interface.

Verbs: generate family data, verify datum files, decompose fusion products
(with oracle cross-checks), reduce a full datum to its representative-indexed
restriction, and render report files.

Exit codes: 0 all checks pass, 1 verification failure, 2 usage/parse errors.
The environment variable MODKIT_PRECISION_BITS (default 256) sets the
precision of the rigorous interval checks.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import io
from .datum import (KIND_FULL, DegeneracyError, ModularDatum, RawDatum, bold_world,
                    detect_symmetric_center, nondegenerate_world,
                    reduce_slightly_degenerate, with_duality)
from .families import FamilySpecError, FamilyInstance, from_spec
from .pipeline import PipelineResult, emit_zmodular, verify_normalized, verify_raw
from .verlinde import verlinde_raw

USAGE_ERROR = 2


def _precision_bits() -> int:
    try:
        return int(os.environ.get("MODKIT_PRECISION_BITS", "256"))
    except ValueError:
        return 256


def _fail_usage(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return USAGE_ERROR


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------

def cmd_generate(args) -> int:
    try:
        inst = from_spec(args.spec)
    except FamilySpecError as exc:
        return _fail_usage(str(exc))
    io.save_datum(inst.raw, args.out)
    print(f"wrote {inst.name}: {inst.raw.size} labels, kind {inst.raw.kind}, "
          f"conductor {inst.raw.s_matrix.conductor} -> {args.out}")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    try:
        datum = io.load_datum(args.input)
    except (OSError, io.FormatError) as exc:
        return _fail_usage(f"cannot read datum: {exc}")

    if isinstance(datum, ModularDatum):
        result = verify_normalized(datum)
    else:
        result = verify_raw(datum, mode=args.mode, precision_bits=_precision_bits())

    if args.emit_zmodular:
        _emit(result, args.emit_zmodular)

    entries = io.report_to_json(result.report, classification=result.classification)
    text = io.render_report(entries) if args.pretty else json.dumps(entries, indent=1)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(json.dumps(entries, indent=1) + "\n")
        if args.pretty:
            print(text)
    else:
        print(text)
    if not args.pretty:
        print(f"classification: {result.classification}", file=sys.stderr)
    return result.exit_code


def _emit(result: PipelineResult, path: str) -> None:
    if result.world is None:
        print("emit: no world to normalize (verification did not reach that stage)",
              file=sys.stderr)
        return
    emitted = emit_zmodular(result.sldeg if result.sldeg is not None else result.world)
    if emitted.datum is not None:
        io.save_datum(emitted.datum, path)
        print(f"emit: normalized datum written to {path} "
              f"(normalizer {emitted.normalizer})", file=sys.stderr)
    else:
        entries = io.report_to_json(emitted.certificate)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump({"certificate": "verified up to scalar", "note": emitted.note,
                       "checks": entries}, fh, indent=1)
            fh.write("\n")
        print(f"emit: {emitted.note}; certificate written to {path}", file=sys.stderr)


# ---------------------------------------------------------------------------
# fusion
# ---------------------------------------------------------------------------

def _load_source(text: str) -> tuple[Optional[FamilyInstance], RawDatum]:
    if ":" in text and not os.path.exists(text):
        inst = from_spec(text)
        return inst, inst.raw
    datum = io.load_datum(text)
    if isinstance(datum, ModularDatum):
        raise FamilySpecError("fusion needs a raw datum (or a family spec)")
    return None, datum


def _format_multiset(pairs: list[tuple[str, int]]) -> str:
    terms = []
    for label, m in pairs:
        if m == 1:
            terms.append(label)
        elif m == -1:
            terms.append(f"-{label}")
        else:
            terms.append(f"{m}*{label}")
    return "{" + ", ".join(terms) + "}"


def _verlinde_route(raw: RawDatum, reps):
    """(tensor, tensor labels, map full-label-index -> (tensor index, sign))."""
    raw = with_duality(raw)
    if raw.kind != KIND_FULL:
        world = bold_world(raw)
        tensor, irep = verlinde_raw(world)
        if tensor is None:
            raise DegeneracyError("the S-matrix route gives non-integral coefficients")
        return tensor, world.labels, {i: (i, 1) for i in range(world.size)}
    center = detect_symmetric_center(raw)
    if len(center) == 1:
        world = nondegenerate_world(raw)
        tensor, irep = verlinde_raw(world)
        if tensor is None:
            raise DegeneracyError("the S-matrix route gives non-integral coefficients")
        return tensor, world.labels, {i: (i, 1) for i in range(world.size)}
    sldeg = reduce_slightly_degenerate(raw, reps=reps)
    tensor, irep = verlinde_raw(sldeg.world())
    if tensor is None:
        raise DegeneracyError("the S-matrix route gives non-integral coefficients")
    pos = {r: i for i, r in enumerate(sldeg.reps)}
    mapping = {}
    for i in range(raw.size):
        if i in pos:
            mapping[i] = (pos[i], 1)
        else:
            mapping[i] = (pos[sldeg.eps_action[i]], -1)
    return tensor, sldeg.bold.labels, mapping


def cmd_fusion(args) -> int:
    try:
        inst, raw = _load_source(args.source)
    except (FamilySpecError, OSError, io.FormatError) as exc:
        return _fail_usage(str(exc))
    labels = list(raw.labels)
    try:
        x = labels.index(args.x.strip())
        y = labels.index(args.y.strip())
    except ValueError:
        bad = args.x if args.x.strip() not in labels else args.y
        return _fail_usage(f"unknown label {bad!r} (labels: {', '.join(labels)})")

    oracle = args.oracle
    family_tensor = inst.fusion_oracle if inst is not None else None
    if oracle == "family" and family_tensor is None:
        return _fail_usage("no independent fusion oracle for this source")
    if oracle == "auto":
        oracle = "family" if family_tensor is not None and not args.compare else "verlinde"

    outputs = {}
    if args.compare or oracle == "family":
        if family_tensor is None:
            return _fail_usage("no independent fusion oracle for this source")
        row = family_tensor.table[x, y]
        outputs["family"] = [(labels[k], int(m)) for k, m in enumerate(row) if m]
    if args.compare or oracle == "verlinde":
        try:
            tensor, tlabels, mapping = _verlinde_route(
                raw, inst.reps if inst is not None else None)
        except DegeneracyError as exc:
            print(f"verlinde route failed: {exc}", file=sys.stderr)
            return 1
        xi, sx = mapping[x]
        yi, sy = mapping[y]
        sign = sx * sy
        row = tensor[xi, yi]
        outputs["verlinde"] = [(tlabels[k], sign * int(m)) for k, m in enumerate(row) if m]

    if not args.compare:
        route = "family" if oracle == "family" else "verlinde"
        print(_format_multiset(outputs[route]))
        return 0

    # compare in the world the verlinde route lives in: push the family
    # decomposition through the same quotient when orbits were folded
    tensor, tlabels, mapping = _verlinde_route(raw, inst.reps if inst is not None else None)
    folded: dict[int, int] = {}
    for k, m in enumerate(family_tensor.table[x, y]):
        if m:
            ki, sk = mapping[k]
            folded[ki] = folded.get(ki, 0) + sk * int(m)
    family_side = sorted((tlabels[k], m) for k, m in folded.items() if m)
    verlinde_side = sorted(outputs["verlinde"])
    family_str = _format_multiset(family_side)
    raw_str = _format_multiset(sorted(outputs["family"]))
    tag = "family:  " if raw_str == family_str else "family (folded through the quotient):"
    print(tag, family_str)
    print("verlinde:", _format_multiset(verlinde_side))
    if family_side != verlinde_side:
        print("MISMATCH between the fusion oracle and the S-matrix route", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# reduce
# ---------------------------------------------------------------------------

def cmd_reduce(args) -> int:
    try:
        datum = io.load_datum(args.input)
    except (OSError, io.FormatError) as exc:
        return _fail_usage(f"cannot read datum: {exc}")
    if not isinstance(datum, RawDatum) or datum.kind != KIND_FULL:
        return _fail_usage("reduce needs a full raw datum")
    try:
        sldeg = reduce_slightly_degenerate(with_duality(datum))
    except DegeneracyError as exc:
        print(f"reduction failed: {exc}", file=sys.stderr)
        return 1
    io.save_datum(sldeg.bold, args.out)
    reps = ", ".join(sldeg.bold.labels)
    print(f"fermion {datum.labels[sldeg.epsilon]}; representatives [{reps}]; "
          f"sdim {sldeg.sdim}; unit_bar {sldeg.bold.labels[sldeg.unit_bar]} -> {args.out}")
    return 0


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def cmd_report(args) -> int:
    try:
        with open(args.input, encoding="utf-8") as fh:
            entries = json.load(fh)
        if not isinstance(entries, list):
            raise ValueError("a report file holds a list of check entries")
    except (OSError, ValueError) as exc:
        return _fail_usage(f"cannot read report: {exc}")
    print(io.render_report(entries) if args.pretty else json.dumps(entries, indent=1))
    return 0 if all(e.get("status") != "fail" for e in entries) else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="modkit",
        description="construct, verify and classify modular data with exact "
                    "cyclotomic arithmetic")
    sub = p.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("generate", help="write a family datum to a JSON file")
    g.add_argument("spec", help="taft:d=5 | pointed:n=7,a=1,k0=2 | counterexample:sl2q16")
    g.add_argument("out")
    g.set_defaults(fn=cmd_generate)

    v = sub.add_parser("verify", help="run the full verification pipeline on a datum file")
    v.add_argument("input")
    v.add_argument("--mode", choices=("auto", "nondeg", "sldeg"), default="auto")
    v.add_argument("--emit-zmodular", metavar="PATH",
                   help="write the normalized datum (or a certificate) to PATH")
    v.add_argument("--out", metavar="PATH", help="write the report JSON to PATH")
    v.add_argument("--pretty", action="store_true", help="human-readable report")
    v.set_defaults(fn=cmd_verify)

    f = sub.add_parser("fusion", help="decompose a product of two labels")
    f.add_argument("source", help="family spec or datum file")
    f.add_argument("x")
    f.add_argument("y")
    f.add_argument("--oracle", choices=("auto", "family", "verlinde"), default="auto")
    f.add_argument("--compare", action="store_true",
                   help="run both routes and fail on mismatch")
    f.set_defaults(fn=cmd_fusion)

    r = sub.add_parser("reduce", help="restrict a full datum to fermion-orbit representatives")
    r.add_argument("input")
    r.add_argument("out")
    r.set_defaults(fn=cmd_reduce)

    rep = sub.add_parser("report", help="validate / pretty-print a report file")
    rep.add_argument("input")
    rep.add_argument("--pretty", action="store_true")
    rep.set_defaults(fn=cmd_report)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
