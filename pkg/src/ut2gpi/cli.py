"""Command line interface.

Commands compute tables (quotient dimensions, multiplicities, canonical
bases, family ranks), run the identity and witness checks, validate action
tables, and bundle everything into a single `verify` run.  Every command
that compares a computed value against a closed form carries a match flag;
exit status is 0 when all match flags hold, 2 when any fails, and 1 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import canonical, engine, symchar
from .algebra import (
    BimoduleAction,
    UTElement,
    builtin_action,
    check_axioms,
    is_trivial_linear,
    load_action,
    lr_span_dim,
)
from .engine import ModularMismatchError, ResourceCapError
from .genpoly import GenPolynomial, multilinearize
from .textform import ParseError, parse_poly, poly_to_text


class UsageError(ValueError):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    algebra: str = "regular"
    n_spec: str = "1..4"
    mode: str = "exact"
    cap: int | None = None
    fmt: str = "text"
    output: str | None = None
    seed: int = 0
    prime_bits: int = 61


def _parse_n_range(spec: str) -> list[int]:
    try:
        if ".." in spec:
            lo, hi = spec.split("..")
            lo, hi = int(lo), int(hi)
            if lo < 1 or hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        n = int(spec)
        if n < 1:
            raise ValueError
        return [n]
    except ValueError:
        raise UsageError("bad arity specification %r (use e.g. 3 or 1..4)" % spec)


def _resolve_algebra(spec: str) -> tuple[str, BimoduleAction]:
    if spec in ("regular", "D", "F"):
        return spec, builtin_action(spec)
    if spec.startswith("custom="):
        path = spec[len("custom="):]
        try:
            act = load_action(path)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError("cannot load action table %s: %s" % (path, exc))
        return act.tag, act
    raise UsageError("unknown algebra %r (use regular, D, F or custom=<path>)" % spec)


def _read_poly_file(path: str) -> GenPolynomial:
    if path == "-":
        src = sys.stdin.read()
    else:
        try:
            with open(path) as fh:
                src = fh.read()
        except OSError as exc:
            raise UsageError(str(exc))
    return parse_poly(src)


# ---------------------------------------------------------------------------
# Emission.

def _text_table(rows: list[dict]) -> str:
    if not rows:
        return "(no rows)"
    headers = list(rows[0])
    cells = [[("" if r.get(h) is None else str(r.get(h))) for h in headers] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for c in cells:
        lines.append("  ".join(x.ljust(w) for x, w in zip(c, widths)).rstrip())
    return "\n".join(lines)


def _csv_table(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
    writer.writeheader()
    for r in rows:
        writer.writerow({k: ("" if v is None else v) for k, v in r.items()})
    return buf.getvalue()


def _emit(doc: dict, rows: list[dict], cfg: RunConfig) -> None:
    if cfg.fmt == "json":
        text = json.dumps(doc, indent=2) + "\n"
    elif cfg.fmt == "csv":
        text = _csv_table(rows)
    else:
        text = _text_table(rows) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exit_code(rows: list[dict], key: str = "match") -> int:
    flags = [r.get(key) for r in rows if r.get(key) is not None]
    return 2 if any(f is False for f in flags) else 0


# ---------------------------------------------------------------------------
# Commands.

def _cmd_codim(args, cfg: RunConfig):
    tag, act = _resolve_algebra(cfg.algebra)
    builtin = tag in ("regular", "D", "F")
    rows = []
    results = []
    for n in _parse_n_range(cfg.n_spec):
        res = engine.codimension(
            act, n, cfg.mode, cap=cfg.cap, prime_bits=cfg.prime_bits, seed=cfg.seed
        )
        formula = canonical.codim_formula(n, tag) if builtin else None
        match = (res.value == formula) if formula is not None else None
        entry = res.to_json_dict()
        if formula is not None:
            entry["formula"] = formula
            entry["match"] = match
        results.append(entry)
        rows.append(
            {
                "algebra": tag,
                "n": n,
                "codim": res.value,
                "formula": formula,
                "match": match,
                "mode": res.mode,
            }
        )
    doc = {"command": "codim", "algebra": tag, "mode": cfg.mode, "results": results}
    return _exit_code(rows), doc, rows


def _cmd_cochar(args, cfg: RunConfig):
    tag, act = _resolve_algebra(cfg.algebra)
    builtin = tag in ("regular", "D", "F")
    rows = []
    results = []
    for n in _parse_n_range(cfg.n_spec):
        deco = symchar.cocharacter(act, n, cap=cfg.cap)
        all_match = True
        for lam in symchar.partitions(n):
            computed = deco.multiplicities.get(lam, 0)
            formula = symchar.multiplicity_formula(tag, lam) if builtin else None
            match = (computed == formula) if formula is not None else None
            if match is False:
                all_match = False
            rows.append(
                {
                    "algebra": tag,
                    "n": n,
                    "partition": "[%s]" % ",".join(map(str, lam)),
                    "multiplicity": computed,
                    "formula": formula,
                    "match": match,
                }
            )
        entry = deco.to_json_dict()
        if builtin:
            entry["formula_match"] = all_match
        results.append(entry)
    doc = {"command": "cochar", "algebra": tag, "results": results}
    return _exit_code(rows), doc, rows


def _cmd_check(args, cfg: RunConfig):
    tag, act = _resolve_algebra(cfg.algebra)
    poly = _read_poly_file(args.file)
    verdict = engine.is_identity(poly, act)
    rows = [{"algebra": tag, "file": args.file, "identity": verdict}]
    doc = {
        "command": "check",
        "algebra": tag,
        "file": args.file,
        "polynomial": poly_to_text(poly),
        "identity": verdict,
    }
    return 0, doc, rows


def _cmd_trivial(args, cfg: RunConfig):
    poly = _read_poly_file(args.file)
    try:
        verdict = is_trivial_linear(poly)
    except ValueError as exc:
        raise UsageError(str(exc))
    rows = [{"file": args.file, "trivial": verdict}]
    doc = {
        "command": "trivial",
        "file": args.file,
        "polynomial": poly_to_text(poly),
        "trivial": verdict,
    }
    return 0, doc, rows


def _cmd_basis(args, cfg: RunConfig):
    tag, act = _resolve_algebra(cfg.algebra)
    if tag not in ("regular", "D", "F"):
        raise UsageError("the canonical basis is defined for the builtin algebras")
    rows = []
    listing = {}
    for n in _parse_n_range(cfg.n_spec):
        elements = canonical.enumerate_basis(n, tag)
        formula = canonical.codim_formula(n, tag)
        count_match = len(elements) == formula
        row = {
            "algebra": tag,
            "n": n,
            "count": len(elements),
            "formula": formula,
            "match": count_match,
        }
        if args.rank:
            polys = [el.realize(n) for el in elements]
            rank = engine.dependence(polys, act, n).rank
            row["rank"] = rank
            row["match"] = count_match and rank == formula
        rows.append(row)
        listing[str(n)] = [poly_to_text(el.realize(n)) for el in elements]
    doc = {"command": "basis", "algebra": tag, "rows": rows, "elements": listing}
    return _exit_code(rows), doc, rows


def _hwv_rank_rows(arity: int) -> list[dict]:
    act = builtin_action("regular")
    rows = []

    def add(family, n, p, q, polys, expected):
        lin = [multilinearize(f) for f in polys]
        rank = engine.dependence(lin, act, arity).rank
        rows.append(
            {
                "family": family,
                "n": arity,
                "p": p,
                "q": q,
                "count": len(polys),
                "rank": rank,
                "expected": expected,
                "match": rank == expected,
            }
        )

    from .genpoly import hwv_family_list

    add("one-row", arity, None, None, hwv_family_list("row", n=arity), 2 * arity + 3)
    for p in range(1, arity // 2 + 1):
        q = arity - 2 * p
        if q >= 0:
            add("two-row", arity, p, q, hwv_family_list("two", p=p, q=q), 3 * (q + 1))
    for p in range(1, (arity - 1) // 2 + 1):
        q = arity - 2 * p - 1
        if q >= 0:
            add("three-row", arity, p, q, hwv_family_list("three", p=p, q=q), q + 1)
    return rows


def _cmd_hwv_rank(args, cfg: RunConfig):
    rows = []
    for n in _parse_n_range(cfg.n_spec):
        rows.extend(_hwv_rank_rows(n))
    doc = {"command": "hwv-rank", "algebra": "regular", "rows": rows}
    return _exit_code(rows), doc, rows


def _cmd_axioms(args, cfg: RunConfig):
    tag, act = _resolve_algebra(cfg.algebra)
    report = check_axioms(act)
    rows = [
        {"algebra": tag, "axiom": axiom, "at": ", ".join(triple), "match": False}
        for axiom, triple in report.violations
    ] or [{"algebra": tag, "axiom": "all", "at": "", "match": True}]
    doc = {
        "command": "axioms",
        "algebra": tag,
        "ok": report.ok,
        "violations": [
            {"axiom": axiom, "at": list(triple)} for axiom, triple in report.violations
        ],
    }
    return _exit_code(rows), doc, rows


_WITNESSES = (
    # (source text, identity of, not identity of)
    ("E22*x1", "F", "D"),
    ("[x1,x2] - [x1,x2,E22]", "D", "F"),
)


def _cmd_witness(args, cfg: RunConfig):
    rows = []
    for src, yes_tag, no_tag in _WITNESSES:
        poly = parse_poly(src)
        holds = engine.is_identity(poly, builtin_action(yes_tag))
        fails = engine.is_identity(poly, builtin_action(no_tag))
        rows.append(
            {
                "polynomial": src,
                "identity_of": yes_tag,
                "holds": holds,
                "not_identity_of": no_tag,
                "separates": not fails,
                "match": holds and not fails,
            }
        )
    doc = {"command": "witness", "rows": rows, "distinct_varieties": all(r["match"] for r in rows)}
    return _exit_code(rows), doc, rows


# ---------------------------------------------------------------------------
# The end-to-end verification suite.

_IDENTITY_SUITE = (
    ("regular", "[x1,x2] - [x1,x2,E22]", True),
    ("regular", "E22*[x1,x2]", True),
    ("regular", "[x1,x2] - [x1,x2]*E22", True),
    ("regular", "[x1,x2]*[x3,x4]", True),
    ("regular", "[x1,x2]*E12", True),
    ("regular", "E12*[x1,x2]", True),
    ("regular", "E22*x1", False),
    ("D", "E12*x1", True),
    ("D", "x1*E12", True),
    ("D", "[x1,x2] - [x1,x2,E22]", True),
    ("D", "E22*x1", False),
    ("F", "E22*x1", True),
    ("F", "x1*E22", True),
    ("F", "E12*x1", True),
    ("F", "x1*E12", True),
    ("F", "[x1,x2]*[x3,x4]", True),
    ("F", "[x1,x2] - [x1,x2,E22]", False),
)

_TRIVIAL_SUITE = (
    ("E22*x1*E22 - E22*x1", True),
    ("E12*x1*E12", True),
    ("x1", False),
)


def _random_tuple(rng: random.Random, n: int) -> dict[int, UTElement]:
    def scalar():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    return {i: UTElement(scalar(), scalar(), scalar()) for i in range(1, n + 1)}


def _cmd_verify(args, cfg: RunConfig):
    nmax = args.n_max
    rows = []

    def note(check, detail, ok):
        rows.append({"check": check, "detail": detail, "match": bool(ok)})

    for tag in ("regular", "D", "F"):
        act = builtin_action(tag)
        note("axioms", tag, check_axioms(act).ok)

    expected_span = {"regular": 5, "D": 3, "F": 1}
    for tag, want in expected_span.items():
        act = builtin_action(tag)
        dim = lr_span_dim(act)
        gc1 = engine.codimension(act, 1).value
        note("operator-span", "%s: dim=%d gc1=%d" % (tag, dim, gc1), dim == want == gc1)

    for src, want in _TRIVIAL_SUITE:
        note("trivial", src, is_trivial_linear(parse_poly(src)) is want)

    for tag in ("regular", "D", "F"):
        act = builtin_action(tag)
        for n in range(1, nmax + 1):
            value = engine.codimension(act, n, cap=cfg.cap).value
            note(
                "codim",
                "%s n=%d: %d" % (tag, n, value),
                value == canonical.codim_formula(n, tag),
            )

    for tag in ("regular", "D", "F"):
        act = builtin_action(tag)
        exact = engine.codimension(act, 2).value
        modular = engine.codimension(
            act, 2, "modular", seed=cfg.seed, prime_bits=cfg.prime_bits
        ).value
        note("modular-agreement", "%s n=2" % tag, exact == modular)

    for tag, src, want in _IDENTITY_SUITE:
        verdict = engine.is_identity(parse_poly(src), builtin_action(tag))
        note("identity", "%s: %s" % (tag, src), verdict is want)

    for src, yes_tag, no_tag in _WITNESSES:
        poly = parse_poly(src)
        ok = engine.is_identity(poly, builtin_action(yes_tag)) and not engine.is_identity(
            poly, builtin_action(no_tag)
        )
        note("witness", "%s separates %s from %s" % (src, yes_tag, no_tag), ok)

    for tag in ("regular", "D", "F"):
        for n in range(1, 9):
            count = len(canonical.enumerate_basis(n, tag))
            note(
                "basis-count",
                "%s n=%d: %d" % (tag, n, count),
                count == canonical.codim_formula(n, tag),
            )
        act = builtin_action(tag)
        for n in range(1, min(nmax, 4) + 1):
            polys = canonical.basis_polynomials(n, tag)
            rank = engine.dependence(polys, act, n).rank
            note(
                "basis-rank",
                "%s n=%d: %d" % (tag, n, rank),
                rank == canonical.codim_formula(n, tag),
            )

    for n in range(1, min(nmax, 4) + 1):
        for row in _hwv_rank_rows(n):
            note(
                "hwv-rank",
                "%s n=%d p=%s q=%s" % (row["family"], n, row["p"], row["q"]),
                row["match"],
            )

    for tag in ("regular", "D", "F"):
        act = builtin_action(tag)
        for n in range(2, min(nmax, 4) + 1):
            deco = symchar.cocharacter(act, n)
            ok = all(
                deco.multiplicities.get(lam, 0) == symchar.multiplicity_formula(tag, lam)
                for lam in symchar.partitions(n)
            )
            note("cocharacter", "%s n=%d" % (tag, n), ok)
            note(
                "dimension-sum",
                "%s n=%d" % (tag, n),
                deco.dimension() == engine.codimension(act, n).value,
            )

    rng = random.Random(cfg.seed)
    for tag in ("regular", "D", "F"):
        act = builtin_action(tag)
        polys = canonical.basis_polynomials(2, tag)
        fam = polys + [polys[0] + polys[-1].scale(2)]
        dep = engine.dependence(fam, act, 2)
        ok = len(dep.kernel) >= 1
        for vec in dep.kernel:
            combo = GenPolynomial.zero()
            for coeff, poly in zip(vec, fam):
                combo = combo + poly.scale(coeff)
            for _ in range(args.samples):
                if not engine.evaluate(combo, _random_tuple(rng, 2), act).is_zero():
                    ok = False
                    break
        note("kernel-vanishing", "%s n=2 (%d samples)" % (tag, args.samples), ok)

    summary_ok = all(r["match"] for r in rows)
    doc = {
        "command": "verify",
        "checks": len(rows),
        "failures": sum(1 for r in rows if not r["match"]),
        "ok": summary_ok,
        "rows": rows,
    }
    return _exit_code(rows), doc, rows


# ---------------------------------------------------------------------------
# Published output schemas (used by the test suite to validate documents).

_MATCH = {"type": ["boolean", "null"]}

SCHEMAS = {
    "codim": {
        "type": "object",
        "required": ["command", "algebra", "mode", "results"],
        "properties": {
            "command": {"const": "codim"},
            "algebra": {"type": "string"},
            "mode": {"enum": ["exact", "modular"]},
            "results": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["algebra", "n", "codim", "mode"],
                    "properties": {
                        "algebra": {"type": "string"},
                        "n": {"type": "integer", "minimum": 1},
                        "codim": {"type": "integer", "minimum": 0},
                        "mode": {"enum": ["exact", "modular"]},
                        "formula": {"type": "integer"},
                        "match": _MATCH,
                        "primes": {"type": "array", "items": {"type": "integer"}},
                    },
                },
            },
        },
    },
    "cochar": {
        "type": "object",
        "required": ["command", "algebra", "results"],
        "properties": {
            "command": {"const": "cochar"},
            "results": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["algebra", "n", "multiplicities"],
                    "properties": {
                        "algebra": {"type": "string"},
                        "n": {"type": "integer", "minimum": 1},
                        "multiplicities": {
                            "type": "object",
                            "patternProperties": {
                                r"^\[\d+(,\d+)*\]$": {"type": "integer", "minimum": 0}
                            },
                            "additionalProperties": False,
                        },
                        "formula_match": {"type": "boolean"},
                    },
                },
            },
        },
    },
    "check": {
        "type": "object",
        "required": ["command", "algebra", "identity"],
        "properties": {
            "command": {"const": "check"},
            "identity": {"type": "boolean"},
        },
    },
    "trivial": {
        "type": "object",
        "required": ["command", "trivial"],
        "properties": {"command": {"const": "trivial"}, "trivial": {"type": "boolean"}},
    },
    "basis": {
        "type": "object",
        "required": ["command", "algebra", "rows", "elements"],
        "properties": {
            "command": {"const": "basis"},
            "rows": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["n", "count", "formula", "match"],
                },
            },
            "elements": {
                "type": "object",
                "additionalProperties": {"type": "array", "items": {"type": "string"}},
            },
        },
    },
    "hwv-rank": {
        "type": "object",
        "required": ["command", "rows"],
        "properties": {
            "command": {"const": "hwv-rank"},
            "rows": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["family", "n", "rank", "expected", "match"],
                },
            },
        },
    },
    "axioms": {
        "type": "object",
        "required": ["command", "algebra", "ok", "violations"],
        "properties": {
            "command": {"const": "axioms"},
            "ok": {"type": "boolean"},
            "violations": {"type": "array"},
        },
    },
    "witness": {
        "type": "object",
        "required": ["command", "rows", "distinct_varieties"],
        "properties": {
            "command": {"const": "witness"},
            "distinct_varieties": {"type": "boolean"},
        },
    },
    "verify": {
        "type": "object",
        "required": ["command", "checks", "failures", "ok", "rows"],
        "properties": {
            "command": {"const": "verify"},
            "ok": {"type": "boolean"},
            "checks": {"type": "integer"},
            "failures": {"type": "integer"},
        },
    },
}


# ---------------------------------------------------------------------------
# Argument wiring.

def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="ut2gpi",
        description="Exact identities, codimensions and cocharacters of the "
        "2x2 upper triangular matrices under bimodule coefficient actions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, needs_n=False, default_n="1..4"):
        p.add_argument("--algebra", default="regular",
                       help="regular, D, F, or custom=<action.json>")
        if needs_n:
            p.add_argument("--n", dest="n_spec", default=default_n,
                           help="arity or range, e.g. 3 or 1..4")
        p.add_argument("--mode", choices=["exact", "modular"], default="exact")
        p.add_argument("--cap", type=int, default=None,
                       help="override the arity cap for the mode")
        p.add_argument("--format", dest="fmt", choices=["text", "json", "csv"],
                       default="text")
        p.add_argument("--output", default=None, help="write the document to a file")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for random primes and sample tuples")
        p.add_argument("--prime-bits", type=int, default=61,
                       help="bit size of the random modular primes")

    p = sub.add_parser("codim", help="quotient dimension table with formula check")
    common(p, needs_n=True)
    p = sub.add_parser("cochar", help="irreducible multiplicity table with formula check")
    common(p, needs_n=True, default_n="2..4")
    p = sub.add_parser("check", help="test a polynomial file for being an identity")
    p.add_argument("file", help="polynomial source file ('-' for stdin)")
    common(p)
    p = sub.add_parser("trivial", help="test a one-variable linear polynomial for vanishing")
    p.add_argument("file", help="polynomial source file ('-' for stdin)")
    common(p)
    p = sub.add_parser("basis", help="canonical basis dump and count check")
    common(p, needs_n=True)
    p.add_argument("--rank", action="store_true",
                   help="also certify the family rank by exact elimination")
    p = sub.add_parser("hwv-rank", help="independence ranks of the highest-weight families")
    common(p, needs_n=True, default_n="1..4")
    p = sub.add_parser("axioms", help="validate the bimodule axioms of an action table")
    common(p)
    p = sub.add_parser("witness", help="non-inclusion witnesses separating the D and F varieties")
    common(p)
    p = sub.add_parser("verify", help="run the whole property suite")
    common(p)
    p.add_argument("--n-max", type=int, default=4,
                   help="largest arity for the exact sweeps")
    p.add_argument("--samples", type=int, default=1000,
                   help="random tuples per kernel-vanishing check")
    return parser


_HANDLERS = {
    "codim": _cmd_codim,
    "cochar": _cmd_cochar,
    "check": _cmd_check,
    "trivial": _cmd_trivial,
    "basis": _cmd_basis,
    "hwv-rank": _cmd_hwv_rank,
    "axioms": _cmd_axioms,
    "witness": _cmd_witness,
    "verify": _cmd_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig(
            algebra=getattr(args, "algebra", "regular"),
            n_spec=getattr(args, "n_spec", "1..4"),
            mode=getattr(args, "mode", "exact"),
            cap=getattr(args, "cap", None),
            fmt=getattr(args, "fmt", "text"),
            output=getattr(args, "output", None),
            seed=getattr(args, "seed", 0),
            prime_bits=getattr(args, "prime_bits", 61),
        )
        code, doc, rows = _HANDLERS[args.command](args, cfg)
        _emit(doc, rows, cfg)
        return code
    except (UsageError, ParseError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    except (ResourceCapError, ModularMismatchError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
