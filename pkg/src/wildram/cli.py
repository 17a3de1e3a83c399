"""Batch front-end: ``wildram {breaks,lubin-tate,classify2,phi,sen}``.

Every command prints either a human-readable table or line-delimited JSON
records (``--format records``).  Exit codes:

0 success, 1 a checked property failed, 2 bad input,
3 precision exhausted, 4 certificate failed, 5 hypothesis flagged.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from .finite_field import FieldSpec
from .lubin_tate import CertificateFailure, Kind, construct_endomorphism, lt_reduce
from .nottingham import (
    Automorphism,
    BreakSequence,
    CharClass,
    char_classify_rank1,
    depth_i,
    height_profile,
    i_sequence,
    ram_index_rank1,
    sen_check,
)
from .power_series import Series, is_exhausted
from .ramification import (
    FiltrationTable,
    breaks_rank2,
    char_classify_rank2,
    depth_classify,
    phi_from_breaks,
    psi_eval,
    rank1_table,
    rank_two_profile,
    ram_index_rank2,
)

OK, FAILED, BAD_INPUT, EXHAUSTED, CERT_FAILED, HYPOTHESIS = 0, 1, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message: str, code: int = BAD_INPUT):
        super().__init__(message)
        self.code = code


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (CharClass, Kind)):
        return str(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def emit(records: list[dict], fmt: str, out=None) -> None:
    out = out or sys.stdout
    for rec in records:
        if fmt == "records":
            out.write(json.dumps(rec, default=_default) + "\n")
            continue
        out.write(f"[{rec.get('record', '')}]\n")
        for k, v in rec.items():
            if k == "record":
                continue
            if isinstance(v, (dict, list)):
                v = json.dumps(v, default=_default)
            out.write(f"  {k:<22} {v}\n")


def load_automorphism(path) -> tuple[Automorphism, dict]:
    try:
        series, prov = Series.read(path)
        return Automorphism(series), prov
    except FileNotFoundError as exc:
        raise CliError(f"cannot read {path}: no such file") from exc
    except (ValueError, KeyError) as exc:
        raise CliError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------


def rank1_report(seq: BreakSequence, window_start: int = 1) -> dict:
    rec = {"record": "breaks", "p": seq.p, "values": seq.values,
           "certified_to": seq.certified_to, "precision_used": seq.precision_used}
    if len(seq) >= 2:
        sen = sen_check(seq)
        rec["sen"] = "pass" if sen.passed else "fail"
        if sen.violation:
            rec["sen_violation"] = sen.violation
        prof = height_profile(seq)
        rec["height_ratios"] = [str(r) for r in prof.ratios]
        rec["height_log_ratios"] = [round(x, 6) for x in prof.log_ratios]
    if len(seq) >= 3:
        cls = char_classify_rank1(seq, window_start)
        rec["class"] = str(cls.label)
        rec["window_start"] = cls.window_start
        rec["evidence"] = cls.evidence
        if cls.label is CharClass.CHAR0:
            ri = ram_index_rank1(seq, window_start)
            rec["e"] = str(ri.e)
            rec["e_consistent"] = ri.consistent
    return rec


def cmd_breaks(args) -> tuple[list[dict], int]:
    sigma, prov = load_automorphism(args.input)
    if is_exhausted(depth_i(sigma)):
        raise CliError("identity automorphism (to the stored precision)")
    seq = i_sequence(sigma, args.nmax)
    rec = rank1_report(seq, args.window_start)
    rec["input"] = str(args.input)
    if prov:
        rec["provenance"] = prov
    code = OK
    if len(seq) < args.nmax + 1:
        rec["warning"] = f"precision {sigma.precision} exhausted after {len(seq)} certified values"
        code = EXHAUSTED
    if rec.get("sen") == "fail":
        code = FAILED
    return [rec], code


def cmd_lubin_tate(args) -> tuple[list[dict], int]:
    kind = Kind(args.kind)
    alphas = args.alpha or ["1+pi" if kind is Kind.RAMIFIED else "1+p"]
    out = Path(args.out) if args.out else None
    if out is not None and len(alphas) > 1:
        out.mkdir(parents=True, exist_ok=True)
    records, code = [], OK
    for k, alpha in enumerate(alphas):
        try:
            F = construct_endomorphism(kind, args.p, alpha, args.precision, pdigits=args.pdigits,
                                       max_pdigits=args.max_pdigits)
            sigma = lt_reduce(F)
        except CertificateFailure as exc:
            records.append({"record": "lubin-tate", "alpha": alpha, "certified": False, "error": str(exc)})
            code = max(code, CERT_FAILED)
            continue
        except (ValueError, SyntaxError, ZeroDivisionError) as exc:
            raise CliError(f"alpha={alpha!r}: {exc}") from exc
        ring = F.ctx.ring
        prov = {"kind": str(kind), "p": args.p, "pdigits": ring.pdigits, "alpha": alpha,
                "alpha_coords": ",".join(map(str, F.alpha.coords)), "N": args.precision,
                "min_digits": F.min_digits}
        rec = {"record": "lubin-tate", "alpha": alpha, "certified": F.certified,
               "commutes": F.commutes, "pdigits": ring.pdigits, "min_digits": F.min_digits,
               "residue_field": ring.residue_field.header()}
        if out is not None:
            path = out / f"sigma_{k}.series" if len(alphas) > 1 else out
            sigma.series.write(path, prov)
            rec["file"] = str(path)
        if is_exhausted(depth_i(sigma)):
            rec["warning"] = "degenerate: reduction is the identity to this precision"
            rec["values"] = []
        else:
            rec["values"] = i_sequence(sigma, args.nmax).values
        records.append(rec)
    return records, code


def cmd_classify2(args) -> tuple[list[dict], int]:
    sigma, _ = load_automorphism(args.inputs[0])
    tau, _ = load_automorphism(args.inputs[1])
    if sigma.ring != tau.ring:
        raise CliError("the two series live over different fields")
    for name, g in (("first", sigma), ("second", tau)):
        if is_exhausted(depth_i(g)):
            raise CliError(f"{name} input is the identity automorphism")
    prof = rank_two_profile(sigma, tau, args.nmax)
    rec = {"record": "classify2", "p": prof.p, "profile": prof.to_record()}
    if min(len(prof.seq_sigma), len(prof.seq_tau)) < 3:
        rec["error"] = "fewer than three certified values; raise --precision"
        return [rec], EXHAUSTED
    dep = depth_classify(prof)
    rec["depth"] = {"Depth1": 1, "Depth2": 2}.get(str(dep.pattern), str(dep.pattern))
    rec["gamma_parity"] = dep.gamma_parity
    rec["depth_agrees_with_gamma"] = dep.agrees
    rec["gamma"] = [str(prof.gamma1.value), str(prof.gamma2.value)]
    rec["gamma_stable"] = [prof.gamma1.stable, prof.gamma2.stable]
    cls = char_classify_rank2(prof, args.window_start)
    rec["class"] = str(cls.label)
    rec["class_window_start"] = cls.window_start

    bound = args.bound
    if bound is None:
        bound = max(prof.seq_sigma[1], prof.seq_tau[1])
    bound = min(bound, min(sigma.precision, tau.precision) - 2)
    table = breaks_rank2(sigma, tau, bound, level=args.level, max_level=args.max_level)
    rec["table"] = table.to_record()

    code = OK
    if table.degenerate or not table.certified:
        code = CERT_FAILED
    if cls.label is CharClass.CHAR0:
        ri = ram_index_rank2(prof, table)
        r = ri.to_record()
        rec.update({"e": r["e"], "branch": r["branch"], "a": r["a"], "log_ratio": r["log_ratio"],
                    "branch_identity": r["branch_identity"], "alignment_consistent": r["alignment_consistent"],
                    "hypothesis_flag": r["hypothesis_flag"],
                    "hypothesis_mismatches": r["hypothesis_mismatches"],
                    "e_filtration": r["e_filtration"]})
        if ri.error:
            rec["error"] = ri.error
            code = max(code, FAILED)
        if ri.hypothesis_flag and code == OK:
            code = HYPOTHESIS
    return [rec], code


def _fractions(items) -> list[Fraction]:
    try:
        return [Fraction(x) for x in items or []]
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(str(exc)) from exc


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def cmd_phi(args) -> tuple[list[dict], int]:
    if args.table:
        try:
            table = FiltrationTable.from_text(Path(args.table).read_text())
        except (OSError, ValueError, KeyError) as exc:
            raise CliError(f"{args.table}: {exc}") from exc
    elif args.series:
        sigma, _ = load_automorphism(args.series)
        table = rank1_table(i_sequence(sigma, args.nmax))
    elif args.breaks:
        if args.p is None:
            raise CliError("--breaks needs --p")
        breaks = _int_list(args.breaks)
        indices = _int_list(args.indices) if args.indices else [args.p ** (k + 1) for k in range(len(breaks))]
        if len(indices) != len(breaks):
            raise CliError("--breaks and --indices differ in length")
        table = FiltrationTable(list(zip(breaks, indices)), rank=1 if args.indices is None else 2, p=args.p)
    else:
        raise CliError("give one of --table, --series, --breaks")
    try:
        phi = phi_from_breaks(table, Fraction(args.horizon) if args.horizon else None)
        at = [(str(r), str(phi(r))) for r in _fractions(args.at)]
        psi = [(str(r), str(psi_eval(phi, r))) for r in _fractions(args.psi)]
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    rec = {"record": "phi", "table": table.entries, **phi.to_record(),
           "phi": dict(at), "psi": dict(psi)}
    return [rec], OK


def random_wild(spec: FieldSpec, precision: int, rng: random.Random) -> Automorphism:
    coeffs = [spec.zero_coords(), spec.one_coords()]
    coeffs += [spec.random_element(rng).coeffs for _ in range(2, precision + 1)]
    return Automorphism(Series.from_coeffs(spec, coeffs, precision))


def cmd_sen(args) -> tuple[list[dict], int]:
    records, failures = [], 0
    if args.inputs:
        items = [(str(path), load_automorphism(path)[0]) for path in args.inputs]
    else:
        spec = FieldSpec(args.p or 2, args.m)
        rng = random.Random(args.seed)
        items = [(f"random[{k}]", random_wild(spec, args.precision, rng)) for k in range(args.count)]
    checked = 0
    for name, sigma in items:
        seq = i_sequence(sigma, args.nmax)
        if len(seq) < 2:
            records.append({"record": "sen", "element": name, "values": seq.values, "skipped": True})
            continue
        rep = sen_check(seq)
        checked += 1
        failures += not rep.passed
        records.append({"record": "sen", "element": name, "values": seq.values,
                        "pass": rep.passed, "violation": rep.violation})
    records.append({"record": "sen-summary", "checked": checked, "failed": failures,
                    "seed": None if args.inputs else args.seed})
    return records, FAILED if failures else OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "records"), default="table")
    common.add_argument("--seed", type=int, default=20240601)
    common.add_argument("--nmax", type=int, default=2)
    common.add_argument("--window-start", type=int, default=1)

    ap = argparse.ArgumentParser(prog="wildram", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("breaks", parents=[common], help="break sequence and rank-1 analysis of a series file")
    b.add_argument("input")
    b.set_defaults(func=cmd_breaks)

    lt = sub.add_parser("lubin-tate", parents=[common], help="construct reduced [alpha] from a Lubin-Tate group")
    lt.add_argument("--kind", choices=[k.value for k in Kind], default="ramified")
    lt.add_argument("--p", type=int, default=3)
    lt.add_argument("--alpha", action="append", help="unit such as 1+pi, 1+p, 1+zeta*p, or 'a,b'")
    lt.add_argument("--precision", type=int, default=243)
    lt.add_argument("--pdigits", type=int, default=4)
    lt.add_argument("--max-pdigits", type=int, default=64)
    lt.add_argument("--out", help="output file (one alpha) or directory (several)")
    lt.set_defaults(func=cmd_lubin_tate)

    c = sub.add_parser("classify2", parents=[common], help="rank-2 analysis of a pair of series files")
    c.add_argument("inputs", nargs=2)
    c.add_argument("--bound", type=int)
    c.add_argument("--level", type=int, default=2)
    c.add_argument("--max-level", type=int, default=4)
    c.set_defaults(func=cmd_classify2)

    ph = sub.add_parser("phi", parents=[common], help="Hasse-Herbrand function of a filtration")
    ph.add_argument("--table", help="FiltrationTable record file")
    ph.add_argument("--series", help="series file; uses the rank-1 filtration of its breaks")
    ph.add_argument("--breaks", help="comma-separated lower breaks")
    ph.add_argument("--indices", help="comma-separated indices after each break (default p^(k+1))")
    ph.add_argument("--p", type=int)
    ph.add_argument("--horizon")
    ph.add_argument("--at", action="append", help="evaluate phi at this rational")
    ph.add_argument("--psi", action="append", help="evaluate psi at this rational")
    ph.set_defaults(func=cmd_phi)

    s = sub.add_parser("sen", parents=[common], help="Sen congruence on files or random automorphisms")
    s.add_argument("inputs", nargs="*")
    s.add_argument("--p", type=int, default=2)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--count", type=int, default=50)
    s.add_argument("--precision", type=int, default=300)
    s.set_defaults(func=cmd_sen)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "precision", 2) < 2 or args.nmax < 0:
        print("error: need --precision >= 2 and --nmax >= 0", file=sys.stderr)
        return BAD_INPUT
    try:
        records, code = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    emit(records, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
