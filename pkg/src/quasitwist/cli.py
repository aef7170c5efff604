"""Command-line front end.

One executable, ten subcommands: factor, cc-list, partition, assemble,
mindist, props, extend, search, verify-tables, classify.  Every command is a
thin wrapper over the library; all output ordering is deterministic.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
exhausted before certification.
"""

import argparse
import json
import sys
from types import SimpleNamespace

from .constacyclic import cc_enumerate
from .distance import DEFAULT_BUDGET, min_distance
from .equivalence import partition_all
from .errors import DimensionDefect, QuasitwistError
from .fields import SUPPORTED_Q, field_make
from .linear import extend, is_dual_containing, is_lcd, is_reversible, is_self_orthogonal
from .polys import Poly, binomial_factor
from .qt import FORMS, TWO_GEN_P1, qt_assemble, spec_1gen, spec_2gen
from .search import SearchConfig, classify, read_targets, run_campaign
from .tables import (
    _PARAMS_RE,
    load_golden,
    load_witnesses,
    parse_coeffs,
    render_coeffs,
    verify_row,
)

EX_OK = 0
EX_VERIFY = 1
EX_USAGE = 2
EX_BUDGET = 3

# Tier policy for verify-tables when --tier auto: rows this size certify d
# exactly in seconds-to-minutes; anything larger runs the witness-backed
# quick check instead.
_FULL_K = 40
_FULL_N = 105


def _shift_index(field, name):
    a = field.index_of_name(name)
    return a


def _f_list(field, text):
    if not text:
        return ()
    return tuple(parse_coeffs(part.strip(), field) for part in text.split(","))


def _spec_from_args(args, field):
    a = _shift_index(field, args.shift)
    g = parse_coeffs(args.g, field)
    p = parse_coeffs(args.p, field)
    f1 = _f_list(field, args.f1)
    f2 = _f_list(field, args.f2)
    if args.form == "OneGen":
        return spec_1gen(field, args.m, a, g, f1)
    return spec_2gen(field, args.m, a, g, p, f1, f2, form=args.form)


def _print_matrix(G):
    names = G.field.names
    for row in G.array:
        print("".join(names[int(c)] for c in row))


def _cmd_factor(args):
    field = field_make(args.field)
    a = _shift_index(field, args.shift)
    parts = []
    for phi, e in binomial_factor(field, args.m, a):
        s = render_coeffs(phi)
        parts.append(f"({s})" + (f"^{e}" if e > 1 else ""))
    lhs = f"x^{args.m} - {field.names[a]}" if a != 0 else f"x^{args.m}"
    print(f"{lhs} over GF({field.q}) = {' '.join(parts)}")
    return EX_OK


def _cmd_cc_list(args):
    field = field_make(args.field)
    a = _shift_index(field, args.shift)
    codes = cc_enumerate(field, args.m, a)
    for c in codes:
        print(f"k={c.k:<3d} g={render_coeffs(c.g)}")
    print(f"{len(codes)} codes")
    return EX_OK


def _cmd_partition(args):
    field = field_make(args.field)
    a = _shift_index(field, args.shift)
    classes = partition_all(field, args.m, a, mode=args.mode)
    for i, cls in enumerate(classes):
        members = ",".join(render_coeffs(g) for g in cls.members)
        print(f"class {i}: rep={render_coeffs(cls.representative)} "
              f"size={len(cls)} members={members}")
    print(f"{len(classes)} classes")
    return EX_OK


def _assemble_from_args(args, field):
    spec = _spec_from_args(args, field)
    return qt_assemble(spec, allow_defect=getattr(args, "allow_defect", False))


def _cmd_assemble(args):
    field = field_make(args.field)
    code = _assemble_from_args(args, field)
    spec = code.spec
    print(f"[{code.n},{code.rank}]_{field.q} form={spec.form} "
          f"a={field.names[spec.a]} m={spec.m} ell={spec.ell} "
          f"k1={code.k1} k2={code.k2} rank={code.rank} "
          f"distance_floor={code.distance_floor}")
    if args.matrix:
        _print_matrix(code.matrix)
    return EX_OK


def _cmd_mindist(args):
    field = field_make(args.field)
    code = _assemble_from_args(args, field)
    budget = args.budget or DEFAULT_BUDGET
    res = min_distance(code.matrix, budget=budget, threads=args.threads)
    wit = "".join(field.names[int(c)] for c in res.witness)
    print(f"[{code.n},{code.rank}]_{field.q} lower={res.lower} upper={res.upper} "
          f"status={res.status} work={res.work} elapsed={res.elapsed:.2f}s")
    print(f"witness={wit}")
    return EX_OK if res.is_exact else EX_BUDGET


def _cmd_props(args):
    field = field_make(args.field)
    code = _assemble_from_args(args, field)
    G = code.matrix
    print(f"[{code.n},{code.rank}]_{field.q} "
          f"lcd={str(is_lcd(G)).lower()} "
          f"dual_containing={str(is_dual_containing(G)).lower()} "
          f"self_orthogonal={str(is_self_orthogonal(G)).lower()} "
          f"reversible={str(is_reversible(G)).lower()}")
    return EX_OK


def _cmd_extend(args):
    field = field_make(args.field)
    code = _assemble_from_args(args, field)
    ext = extend(code.matrix)
    budget = args.budget or DEFAULT_BUDGET
    res = min_distance(ext, budget=budget, threads=args.threads)
    print(f"[{ext.array.shape[1]},{code.rank},{res.upper}]_{field.q} "
          f"lower={res.lower} status={res.status} work={res.work}")
    return EX_OK if res.is_exact else EX_BUDGET


def _cmd_search(args):
    with open(args.config) as fh:
        raw = json.load(fh)
    if args.seed is not None:
        raw["seed"] = args.seed
    if args.budget is not None:
        raw["budget"] = args.budget
    if args.targets is not None:
        raw["target_table"] = args.targets
    config = SearchConfig(**raw)
    ledger = run_campaign(
        config,
        ledger_path=args.ledger,
        checkpoint_path=args.checkpoint,
        workers=args.threads,
    )
    for rec in ledger:
        flags = ",".join(rec.properties) or "-"
        print(f"{rec.params} {rec.d_status} {rec.classification} "
              f"a={rec.a} g={rec.g} p={rec.p} "
              f"f1={','.join(rec.f1)} f2={','.join(rec.f2) or '-'} [{flags}]")
    s = ledger.stats
    print(f"items={s.items} candidates={s.candidates} emitted={s.emitted} "
          f"pruned={s.pruned_by_probe} rank_defects={s.rank_defects} "
          f"precondition_skips={s.precondition_skips}")
    return EX_OK


def _row_tier(row, tier_flag):
    if tier_flag in ("quick", "full"):
        return tier_flag
    return "full" if (row.k <= _FULL_K and row.n <= _FULL_N) else "quick"


def _cmd_verify_tables(args):
    witnesses = load_witnesses()
    rows = load_golden()
    failed = passed = skipped = 0
    for row in rows:
        if row.quarantined:
            skipped += 1
            print(f"SKIP {row.params} [{row.source}] quarantined")
            continue
        tier = _row_tier(row, args.tier)
        wit = witnesses.get((row.params, row.source)) if tier == "quick" else None
        report = verify_row(
            row, tier=tier, witness=wit, budget=args.budget, threads=args.threads
        )
        if report.ok:
            passed += 1
            print(f"PASS {report}")
        else:
            failed += 1
            print(f"FAIL {report}")
    print(f"{passed} passed, {failed} failed, {skipped} skipped (quarantined)")
    return EX_OK if failed == 0 else EX_VERIFY


def _cmd_classify(args):
    m = _PARAMS_RE.fullmatch(args.params.strip())
    if m is None:
        print(f"cannot parse parameters {args.params!r}; "
              f"expected [n,k,d]_q", file=sys.stderr)
        return EX_USAGE
    n, k, d, q = (int(m.group(i)) for i in range(1, 5))
    if args.targets is None:
        print("classify needs --targets", file=sys.stderr)
        return EX_USAGE
    targets = read_targets(args.targets)
    record = SimpleNamespace(q=q, n=n, k=k, d_upper=d)
    verdict = classify(record, targets)
    best = targets.get((q, n, k))
    against = f"d_best={best}" if best is not None else "no target"
    print(f"[{n},{k},{d}]_{q} vs {against} -> {verdict}")
    return EX_OK


def _add_spec_args(sub):
    sub.add_argument("--m", type=int, required=True, help="block length m")
    sub.add_argument("--shift", default="1", help="shift constant a (element name)")
    sub.add_argument("--form", choices=FORMS, default=TWO_GEN_P1)
    sub.add_argument("--g", default="1", help="g coefficients, ascending powers")
    sub.add_argument("--p", default="1", help="p coefficients (2-generator forms)")
    sub.add_argument("--f1", required=True, help="comma-separated f1 coefficients")
    sub.add_argument("--f2", default="", help="comma-separated f2 coefficients")
    sub.add_argument("--allow-defect", action="store_true",
                     help="accept a rank-defective assembly")


def _global_flags(parser, top):
    # The same flags are registered on the main parser (with real defaults)
    # and on every subparser (defaults suppressed, so a flag given after the
    # command name overrides without clobbering one given before it).
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    parser.add_argument("--field", type=int, default=d(2),
                        choices=sorted(SUPPORTED_Q), help="field size q")
    parser.add_argument("--seed", type=int, default=d(None),
                        help="campaign seed override")
    parser.add_argument("--budget", type=int, default=d(None),
                        help="distance enumeration budget")
    parser.add_argument("--threads", type=int, default=d(1), help="worker count")
    parser.add_argument("--tier", choices=["auto", "quick", "full"],
                        default=d("auto"), help="verification tier policy")
    parser.add_argument("--ledger", default=d(None), metavar="PATH",
                        help="JSONL ledger path for search")
    parser.add_argument("--targets", default=d(None), metavar="PATH",
                        help="best-known-distance CSV (q,n,k,d_best)")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="quasitwist",
        description="Construct, verify and search quasi-twisted codes.",
    )
    _global_flags(ap, top=True)

    sp = ap.add_subparsers(dest="command", required=True)

    p = sp.add_parser("factor", help="factor x^m - a over GF(q)")
    p.add_argument("m", type=int)
    p.add_argument("--shift", default="1")
    p.set_defaults(fn=_cmd_factor)

    p = sp.add_parser("cc-list", help="enumerate constacyclic codes of length m")
    p.add_argument("m", type=int)
    p.add_argument("--shift", default="1")
    p.set_defaults(fn=_cmd_cc_list)

    p = sp.add_parser("partition", help="equivalence classes of CC codes")
    p.add_argument("m", type=int)
    p.add_argument("--shift", default="1")
    p.add_argument("--mode", choices=["multiplier", "refined"], default="multiplier")
    p.set_defaults(fn=_cmd_partition)

    p = sp.add_parser("assemble", help="build a QT code and print its shape")
    _add_spec_args(p)
    p.add_argument("--matrix", action="store_true", help="print the generator matrix")
    p.set_defaults(fn=_cmd_assemble)

    p = sp.add_parser("mindist", help="minimum distance of an assembled QT code")
    _add_spec_args(p)
    p.set_defaults(fn=_cmd_mindist)

    p = sp.add_parser("props", help="duality property flags of an assembled QT code")
    _add_spec_args(p)
    p.set_defaults(fn=_cmd_props)

    p = sp.add_parser("extend", help="append an overall parity coordinate, then mindist")
    _add_spec_args(p)
    p.set_defaults(fn=_cmd_extend)

    p = sp.add_parser("search", help="run a campaign from a JSON config")
    p.add_argument("config", help="SearchConfig as a JSON file")
    p.add_argument("--checkpoint", default=None, help="campaign cursor file")
    p.set_defaults(fn=_cmd_search)

    p = sp.add_parser("verify-tables", help="re-derive every golden table row")
    p.set_defaults(fn=_cmd_verify_tables)

    p = sp.add_parser("classify", help="compare [n,k,d]_q against the target table")
    p.add_argument("params", help="parameter string like [39,24,6]_2")
    p.set_defaults(fn=_cmd_classify)

    for name, sub in sp.choices.items():
        _global_flags(sub, top=False)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except DimensionDefect as exc:
        print(f"dimension defect: {exc}", file=sys.stderr)
        return EX_VERIFY
    except QuasitwistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_USAGE


if __name__ == "__main__":
    sys.exit(main())
