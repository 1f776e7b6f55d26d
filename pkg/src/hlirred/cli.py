"""Command-line front end.

Exit codes: 0 success (whatever the conclusion), 2 unreadable or invalid
input, 3 resource cap exceeded, 4 rule unavailable under ``--strict``.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from .criteria import Conclusion, verdict
from .diagram import DiagramError, genus_and_type, read_diagram, wirtinger
from .homcount import DEFAULT_ORBIT_CAP, IMAGE_TYPES, CapExceeded, classify_homs, count_homs, default_jobs, ks_burnside
from .permgroup import GroupError, builtin_group, read_group_file
from .presentation import CatalogError, PresentationError, abelianization, format_presentation, load_catalog, read_presentation

EXIT_PARSE, EXIT_CAP, EXIT_STRICT = 2, 3, 4


class UsageError(Exception):
    pass


def resolve_group(spec: str):
    if spec.startswith("file:"):
        return read_group_file(spec[5:])
    return builtin_group(spec)


def resolve_catalog(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    data = resources.files("hlirred") / "data"
    for bundled in (data / p.name, data / "examples" / p.name):
        if bundled.is_file():
            return Path(str(bundled))
    raise FileNotFoundError(f"no such catalog: {path}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=False)


def _image_order(counts) -> list[str]:
    # labels outside the fixed list (Z6, Z2xZ4, ...) sort just before "full"
    full = IMAGE_TYPES.index("full")
    return sorted(counts, key=lambda t: (IMAGE_TYPES.index(t) if t in IMAGE_TYPES else full - 0.5, t))


def cmd_homs(args) -> int:
    if bool(args.pres) == bool(args.diagram):
        raise UsageError("give exactly one of --pres or --diagram")
    P = read_presentation(args.pres) if args.pres else wirtinger(read_diagram(args.diagram))
    G = resolve_group(args.group)
    rank, torsion = abelianization(P)
    ks_w = count_homs(P, G, jobs=args.jobs)
    burnside = ks_burnside(P, G, jobs=args.jobs)
    census = None
    if not args.no_orbits:
        if ks_w > args.cap:
            raise CapExceeded(f"{ks_w} homomorphisms exceed the orbit cap {args.cap}; use --no-orbits")
        census = classify_homs(P, G, cap=args.cap)
    ks = census.conjugacy_orbit_count if census else burnside
    if census and census.conjugacy_orbit_count != burnside:
        print(f"error: orbit count {ks} disagrees with Burnside count {burnside}", file=sys.stderr)
        return 1
    if args.json:
        out = {
            "group": G.name,
            "order": G.order,
            "generators": P.rank,
            "relators": len(P.relators),
            "abelianization": {"free_rank": rank, "torsion": torsion},
            "ks_w": ks_w,
            "ks": ks,
            "ks_burnside": burnside,
        }
        if census:
            out["ks_orbits"] = census.conjugacy_orbit_count
            order = _image_order(census.by_image_type)
            out["homs_by_image"] = {t: census.by_image_type[t] for t in order}
            out["classes_by_image"] = {t: census.orbits_by_image_type[t] for t in order}
            out["surjective_classes"] = census.surjective_orbits
        print(_dump(out))
        return 0
    tors = "".join(f" + Z/{t}" for t in torsion)
    print(f"group {G.name} (order {G.order}); {P.rank} generators, {len(P.relators)} relators; H1 = Z^{rank}{tors}")
    print(f"ks_w={ks_w}")
    if census:
        print(f"ks={ks} (orbits={census.conjugacy_orbit_count}, burnside={burnside})")
        print(f"{'image':<8} {'homs':>10} {'classes':>8}")
        for label in _image_order(census.by_image_type):
            print(f"{label:<8} {census.by_image_type[label]:>10} {census.orbits_by_image_type[label]:>8}")
        print(f"surjective classes={census.surjective_orbits}")
    else:
        print(f"ks={ks} (burnside)")
    return 0


def _ks_for(record, jobs: int) -> dict:
    ks = dict(record.ks)
    P = record.source_presentation()
    if P is not None:
        for name in ("A4", "A5"):
            if name not in ks:
                ks[name] = ks_burnside(P, builtin_group(name), jobs=jobs)
    return ks


def _audit_lines(v) -> list[str]:
    lines = [f"{v.name}: type {list(v.rule.type_vector)}, genus {v.rule.genus}, rank {v.rule.rank}",
             f"  rule: {v.rule.describe()}"]
    for cid, res in v.results.items():
        trials = ", ".join(f"k={t.k}: {t.dividend} mod {t.modulus} = {t.dividend % t.modulus}" for t in res.trials)
        state = f"satisfied (k in {{{', '.join(map(str, res.witnesses))}}})" if res.satisfied else "failed"
        lines.append(f"  {cid} {state}; {trials}")
    lines.append(f"  {v.summary()}")
    return lines


def cmd_verdict(args) -> int:
    records = load_catalog(resolve_catalog(args.catalog))
    if args.all:
        chosen = records
    else:
        if not args.names:
            raise UsageError("name a record or pass --all")
        by_name = {r.name: r for r in records}
        missing = [n for n in args.names if n not in by_name]
        if missing:
            raise UsageError(f"no record named {', '.join(missing)}")
        chosen = [by_name[n] for n in args.names]
    verdicts = [verdict(r, _ks_for(r, args.jobs)) for r in chosen]
    if args.json:
        print(_dump([v.to_json() for v in verdicts]))
    elif args.all:
        width = max((len(v.name) for v in verdicts), default=4)
        for v in verdicts:
            print(f"{v.name:<{width}}  {v.summary()}")
    else:
        for v in verdicts:
            print("\n".join(_audit_lines(v)))
    if args.strict and any(v.conclusion is Conclusion.UNAVAILABLE for v in verdicts):
        return EXIT_STRICT
    return 0


TABLE_HEADER = ("name", "rank", "ks_A4", "A4", "ks_A5", "A5")


def cmd_table(args) -> int:
    records = load_catalog(resolve_catalog(args.catalog))
    rows = []
    for r in records:
        ks = _ks_for(r, args.jobs)
        v = verdict(r, ks)
        marks = v.marks or {"A4": "n.a.", "A5": "n.a."}
        rows.append((r.name, str(r.rank), str(ks.get("A4", "-")), marks.get("A4", "n.a."),
                     str(ks.get("A5", "-")), marks.get("A5", "n.a.")))
    if args.json:
        print(_dump([dict(zip(TABLE_HEADER, row)) for row in rows]))
        return 0
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(TABLE_HEADER)]
    print("  ".join(h.ljust(w) for h, w in zip(TABLE_HEADER, widths)).rstrip())
    for row in rows:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return 0


def cmd_wirtinger(args) -> int:
    D = read_diagram(args.diagram)
    g, tv = genus_and_type(D)
    tv_text = "[" + ",".join(map(str, tv)) + "]"
    sys.stdout.write(format_presentation(wirtinger(D), comment=f"genus {g}, type {tv_text}"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hlirred", description="ks-invariants and irreducibility tests for handlebody links")
    sub = parser.add_subparsers(dest="command", required=True)

    def jobs_flag(p):
        p.add_argument("--jobs", type=int, default=default_jobs(), help="worker processes (default: $HLIRRED_JOBS or 1)")

    p = sub.add_parser("homs", help="count homomorphisms into a finite group")
    p.add_argument("--pres", help="presentation file")
    p.add_argument("--diagram", help="spine diagram file (uses its Wirtinger presentation)")
    p.add_argument("--group", default="A4", help="A4, A5, V4, Zn:<n>, Sn:<n>, An:<n> or file:<path>")
    p.add_argument("--cap", type=int, default=DEFAULT_ORBIT_CAP, help="largest hom set to materialize for orbits")
    p.add_argument("--no-orbits", action="store_true", help="skip materialization; ks from Burnside only")
    p.add_argument("--json", action="store_true")
    jobs_flag(p)
    p.set_defaults(func=cmd_homs)

    p = sub.add_parser("verdict", help="irreducibility verdicts for catalog records")
    p.add_argument("--catalog", required=True)
    p.add_argument("names", nargs="*")
    p.add_argument("--all", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--strict", action="store_true", help="exit 4 if any rule is unavailable")
    jobs_flag(p)
    p.set_defaults(func=cmd_verdict)

    p = sub.add_parser("table", help="print a catalog as a criteria table")
    p.add_argument("--catalog", required=True)
    p.add_argument("--json", action="store_true")
    jobs_flag(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("wirtinger", help="print the Wirtinger presentation of a diagram")
    p.add_argument("diagram")
    p.set_defaults(func=cmd_wirtinger)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1 or getattr(args, "cap", 1) < 1:
        print("error: --jobs and --cap must be at least 1", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (OSError, PresentationError, DiagramError, CatalogError, GroupError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
