"""Command-line front end.

Exit codes: 0 success, 1 usage or domain error, 2 disagreement between the
congruence criterion and the Dedekind oracle.  Machine-readable output goes
to stdout (or --out); progress goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import census as cen
from .arith import prime_divisors
from . import criterion as crit
from . import dedekind as ded
from . import density as dens
from .errors import DomainError

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH = 0, 1, 2
WORKERS_ENV = "PUREMONO_WORKERS"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad arguments; 2 is reserved for mismatches
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class CliConfig:
    format: str = "json"
    tolerance: float | None = None
    segment_size: int = cen.DEFAULT_SEGMENT
    workers: int = 1
    out: str | None = None

    def validate(self) -> CliConfig:
        if self.format not in ("json", "csv", "table"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.workers < 1:
            raise UsageError("workers must be >= 1")
        if self.segment_size < 1:
            raise UsageError("segment size must be >= 1")
        return self


def load_config_file(path: str) -> dict:
    """Parse a key=value file; '#' starts a comment, keys use CliConfig field names."""
    known = {f.name: f for f in fields(CliConfig)}
    out: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in known:
            raise UsageError(f"{path}:{lineno}: bad config line {raw!r}")
        value = value.strip()
        if key in ("workers", "segment_size"):
            out[key] = int(value)
        elif key == "tolerance":
            out[key] = float(value)
        else:
            out[key] = value
    return out


def build_config(args: argparse.Namespace) -> CliConfig:
    # precedence: flag > environment > config file > per-command default
    cfg = CliConfig(format=getattr(args, "default_format", "json"))
    if args.config:
        cfg = replace(cfg, **load_config_file(args.config))
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            cfg.workers = int(env)
        except ValueError:
            raise UsageError(f"{WORKERS_ENV} must be an integer") from None
    for name in ("format", "tolerance", "segment_size", "workers", "out"):
        value = getattr(args, name, None)
        if value is not None:
            setattr(cfg, name, value)
    return cfg.validate()


# ---------------------------------------------------------------------------
# rendering


def _table(doc, indent: int = 0) -> str:
    pad = " " * indent
    lines = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(_table(v, indent + 2))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(doc, list):
        for item in doc:
            if isinstance(item, dict):
                lines.append(f"{pad}- " + ", ".join(f"{k}={_scalar(v)}" for k, v in item.items()))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    return "\n".join(lines)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return ", ".join(map(str, v)) if v else "-"
    if isinstance(v, dict):
        return json.dumps(v)
    return str(v)


def _csv(doc) -> str:
    rows = doc if isinstance(doc, list) else [doc]
    flat = [_flatten(r) for r in rows]
    keys = list(dict.fromkeys(k for r in flat for k in r))
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
    w.writeheader()
    w.writerows(flat)
    return buf.getvalue().rstrip("\n")


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = ";".join(json.dumps(x) if isinstance(x, (dict, list)) else str(x) for x in v)
        else:
            out[key] = v
    return out


def emit(doc, cfg: CliConfig, csv_rows=None) -> None:
    if cfg.format == "json":
        text = json.dumps(doc, indent=2)
    elif cfg.format == "csv":
        text = _csv(csv_rows if csv_rows is not None else doc)
    else:
        text = _table(doc)
    if cfg.out:
        Path(cfg.out).write_text(text + "\n")
    else:
        print(text)


def progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


# ---------------------------------------------------------------------------
# commands


def cmd_check(args, cfg) -> int:
    if args.m == 0:
        raise DomainError("m must be nonzero")
    report = crit.is_alpha_monogenic(args.n, args.m)
    doc = report.to_dict()
    doc["poly_discriminant"] = crit.poly_discriminant(args.n, args.m)
    if report.verdict:
        doc["field_discriminant"] = doc["poly_discriminant"]
    status = EXIT_OK
    if args.oracle or args.certificate is not None:
        if not report.irreducible:
            doc["oracle"] = None
        else:
            certs = []
            support = set()
            for p in prime_divisors(args.n * args.m):
                divides, cert = ded.dedekind_index_divides(args.n, args.m, p)
                certs.append(cert)
                if divides:
                    support.add(p)
            oracle = not support
            doc["oracle"] = {
                "verdict": oracle,
                "index_primes": sorted(support),
                "agrees": oracle == report.verdict,
            }
            if oracle != report.verdict:
                progress(f"MISMATCH: criterion={report.verdict} oracle={oracle}")
                status = EXIT_MISMATCH
            if args.certificate is not None:
                cert_doc = [c.to_dict() for c in certs]
                if args.certificate == "-":
                    doc["certificates"] = cert_doc
                else:
                    Path(args.certificate).write_text(json.dumps(cert_doc, indent=2) + "\n")
    emit(doc, cfg)
    return status


def cmd_density(args, cfg) -> int:
    if (args.mod is None) != (args.res is None):
        raise UsageError("--mod and --res must be given together")
    if args.mod is None:
        d = dens.delta_n(args.n)
        doc = {"n": args.n, "density": d.to_dict(), "pi_form": d.pi_form()}
    else:
        d = dens.ap_density(args.n, args.mod, args.res)
        doc = {
            "n": args.n,
            "modulus": args.mod,
            "residue": args.res % args.mod,
            "squarefree_density": dens.sf_ap_density(args.mod, args.res).to_dict(),
            "local_factors": [
                {"p": f.p, "depth": f.depth, "value": str(f.value)}
                for f in (dens.local_factor(p, args.mod, args.res) for p in prime_divisors(args.n))
            ],
            "density": d.to_dict(),
            "pi_form": d.pi_form(),
        }
    doc["refinement_modulus"] = dens.refinement_modulus(args.n)
    emit(doc, cfg)
    return EXIT_OK


def cmd_good_classes(args, cfg) -> int:
    g = dens.full_ap_modulus(args.n)
    doc = g.to_dict()
    doc["class_density"] = dens.sf_ap_density(g.modulus, min(g.good_classes)).to_dict() if g.good_classes else None
    emit(doc, cfg)
    return EXIT_OK


def cmd_failures(args, cfg) -> int:
    dist = dens.failure_distribution(args.n)
    doc = {
        "n": args.n,
        "subsets": [
            {"S": sorted(S), "density": d.to_dict()}
            for S, d in sorted(dist.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
        ],
        "expected_failures": str(dens.expected_failures(args.n)),
    }
    if args.limit:
        progress(f"failure histogram n={args.n} X={args.limit}")
        h = cen.failure_histogram(args.n, args.limit, segment_size=cfg.segment_size, workers=cfg.workers)
        doc["empirical"] = h.to_dict()
    emit(doc, cfg, csv_rows=doc["subsets"])
    return EXIT_OK


def _census_doc(res: cen.CensusResult) -> dict:
    return res.to_dict()


def cmd_census(args, cfg) -> int:
    modes = sum(x is not None for x in (args.limit, args.disc_bound))
    if modes != 1:
        raise UsageError("give exactly one of --limit or --disc-bound")
    if (args.mod is None) != (args.res is None):
        raise UsageError("--mod and --res must be given together")
    kw = dict(segment_size=cfg.segment_size, workers=cfg.workers)
    t0 = time.perf_counter()
    if args.disc_bound is not None:
        if args.mod is not None:
            raise UsageError("--mod/--res cannot be combined with --disc-bound")
        if args.disc_bound < 0:
            raise UsageError("--disc-bound must be >= 0")
        progress(f"disc census n={args.n} Y={args.disc_bound}")
        res = cen.disc_census(args.n, args.disc_bound, **kw)
    else:
        if args.limit < 0:
            raise UsageError("--limit must be >= 0")
        if args.mod is not None:
            progress(f"AP census n={args.n} q={args.mod} a={args.res} X={args.limit}")
            res = cen.ap_census(args.n, args.mod, args.res, args.limit, tolerance=cfg.tolerance, **kw)
        else:
            progress(f"interval census n={args.n} X={args.limit} sides={args.sides}")
            res = cen.interval_census(args.n, args.limit, args.sides, tolerance=cfg.tolerance, **kw)
    progress(f"done in {time.perf_counter() - t0:.2f}s")
    emit(_census_doc(res), cfg)
    return EXIT_OK


def cmd_disc_census(args, cfg) -> int:
    args.limit = None
    args.mod = args.res = None
    return cmd_census(args, cfg)


def cmd_sweep(args, cfg) -> int:
    if args.hi < args.lo:
        raise UsageError("--hi must be >= --lo")
    rows = cen.sweep(args.n, args.lo, args.hi, segment_size=cfg.segment_size)
    if cfg.format == "json":
        emit([r.to_dict() for r in rows], cfg)
        return EXIT_OK
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            k = cen.write_sweep_csv(rows, fh)
    else:
        k = cen.write_sweep_csv(rows, sys.stdout)
    progress(f"{k} rows")
    return EXIT_OK


def run_verification(n_max: int, m_max: int, n_min: int = 2):
    """Compare criterion and oracle on every irreducible case; return (checked, mismatches)."""
    checked = 0
    mismatches = []
    for n in range(n_min, n_max + 1):
        for m in range(-m_max, m_max + 1):
            if m == 0 or not crit.is_irreducible_pure(n, m):
                continue
            checked += 1
            expected = crit.is_alpha_monogenic(n, m).verdict
            got = ded.oracle_is_monogenic(n, m)
            if expected != got:
                mismatches.append({"n": n, "m": m, "criterion": expected, "oracle": got})
    return checked, mismatches


def cmd_verify(args, cfg) -> int:
    if args.n_max < 2 or args.m_max < 1:
        raise UsageError("need --n-max >= 2 and --m-max >= 1")
    progress(f"verifying 2 <= n <= {args.n_max}, 0 < |m| <= {args.m_max}")
    t0 = time.perf_counter()
    checked, mismatches = run_verification(args.n_max, args.m_max)
    doc = {
        "n_max": args.n_max,
        "m_max": args.m_max,
        "checked": checked,
        "mismatches": mismatches,
        "seconds": round(time.perf_counter() - t0, 3),
    }
    emit(doc, cfg)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_teichmuller(args, cfg) -> int:
    b = crit.frobenius_fixed_classes(args.p)
    doc = b.to_dict()
    doc["unit_classes"] = sorted(b.unit_classes)
    emit(doc, cfg)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"))
    common.add_argument("--out", help="write the document here instead of stdout")
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--workers", type=int)
    common.add_argument("--segment-size", type=int)
    common.add_argument("--tolerance", type=float, help="absolute tolerance for census checks")

    parser = _Parser(prog="puremono", description="alpha-monogeneity of pure fields Q(m^(1/n))")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="decide one (n, m)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="also run the Dedekind oracle")
    p.add_argument("--certificate", nargs="?", const="-", help="dump Dedekind certificates (to PATH or inline)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("density", parents=[common], help="exact density")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mod", type=int)
    p.add_argument("--res", type=int)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("good-classes", parents=[common], help="progressions with 100%% monogeneity")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_good_classes)

    p = sub.add_parser("failures", parents=[common], help="failure-set distribution")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int, help="also sweep squarefree m <= LIMIT")
    p.set_defaults(func=cmd_failures)

    p = sub.add_parser("census", parents=[common], help="empirical counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.add_argument("--disc-bound", type=int)
    p.add_argument("--mod", type=int)
    p.add_argument("--res", type=int)
    p.add_argument("--sides", choices=("one", "two"), default="one")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("disc-census", parents=[common], help="count fields by discriminant")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--disc-bound", type=int, required=True)
    p.set_defaults(func=cmd_disc_census)

    p = sub.add_parser("sweep", parents=[common], help="per-m rows as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lo", type=int, default=1)
    p.add_argument("--hi", type=int, required=True)
    p.set_defaults(func=cmd_sweep, default_format="csv")

    p = sub.add_parser("verify", parents=[common], help="criterion vs Dedekind oracle")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--m-max", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("teichmuller", parents=[common], help="Frobenius-fixed classes mod p^2")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_teichmuller)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = build_config(args)
        return args.func(args, cfg)
    except (UsageError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
