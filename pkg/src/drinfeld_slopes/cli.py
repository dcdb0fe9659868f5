"""Command line front end.

    drinfeld-slopes slopes --q 3 --level gamma1:t --k 2..12
    drinfeld-slopes verify family --k1 10 --k2 19 --a 1 --Q t --n 2 --nprime 1
    drinfeld-slopes dump-matrix --k 10 --Q t

Exit codes: 0 success, 2 configuration error, 3 budget exhausted,
4 a verification report came back FAIL.  Logs go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .algebra.field import FieldSpec, is_prime
from .algebra.poly import Poly
from .algebra.serialize import matrix_to_json
from .hecke import hecke_matrix
from .level import BudgetError, LevelError, build_quotient, parse_level
from . import slopes as S

log = logging.getLogger("drinfeld_slopes")

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_FALSIFIED = 0, 2, 3, 4


class ConfigError(ValueError):
    pass


# -- parsing helpers --------------------------------------------------------------


def parse_weights(text: str | None) -> list[int]:
    """'2..12', '10', '3,5,9' or '' (empty range)."""
    if text is None:
        return []
    text = text.strip()
    if not text:
        return []
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if any(k < 2 for k in out):
        raise ConfigError("weights must be >= 2")
    return sorted(set(out))


def parse_field(q: int, modulus: str | None) -> FieldSpec:
    p = next((x for x in range(2, q + 1) if q % x == 0), None)
    if p is None or not is_prime(p):
        raise ConfigError(f"q={q} is not a prime power")
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ConfigError(f"q={q} is not a prime power")
    mod = None
    if modulus:
        mod = tuple(int(c) for c in modulus.split(","))
    try:
        return FieldSpec(p, e, mod)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def parse_chi(text: str | None, F: FieldSpec):
    if text is None:
        return [None]
    if text == "all":
        return list(range(F.q - 1))
    c = int(text)
    if not 0 <= c < F.q - 1:
        raise ConfigError(f"character exponent must lie in [0, {F.q - 2}]")
    return [c]


@dataclass
class RunConfig:
    field: FieldSpec
    level_text: str
    weights: list
    Q: list
    chi: list
    fmt: str
    seed: int
    trials: int
    precision: int | None
    threads: int
    out: str | None

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        F = parse_field(args.q, args.field_modulus)
        try:
            parse_level(F, args.level)
            Q = [Poly.parse(F, s) for s in args.Q.split(",")]
        except (LevelError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        if args.threads < 1:
            raise ConfigError("--threads must be >= 1")
        return cls(
            F, args.level, parse_weights(args.k), Q, parse_chi(args.chi, F), args.format,
            args.seed, args.trials, args.precision, args.threads, args.out,
        )

    def quotient(self):
        return build_quotient(parse_level(self.field, self.level_text))


# -- commands -----------------------------------------------------------------------


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_slopes(cfg: RunConfig) -> int:
    QD = cfg.quotient() if cfg.weights else None
    tasks = [(k, c) for k in cfg.weights for c in cfg.chi]

    def run(task):
        k, c = task
        log.info("slopes k=%d chi=%s", k, c)
        return S.slope_decomposition(QD, k, c)

    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        tables = list(pool.map(run, tasks))
    if cfg.fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "chi", "slope_num", "slope_den", "mult"])
        for tb in tables:
            w.writerows(tb.rows())
        _emit(buf.getvalue(), cfg.out)
    else:
        data = [
            {
                "k": tb.k,
                "chi": tb.chi,
                "dim": tb.dim,
                "deficiency": tb.deficiency,
                "slopes": [{"slope": str(s), "mult": m} for s, m in tb.entries],
            }
            for tb in tables
        ]
        _emit(json.dumps(data, indent=2) + "\n", cfg.out)
    return EXIT_OK


def _perturb_grid(cfg: RunConfig, n_fixed):
    """Seeded trials over d0 in {1,2,3}, n in {1,2} and dimensions 4..12."""
    reports = []
    ns = [n_fixed] if n_fixed else [1, 2]
    dims = [4, 6, 8, 12]
    i = 0
    for d0 in (1, 2, 3):
        for n in ns:
            for L in dims:
                count = cfg.trials // (3 * len(ns) * len(dims)) + 1
                reports.append(S.perturb_trial(cfg.seed + i, L, cfg.field.p, n, d0, trials=count))
                i += 1
    reports.append(S.product_divisor_trial(cfg.seed, 4, cfg.field.p, trials=max(cfg.trials // 4, 1)))
    return reports


def cmd_verify(cfg: RunConfig, which: str, args) -> int:
    F = cfg.field
    reports = []
    if which == "perturb":
        reports = _perturb_grid(cfg, args.n)
    elif which == "hida":
        rs = [int(x) for x in (args.r or "1,2").split(",")]
        if len(rs) != 2:
            raise ConfigError("--r takes two values, e.g. 1,2")
        L = parse_level(F, cfg.level_text)
        for k in cfg.weights:
            reports.append(S.hida_check(F, L.n, k, rs[0], rs[1]))
    else:
        QD = cfg.quotient()
        if which == "eldiv":
            for k in cfg.weights:
                for c in cfg.chi:
                    reports.append(S.check_eldiv_part(QD, k, c))
        elif which == "window":
            for k in cfg.weights:
                for c in cfg.chi:
                    reports.append(S.check_window(QD, k, args.n or 1, c))
        elif which == "constancy":
            n = args.n or 1
            for k in cfg.weights:
                kp = args.kprime if args.kprime is not None else k + F.p**n
                for c in cfg.chi:
                    reports.append(S.check_constancy(QD, k, kp, n, args.a, c))
        elif which == "family":
            if args.k1 is None or args.k2 is None:
                raise ConfigError("family needs --k1 and --k2")
            for Q in cfg.Q:
                reports.append(
                    S.family_congruence(
                        QD, args.k1, args.k2, int(args.a or 0), Q, args.n or 1, args.nprime or 1,
                        precision=cfg.precision,
                    )
                )
    data = [r.to_dict() for r in reports]
    _emit(json.dumps(data, indent=2) + "\n", cfg.out)
    for r in reports:
        log.info("%s: %s", r.claim, r.verdict)
    return EXIT_FALSIFIED if any(r.verdict == "FAIL" for r in reports) else EXIT_OK


def cmd_dump_matrix(cfg: RunConfig) -> int:
    if len(cfg.weights) != 1:
        raise ConfigError("dump-matrix needs a single weight --k")
    QD = cfg.quotient()
    M = hecke_matrix(QD, cfg.weights[0], cfg.Q[0])
    _emit(json.dumps(matrix_to_json(M)) + "\n", cfg.out)
    return EXIT_OK


# -- entry point ----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser):
    p.add_argument("--q", type=int, default=3, help="field size (default 3)")
    p.add_argument("--field-modulus", help="defining polynomial of F_q over F_p, coefficients low to high")
    p.add_argument("--level", default="gamma1:t", help="gamma1:<poly>[,t^r] | gamma0p:<poly> | theta:<poly>:<g1>;<g2>")
    p.add_argument("--k", help="weights: 10, 2..12 or 3,5,7")
    p.add_argument("--Q", default="t", help="monic irreducible(s), comma separated (default t)")
    p.add_argument("--chi", help="character exponent c (chi(x) = x^c) or 'all'")
    p.add_argument("--n", type=int, help="exponent n in p^n")
    p.add_argument("--nprime", type=int, help="exponent n' of the family bound")
    p.add_argument("--a", type=int, help="slope (family) or cap on compared slopes (constancy)")
    p.add_argument("--r", help="two t-exponents for the Hida check (default 1,2)")
    p.add_argument("--k1", type=int, help="first weight of the family check")
    p.add_argument("--k2", type=int, help="second weight of the family check")
    p.add_argument("--kprime", type=int, help="second weight of the constancy check (default k + p^n)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.add_argument("--trials", type=int, default=100, help="perturbation trials (default 100)")
    p.add_argument("--precision", type=int, help="t-adic precision override")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=["json", "csv"], default="json", help="output format (default json)")
    p.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="drinfeld-slopes", description="Slopes of U_t on Drinfeld cusp forms.")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("slopes", help="slope tables per weight"))
    v = sub.add_parser("verify", help="run a theorem check and print a JSON report")
    v.add_argument("which", choices=["eldiv", "window", "constancy", "hida", "perturb", "family"])
    _common(v)
    _common(sub.add_parser("dump-matrix", help="matrix of T_Q as JSON"))
    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        if args.command == "slopes":
            return cmd_slopes(cfg)
        if args.command == "verify":
            return cmd_verify(cfg, args.which, args)
        return cmd_dump_matrix(cfg)
    except (ConfigError, LevelError) as exc:
        log.error("configuration error: %s", exc)
        return EXIT_CONFIG
    except BudgetError as exc:
        log.error("budget exhausted: %s", exc)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
