"""Command-line front end.

Every command writes one JSON document (``schema: 1``) or a CSV table with
the fixed header ``generator,q,N,value``.  Exit codes: 0 all checks pass,
2 configuration error, 3 at least one check failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass

from . import limitlab, polmat, qsu, repcat
from .qcore import Space, apply
from .report import Report, clean

EXIT_OK, EXIT_CONFIG, EXIT_FAIL = 0, 2, 3
SCHEMA = 1
CSV_HEADER = ("generator", "q", "N", "value")
DEFAULT_QS = (0.3, 0.5, 0.7, 0.9)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    N: int
    qs: tuple[float, ...]
    grid: int = 8
    trials: int = 4
    tol: float = 1e-9
    seed: int = 0
    cuts: tuple[int, ...] = (2, 4, 6)
    fmt: str = "json"
    output: str | None = None
    samples: int = 50
    phi: float = math.pi / 3
    family: str = "coherent"

    def validate(self) -> "RunConfig":
        if self.N < 4:
            raise ConfigError("N must be at least 4")
        if self.grid < 4:
            raise ConfigError("grid must be at least 4")
        if not self.tol > 0:
            raise ConfigError("tolerance must be positive")
        if self.trials < 1 or self.samples < 0:
            raise ConfigError("trials must be positive and samples nonnegative")
        if not self.qs or any(not 0 < q < 1 for q in self.qs):
            raise ConfigError("every q must lie in (0, 1)")
        if any(not 0 <= c < self.N for c in self.cuts):
            raise ConfigError("cuts must satisfy 0 <= cut < N")
        if self.fmt not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        if self.family not in repcat.FAMILIES:
            raise ConfigError(f"unknown diagram {self.family!r}; choose from {sorted(repcat.FAMILIES)}")
        return self

    def echo(self) -> dict:
        return {"N": self.N, "qs": list(self.qs), "grid": self.grid, "trials": self.trials, "tol": self.tol,
                "seed": self.seed, "cuts": list(self.cuts)}


# ---------------------------------------------------------------------------
# commands; each returns (document, passed, csv rows or None)

def _doc(cfg: RunConfig, reports: list[Report], **extra) -> dict:
    return {"schema": SCHEMA, "command": cfg.command, "config": cfg.echo(),
            "pass": all(r.passed for r in reports), "reports": [r.to_json() for r in reports], **extra}


def cmd_check_relations(cfg: RunConfig):
    rels = polmat.explicit_relations_n2()
    cat = repcat.standard_catalog(cfg.phi)
    matrix: dict[str, dict[str, float]] = {r.label: {} for r in rels}
    reports = []
    for name, rep in cat.items():
        # four-factor carriers stay at N <= 8
        N = min(cfg.N, 8) if len(rep.kinds) >= 4 else cfg.N
        worst = Report(f"relations under {name}", meta={"N": N})
        for r in rels:
            vals = [repcat.relation_residuals(rep, [r], q, N, grid=cfg.grid, trials=cfg.trials,
                                              seed=cfg.seed, tol=cfg.tol).worst() for q in cfg.qs]
            matrix[r.label][name] = max(vals)
            worst.add(r.label, max(vals), cfg.tol)
        reports.append(worst)
    return _doc(cfg, reports, matrix=clean(matrix)), all(r.passed for r in reports), None


def cmd_check_su(cfg: RunConfig):
    reports = []
    for q in cfg.qs:
        base = qsu.verify_slq_relations(qsu.base_rep(), q, cfg.N, tol=1e-10, trials=cfg.trials, seed=cfg.seed,
                                        extra=qsu.tsu2q_identities())
        base.title = f"SU_2 base q={q}"
        sigma = qsu.verify_slq_relations(qsu.tensor_rep(repcat.SIGMA_WORD, 4), q, min(cfg.N, 8),
                                         tol=cfg.tol, trials=cfg.trials, seed=cfg.seed)
        sigma.title = f"SU_4 sigma q={q}"
        reports += [base, sigma]
    return _doc(cfg, reports), all(r.passed for r in reports), None


def cmd_fock_formulas(cfg: RunConfig):
    rep = Report("Fock formulas")
    for name, ok in repcat.fock_regression().items():
        rep.add(name, 0.0 if ok else 1.0, 0.0)
    fock = repcat.fock_rep()
    for q in cfg.qs:
        for g, v in repcat.vacuum_annihilation(fock, q).items():
            rep.add(f"{g}* vacuum q={q}", v, 0.0)
    images = {str(g): str(e) for g, e in fock.images.items()}
    return _doc(cfg, [rep], images=images), rep.passed, None


def cmd_diagram(cfg: RunConfig):
    d = repcat.FAMILIES[cfg.family]
    nlight = d.colors.count(repcat.LIGHT)
    rep_ = repcat.family_rep(cfg.family, *([cfg.phi] * nlight))
    N = min(cfg.N, 8) if len(rep_.kinds) >= 4 else cfg.N
    reports = [repcat.relation_residuals(rep_, polmat.explicit_relations_n2(), q, N, grid=cfg.grid,
                                         trials=cfg.trials, seed=cfg.seed, tol=cfg.tol) for q in cfg.qs]
    extra = {"diagram": d.to_json(), "images": {str(g): str(e) for g, e in rep_.images.items()}}
    if cfg.family == "coherent":
        r = Report("coherent vacuum")
        target = complex(math.cos(cfg.phi), math.sin(cfg.phi))
        for q in cfg.qs:
            r.add(f"eigenvalue q={q}", abs(repcat._z11_vacuum_eigenvalue(rep_, q) - target), 1e-12)
            sp = Space(rep_.kinds, 4)
            for g in repcat.GENERATORS[1:]:
                v = apply(rep_.image(g.adjoint()), q, sp.vacuum(), sp)
                r.add(f"{g}* vacuum q={q}", float(abs(v).max()), 1e-12)
        reports.append(r)
        extra["light_sign"] = repcat.LIGHT_SIGN
    return _doc(cfg, reports, **extra), all(r.passed for r in reports), None


def _sweep_cfg(cfg: RunConfig) -> limitlab.SweepConfig:
    return limitlab.SweepConfig(qs=cfg.qs, N=cfg.N, grid=cfg.grid, trials=cfg.trials, tol=cfg.tol,
                                seed=cfg.seed, cuts=cfg.cuts, samples=cfg.samples)


def cmd_limit_sweep(cfg: RunConfig):
    sc = _sweep_cfg(cfg)
    rows = limitlab.limit_distance_table(sc)
    rep = limitlab.limit_sweep_report(sc, rows)
    csv_rows = [(f"{r['generator']}/{r['component']}", r["q"], r["N"], r["value"]) for r in rows]
    return _doc(cfg, [rep], table=clean(rows)), rep.passed, csv_rows


def cmd_norm_inequality(cfg: RunConfig):
    rep = limitlab.norm_inequality_sample(_sweep_cfg(cfg))
    return _doc(cfg, [rep]), rep.passed, None


def cmd_series_checks(cfg: RunConfig):
    N = min(cfg.N, 8)
    reports = [limitlab.series_report(cfg.qs, N, cfg.grid)]
    reports += [limitlab.omega_x_check(q, cfg.N, cfg.grid) for q in cfg.qs]
    reports.append(limitlab.phi0_images_check(cfg.N))
    return _doc(cfg, reports), all(r.passed for r in reports), None


def cmd_catalog_dump(cfg: RunConfig):
    docs = {str(q): json.loads(repcat.catalog_json(q, cfg.phi)) for q in cfg.qs}
    return {"schema": SCHEMA, "command": cfg.command, "config": cfg.echo(), "pass": True,
            "catalog": docs}, True, None


def cmd_relation_match(cfg: RunConfig):
    gen = polmat.generated_relations(2)
    exp = polmat.star_closure(polmat.explicit_relations_n2())
    m = polmat.match_relation_sets(gen, exp)
    rep = Report("relation match", meta={"generated": len(gen), "explicit_star_closed": len(exp),
                                          "explicit": len(polmat.explicit_relations_n2())})
    rep.add("unmatched generated", len(m.unmatched_a), 0)
    rep.add("unmatched explicit", len(m.unmatched_b), 0)
    return _doc(cfg, [rep], matching=m.to_json(gen, exp)), m.complete, None


COMMANDS = {
    "check-relations": cmd_check_relations,
    "check-su": cmd_check_su,
    "fock-formulas": cmd_fock_formulas,
    "diagram": cmd_diagram,
    "limit-sweep": cmd_limit_sweep,
    "norm-inequality": cmd_norm_inequality,
    "series-checks": cmd_series_checks,
    "catalog-dump": cmd_catalog_dump,
    "relation-match": cmd_relation_match,
}


# ---------------------------------------------------------------------------
# parsing and output

def _floats(s: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in s.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _ints(s: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qmatball", description="Checks for the quantum 2x2 matrix ball.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--n", "-N", dest="N", type=int, default=None, help="truncation per Fock factor")
    p.add_argument("--q", dest="qs", type=_floats, default=None, help="comma separated q values")
    p.add_argument("--grid", type=int, default=8, help="phase samples per circle factor")
    p.add_argument("--trials", type=int, default=4)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cuts", type=_ints, default=(2, 4, 6))
    p.add_argument("--samples", type=int, default=50, help="random elements for norm-inequality")
    p.add_argument("--phi", type=float, default=math.pi / 3)
    p.add_argument("--family", default="coherent", help="box diagram for the diagram command")
    p.add_argument("--format", dest="fmt", default="json", choices=("json", "csv"))
    p.add_argument("--output", "-o", default=None)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    N = ns.N if ns.N is not None else _env_int("QMATBALL_N", 12)
    seed = ns.seed if ns.seed is not None else _env_int("QMATBALL_SEED", 0)
    qs = ns.qs if ns.qs is not None else (limitlab.DEFAULT_QS if ns.command == "limit-sweep" else DEFAULT_QS)
    return RunConfig(ns.command, N, tuple(qs), ns.grid, ns.trials, ns.tol, seed, tuple(ns.cuts), ns.fmt,
                     ns.output, ns.samples, ns.phi, ns.family).validate()


def render(doc: dict, csv_rows, fmt: str) -> str:
    if fmt == "csv":
        if csv_rows is None:
            raise ConfigError("this command has no tabular output; use --format json")
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for g, q, N, v in csv_rows:
            w.writerow([g, repr(float(q)), N, f"{v:.12g}"])
        return buf.getvalue()
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
        doc, passed, rows = COMMANDS[cfg.command](cfg)
        text = render(doc, rows, cfg.fmt)
    except ConfigError as exc:
        print(f"qmatball: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not passed:
        print(f"qmatball: {cfg.command}: check failure", file=sys.stderr)
    return EXIT_OK if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
