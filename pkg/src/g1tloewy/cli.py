"""Command line interface: ``g1tloewy {table,length,poly,check}``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .alcove import Alcove, distance, element_from_word, gallery_word, locate
from .cache import CACHE_ENV, default_cache_dir
from .cartan import RootSystem, RootSystemError, build_root_system
from .loewy import (
    ConventionViolation,
    parabolic_loewy_length,
    parabolic_table,
    projective_loewy_length,
    twisted_verma_loewy_length,
    verma_loewy_length,
    verma_table,
)
from .periodic import CONVENTIONS, DEFAULT_DEPTH_MAX, StabilizationError, get_engine

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_STABILIZATION = 2
EXIT_CONVENTION = 3
FORMATS = ("json", "csv", "pretty")


class ConfigError(ValueError):
    pass


def _int_list(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    text = text.strip()
    if text in ("", "-"):
        return ()
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(","))
    except ValueError as exc:
        raise ConfigError(f"expected comma-separated integers, got {text!r}") from exc


def _fmt_list(v: Sequence[int] | None) -> str | None:
    return None if v is None else ",".join(str(c) for c in v)


@dataclass
class JobConfig:
    """Everything a command needs; ``J`` holds 1-based simple-root indices."""

    type: str
    p: int
    nu: tuple[int, ...] = ()
    J: tuple[int, ...] | None = None
    depth_max: int = DEFAULT_DEPTH_MAX
    convention: str = "plain"
    cache_dir: str | None = None
    format: str = "pretty"
    system: RootSystem | None = field(default=None, repr=False, compare=False)

    def validate(self) -> "JobConfig":
        try:
            self.system = build_root_system(self.type)
        except RootSystemError as exc:
            raise ConfigError(str(exc)) from exc
        if self.p <= self.system.coxeter_number or any(self.p % d == 0 for d in range(2, self.p)):
            raise ConfigError(f"p={self.p} must be a prime larger than h={self.system.coxeter_number}")
        if self.nu and len(self.nu) != self.system.rank:
            raise ConfigError(f"weight {self.nu} has {len(self.nu)} coordinates; rank is {self.system.rank}")
        if self.J is not None:
            if len(set(self.J)) != len(self.J) or any(not 1 <= j <= self.system.rank for j in self.J):
                raise ConfigError(f"invalid subset J={self.J} of simple roots 1..{self.system.rank}")
        if self.convention not in CONVENTIONS:
            raise ConfigError(f"convention must be one of {CONVENTIONS}")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {FORMATS}")
        if self.depth_max < 0:
            raise ConfigError("depth_max must be nonnegative")
        return self

    @property
    def J0(self) -> tuple[int, ...] | None:
        """``J`` as 0-based indices."""
        return None if self.J is None else tuple(sorted(j - 1 for j in self.J))

    def to_args(self) -> list[str]:
        args = ["--type", self.type, "--p", str(self.p)]
        if self.nu:
            args += ["--nu", _fmt_list(self.nu)]
        if self.J is not None:
            args += ["--J", _fmt_list(self.J) or "-"]
        args += ["--depth-max", str(self.depth_max), "--convention", self.convention, "--format", self.format]
        if self.cache_dir is not None:
            args += ["--cache-dir", self.cache_dir]
        else:
            args += ["--no-cache"]
        return args


def _add_common(sp: argparse.ArgumentParser, need_nu: bool = True) -> None:
    sp.add_argument("--type", required=True, help="root system, e.g. A1, A2, B2, A1xA1")
    sp.add_argument("--p", type=int, required=True, help="prime larger than the Coxeter number")
    if need_nu:
        sp.add_argument("--nu", default=None, help="weight in fundamental-weight coordinates, e.g. 1,0")
    sp.add_argument("--J", default=None, help="parabolic subset, 1-based simple roots, e.g. 1,2 ('-' for empty)")
    sp.add_argument("--depth-max", type=int, default=DEFAULT_DEPTH_MAX)
    sp.add_argument("--convention", default="plain", choices=CONVENTIONS)
    sp.add_argument("--format", default="pretty", choices=FORMATS)
    sp.add_argument("--cache-dir", default=None, help=f"persistent cache directory (default ${CACHE_ENV} or ~/.cache)")
    sp.add_argument("--no-cache", action="store_true", help="do not read or write the persistent cache")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="g1tloewy", description="Loewy layers of G1T-Verma modules")
    sub = ap.add_subparsers(dest="command", required=True)
    _add_common(sub.add_parser("table", help="socle-layer table of a (parabolic) G1T-Verma module"))
    _add_common(sub.add_parser("length", help="Loewy lengths from the closed formulas"))
    sp = sub.add_parser("poly", help="Q and P^ polynomials for a pair of alcoves")
    _add_common(sp, need_nu=False)
    for side in ("x", "y"):
        sp.add_argument(f"--{side}-word", default=None, help=f"alcove {side} as an affine word, e.g. 0.1.2")
        sp.add_argument(f"--{side}-weight", default=None, help=f"alcove {side} as the alcove of a weight")
    sp.add_argument("--kind", default="both", choices=("q", "phat", "both"))
    sp = sub.add_parser("check", help="run the invariant suites")
    _add_common(sp, need_nu=False)
    sp.add_argument("--samples", type=int, default=12, help="weights sampled per singularity class")
    return ap


def config_from_args(ns: argparse.Namespace) -> JobConfig:
    if getattr(ns, "no_cache", False):
        cache = None
    else:
        cache = ns.cache_dir or str(default_cache_dir())
    cfg = JobConfig(
        type=ns.type,
        p=ns.p,
        nu=_int_list(getattr(ns, "nu", None)) or (),
        J=_int_list(ns.J),
        depth_max=ns.depth_max,
        convention=ns.convention,
        cache_dir=cache,
        format=ns.format,
    )
    return cfg.validate()


def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        for k, v in obj.items():
            out.write(f"{k}: {v}\n")


def cmd_table(cfg: JobConfig, out) -> int:
    if not cfg.nu:
        raise ConfigError("table needs --nu")
    if cfg.J is None:
        tb = verma_table(cfg.system, cfg.nu, cfg.p, cfg.depth_max, cfg.convention, cfg.cache_dir)
    else:
        tb = parabolic_table(cfg.system, cfg.J0, cfg.nu, cfg.p, cfg.depth_max, cfg.convention, cfg.cache_dir)
    if cfg.format == "json":
        out.write(tb.dumps() + "\n")
    elif cfg.format == "csv":
        out.write(tb.to_csv())
    else:
        out.write(tb.pretty() + "\n")
    return EXIT_OK


def cmd_length(cfg: JobConfig, out) -> int:
    if not cfg.nu:
        raise ConfigError("length needs --nu")
    s, nu, p = cfg.system, cfg.nu, cfg.p
    rec = {
        "verma": verma_loewy_length(s, nu, p),
        "twisted_verma": twisted_verma_loewy_length(s, nu, p),
        "projective": projective_loewy_length(s, nu, p),
    }
    if cfg.J is not None:
        rec["parabolic"] = parabolic_loewy_length(s, cfg.J0, nu, p)
    _emit(rec, "json" if cfg.format == "json" else "pretty", out)
    return EXIT_OK


def _alcove_arg(cfg: JobConfig, word: str | None, weight: str | None, side: str) -> Alcove:
    if (word is None) == (weight is None):
        raise ConfigError(f"give exactly one of --{side}-word / --{side}-weight")
    s = cfg.system
    if word is not None:
        try:
            letters = [int(t) for t in word.split(".") if t != ""]
        except ValueError as exc:
            raise ConfigError(f"bad affine word {word!r}") from exc
        n = s.rank + len(s.factors)
        if any(not 0 <= i < n for i in letters):
            raise ConfigError(f"affine word letters must lie in 0..{n - 1}")
        return Alcove(element_from_word(s, letters))
    w = _int_list(weight)
    if len(w) != s.rank:
        raise ConfigError(f"weight {w} has wrong rank")
    return Alcove(locate(w, cfg.p, s)[0])


def cmd_poly(cfg: JobConfig, ns, out) -> int:
    y = _alcove_arg(cfg, ns.y_word, ns.y_weight, "y")
    x = _alcove_arg(cfg, ns.x_word, ns.x_weight, "x")
    eng = get_engine(cfg.system, cfg.depth_max, cfg.convention, cfg.cache_dir)
    rec: dict = {
        "type": cfg.system.name,
        "y": {"word": list(gallery_word(y.element)), "coordinates": list(y.coordinates)},
        "x": {"word": list(gallery_word(x.element)), "coordinates": list(x.coordinates)},
        "distance": distance(y, x),
        "exponent_unit": "q^(1/2)",
    }
    if ns.kind in ("phat", "both"):
        rep = eng.phat_report(y, x)
        rec["phat"] = rep.polynomial.to_json()
        rec["phat_text"] = str(rep.polynomial)
        rec["stabilization"] = rep.to_json()
    if ns.kind in ("q", "both"):
        q = eng.qpoly(y, x)
        rec["q"] = q.to_json()
        rec["q_text"] = str(q)
    if cfg.format == "json":
        out.write(json.dumps(rec, indent=2, sort_keys=True) + "\n")
    else:
        if "phat" in rec:
            out.write(f"P^ = {rec['phat_text']}  (stable from depth {rec['stabilization']['depth']})\n")
        if "q" in rec:
            out.write(f"Q = {rec['q_text']}\n")
    return EXIT_OK


def cmd_check(cfg: JobConfig, ns, out) -> int:
    from .checks import run_checks

    report = run_checks(cfg.system, cfg.p, cfg.depth_max, cfg.convention, cfg.cache_dir, ns.samples)
    if cfg.format == "json":
        out.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    else:
        for item in report["results"]:
            status = "PASS" if item["ok"] else "FAIL"
            out.write(f"{status}  {item['name']}: {item['detail']}\n")
    return EXIT_OK if report["ok"] else EXIT_CONFIG


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    ns = ap.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        if ns.command == "table":
            return cmd_table(cfg, out)
        if ns.command == "length":
            return cmd_length(cfg, out)
        if ns.command == "poly":
            return cmd_poly(cfg, ns, out)
        return cmd_check(cfg, ns, out)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StabilizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(json.dumps(exc.report.to_json()), file=sys.stderr)
        return EXIT_STABILIZATION
    except ConventionViolation as exc:
        print(f"convention violation: {exc}", file=sys.stderr)
        return EXIT_CONVENTION


def entry() -> None:  # pragma: no cover
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry()
