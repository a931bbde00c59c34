"""prmforge - projective Reed-Muller codes, higher weights and e_r(d, m)."""

import argparse
import csv
import io
import json
import logging
import sys
import time
from pathlib import Path
from typing import Any, Optional

from rich.console import Console

from bounds import Certificate, compare_report, refutation_scan
from cache import ResultCache, RunRecord
from codes import prm_code, prm_params, rm_code, rm_params
from config import SCHEMA_VERSION, AppConfig, load_config, validate_config
from errors import HypothesisViolated, PrmForgeError, UsageError
from extremal import (
    build_five_quadrics_witness,
    build_pencil_witness,
    custom_witness,
    veronese_image,
    veronese_line_check,
)
from gf import field_from_order, parse_modulus
from hweights import (
    dual_hierarchy,
    er_exhaustive,
    er_random_search,
    ghw_from_er,
    wei_duality_check,
    wei_monotonicity_check,
    weight_hierarchy,
)
from poly import count_affine_zeros, count_projective_zeros, format_poly, parse_poly
from pspace import affine_point_array, p_k, projective_point_array
from report import Report
from themes import ThemeManager
from verify import SUITES, run_suite


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting with status 2."""

    def error(self, message: str):
        raise UsageError(message)


def build_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="output format (default json; csv for points)")
    common.add_argument("--cache-dir", default=None, help="result cache directory (overrides PRMFORGE_CACHE)")
    common.add_argument("--threads", type=int, default=None, help="worker processes for exhaustive search")
    common.add_argument("--modulus", default=None, help="comma-separated little-endian modulus coefficients")
    common.add_argument("--quiet", action="store_true", help="no summary tables on standard error")

    def field_args(p, d=True, m=True, r=False):
        p.add_argument("--q", type=int, required=True)
        if d:
            p.add_argument("--d", type=int, required=True)
        if m:
            p.add_argument("--m", type=int, required=True)
        if r:
            p.add_argument("--r", type=int, required=r == "required", default=None)

    parser = ArgumentParser(prog="prmforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common], help="describe GF(q) and its modulus")
    field_args(p, d=False, m=False)

    p = sub.add_parser("points", parents=[common], help="list points of P^m or A^m")
    field_args(p, d=False)
    p.add_argument("--affine", action="store_true")
    p.add_argument("--projective", dest="affine", action="store_false")

    p = sub.add_parser("zeros", parents=[common], help="count common zeros of polynomials")
    field_args(p, d=False)
    p.add_argument("--poly-file", required=True)
    p.add_argument("--affine", action="store_true")

    p = sub.add_parser("code", parents=[common], help="RM/PRM code parameters")
    field_args(p)
    p.add_argument("--kind", choices=("rm", "prm"), default="prm")
    p.add_argument("--emit-genmat", action="store_true")

    p = sub.add_parser("ghw", parents=[common], help="e_r and d_r by search; whole hierarchy without --r")
    field_args(p, r=True)
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--trials", type=int, default=10 ** 4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--affine", action="store_true")

    p = sub.add_parser("bounds", parents=[common], help="closed-form bounds and a TBC verdict")
    field_args(p, d=False)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--all", action="store_true", help="include inapplicable bounds")
    p.add_argument("--scan", action="store_true", help="ranks where the set bound refutes TBC for quadrics")

    p = sub.add_parser("witness", parents=[common], help="explicit extremal systems")
    field_args(p, r=True)
    p.add_argument("--kind", choices=("pencil", "five-quadrics", "custom"), default="pencil")
    p.add_argument("--poly-file", default=None)

    p = sub.add_parser("veronese", parents=[common], help="lines on the Veronese variety")
    field_args(p)

    p = sub.add_parser("verify", parents=[common], help="run the acceptance suite")
    p.add_argument("--suite", choices=SUITES, default="acceptance")
    p.add_argument("--quick", action="store_true", help="skip slow checks")
    p.add_argument("--only", nargs="*", default=None)
    p.add_argument("--seed", type=int, default=0)
    return parser


class PrmForgeApp:
    """Main application class."""

    def __init__(self, args: argparse.Namespace, config: Optional[AppConfig] = None):
        self.args = args
        self.config = config or load_config()
        if args.cache_dir is not None:
            self.config.cache.directory = args.cache_dir
        if args.threads is not None:
            self.config.search.threads = args.threads
        self.theme_manager = ThemeManager(self.config.default_theme)
        self.console = Console(theme=self.theme_manager.rich_theme, stderr=True, quiet=args.quiet)
        self.report = Report(self.theme_manager, self.console)
        self.cache = ResultCache(self.config.cache.directory, SCHEMA_VERSION) if self.config.cache.directory else None
        self._setup_logging()

    def _setup_logging(self):
        """Log to standard error, and to a file when PRMFORGE_LOG_DIR is set."""
        handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
        log_file = None
        if self.config.log_dir:
            log_dir = Path(self.config.log_dir)
            log_dir.mkdir(parents=True, exist_ok=True)
            log_file = log_dir / f"prmforge_{int(time.time())}.log"
            handlers.append(logging.FileHandler(log_file))
        logging.basicConfig(
            level=getattr(logging, self.config.log_level),
            format='%(asctime)s - %(levelname)s - %(message)s',
            handlers=handlers,
            force=True,
        )
        self.logger = logging.getLogger(__name__)
        self.logger.debug(f"prmforge {self.args.command} starting - log file: {log_file}")

    # -- helpers -------------------------------------------------------------

    def field(self):
        modulus = parse_modulus(self.args.modulus) if self.args.modulus else None
        return field_from_order(self.args.q, modulus)

    def read_polys(self, F, nvars: int, affine: bool):
        path = Path(self.args.poly_file)
        if not path.exists():
            raise UsageError(f"polynomial file {path} not found")
        polys = []
        for raw in path.read_text().splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                polys.append(parse_poly(F, line, nvars, affine))
        return polys

    def cached(self, command: str, parameters: dict[str, Any], seed: Optional[int], compute):
        if self.cache:
            record = self.cache.get(command, parameters, seed)
            if record:
                self.logger.info(f"{command}: cached result from {self.cache.path}")
                return record.payload
        start = time.perf_counter()
        payload = compute()
        if self.cache:
            self.cache.put(RunRecord(command, parameters, payload, time.perf_counter() - start, seed))
        return payload

    # -- subcommands ---------------------------------------------------------

    def cmd_field(self):
        F = self.field()
        doc = {"p": F.p, "e": F.e, "q": F.q, "modulus": list(F.modulus), "primitive": F.primitive}
        return doc, [doc]

    def cmd_points(self):
        F = self.field()
        a = self.args
        cap = self.config.search.point_cap
        points = affine_point_array(F, a.m, cap) if a.affine else projective_point_array(F, a.m, cap)
        rows = points.tolist()
        return {"count": len(rows), "points": rows}, rows

    def cmd_zeros(self):
        F = self.field()
        a = self.args
        if a.affine:
            polys = self.read_polys(F, a.m, True)
            count = count_affine_zeros(F, polys, a.m, self.config.search.point_cap)
            return {"count": count}, [{"count": count}]
        polys = self.read_polys(F, a.m + 1, False)
        count, zeros = count_projective_zeros(F, polys, a.m, self.config.search.point_cap)
        rows = [list(z.coords) for z in zeros]
        return {"count": count, "zeros": rows}, rows

    def cmd_code(self):
        F = self.field()
        a = self.args
        if a.kind == "rm":
            params = rm_params(F, a.d, a.m)
            code = rm_code(F, a.d, a.m) if a.emit_genmat else None
        else:
            params = prm_params(F, a.d, a.m)
            code = prm_code(F, a.d, a.m) if a.emit_genmat else None
        doc = params.to_dict()
        if code is not None:
            doc["generator"] = [" ".join(str(int(x)) for x in row) for row in code.generator]
        return doc, [params.to_dict()]

    def _search_er(self, F, r: int) -> dict:
        a = self.args
        if a.mode == "random":
            result = er_random_search(F, a.d, a.m, r, a.trials, a.seed, a.affine)
        else:
            result = er_exhaustive(F, a.d, a.m, r, a.affine, self.config.search, a.threads)
        n = F.q ** a.m if a.affine else p_k(F.q, a.m)
        if not a.quiet:
            self.report.show(self.report.search_panel(f"e_{r}({a.d},{a.m}) over {F}", result, n))
        return {"er": result.value, "dr": ghw_from_er(n, result.value), **result.to_dict(), "notes": result.notes}

    def cmd_ghw(self):
        F = self.field()
        a = self.args
        mode = f"random:randomized({a.trials})" if a.mode == "random" else a.mode
        mode += ":affine" if a.affine else ""
        seed = a.seed if a.mode == "random" else None
        if a.r is not None:
            params = {"q": F.q, "d": a.d, "m": a.m, "r": a.r, "mode": mode}
            doc = self.cached("ghw", params, seed, lambda: self._search_er(F, a.r))
            return doc, [{k: v for k, v in doc.items() if k not in ("witness_rows", "notes")}]

        if a.mode != "exhaustive":
            raise UsageError("a whole hierarchy needs --mode exhaustive; pass --r for random search")
        code = rm_code(F, a.d, a.m) if a.affine else prm_code(F, a.d, a.m)
        H = weight_hierarchy(code, "auto", self.config.search, a.threads)
        dual = dual_hierarchy(H)
        if not a.quiet:
            self.report.show(self.report.hierarchy_table(H, dual))
        doc = {
            **H.to_dict(),
            "dual_weights": list(dual.weights),
            "monotone": wei_monotonicity_check(H),
            "duality": wei_duality_check(H, dual),
            "notes": H.notes,
        }
        rows = [{"r": r, "dr": w, "er": H.n - w} for r, w in enumerate(H.weights, 1)]
        return doc, rows

    def _certificates(self, F) -> list[Certificate]:
        a = self.args
        certs = []
        small = p_k(F.q, a.m) <= self.config.search.point_cap
        try:
            if small and 1 <= a.r <= a.m + 1 and 1 <= a.d <= F.q:
                W = build_pencil_witness(F, a.d, a.m, a.r)
                certs.append(Certificate("pencil_witness", W.claimed_count, "lower"))
            if (a.d, a.m, a.r) == (2, 3, 5):
                certs.append(Certificate("five_quadrics_witness", build_five_quadrics_witness(F).claimed_count, "lower"))
        except HypothesisViolated as exc:
            self.logger.warning(f"witness skipped: {exc}")
        if self.cache:
            for mode, pattern, kind in (("exhaustive", None, "exact"), ("random", r"random:randomized\(\d+\)", "lower")):
                params = {"q": F.q, "d": a.d, "m": a.m, "r": a.r, "mode": mode}
                record = self.cache.best_for("ghw", params, mode_pattern=pattern)
                if record:
                    certs.append(Certificate(f"cached_{mode}", int(record.payload["er"]), kind))
        return certs

    def cmd_bounds(self):
        F = self.field()
        a = self.args
        if a.scan:
            ranks = refutation_scan(F.q, a.m)
            doc = {"q": F.q, "d": 2, "m": a.m, "refuted_ranks": ranks}
            return doc, [{"r": r} for r in ranks]
        if a.d is None or a.r is None:
            raise UsageError("bounds needs --d and --r (or --scan)")
        reports = compare_report(F.q, a.d, a.m, a.r, self._certificates(F))
        if not a.quiet:
            self.report.show(self.report.bounds_table(f"Bounds for q={F.q}, d={a.d}, m={a.m}, r={a.r}", reports))
        shown = [rep.to_dict() for rep in reports if a.all or rep.applicable or rep.name == "tbc_verdict"]
        return shown, shown

    def cmd_witness(self):
        F = self.field()
        a = self.args
        if a.kind == "five-quadrics":
            W = build_five_quadrics_witness(F)
        elif a.kind == "custom":
            if not a.poly_file:
                raise UsageError("--kind custom needs --poly-file")
            W = custom_witness(F, a.m, self.read_polys(F, a.m + 1, False))
        else:
            if a.r is None:
                raise UsageError("--kind pencil needs --r")
            W = build_pencil_witness(F, a.d, a.m, a.r)
        polys = [format_poly(P) for P in W.polys]
        doc = {
            "construction": W.construction,
            "polys": polys,
            "claimed_count": W.claimed_count,
            "verified": W.verified,
            "notes": W.notes,
        }
        return doc, [{"poly": text} for text in polys]

    def cmd_veronese(self):
        F = self.field()
        a = self.args
        image = veronese_image(F, a.d, a.m, self.config.search.point_cap)
        check = veronese_line_check(image)
        doc = {"points": len(image), "ambient_dimension": image.ambient_dimension, **check.to_dict()}
        return doc, [{"points": len(image), "lines_found": check.lines_found}]

    def cmd_verify(self):
        a = self.args
        results = run_suite(a.suite, a.quick, self.config.search, a.seed, a.only)
        if not a.quiet:
            self.report.show(self.report.verify_table(results))
        failed = [item["name"] for item in results if item["status"] == "fail"]
        if failed:
            self.exit_code = 1
        return results, results

    # -- driver --------------------------------------------------------------

    def run(self) -> int:
        self.exit_code = 0
        handler = getattr(self, f"cmd_{self.args.command}")
        doc, rows = handler()
        fmt = self.args.format or ("csv" if self.args.command == "points" else "json")
        if fmt == "csv":
            sys.stdout.write(_to_csv(rows))
        else:
            if isinstance(doc, dict):
                doc = {"schema_version": SCHEMA_VERSION, "command": self.args.command, **doc}
            else:
                doc = {"schema_version": SCHEMA_VERSION, "command": self.args.command, "results": doc}
            sys.stdout.write(json.dumps(doc, indent=2) + "\n")
        return self.exit_code


def _to_csv(rows: list) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    if rows and isinstance(rows[0], dict):
        header = list(rows[0])
        writer.writerow(header)
        for row in rows:
            writer.writerow([row.get(h) for h in header])
    else:
        writer.writerows(rows)
    return out.getvalue()


def dispatch(argv: list[str], config: Optional[AppConfig] = None) -> int:
    """Run one subcommand; returns the process exit code."""
    report = Report(ThemeManager())
    try:
        args = build_parser().parse_args(argv)
        config = config or load_config()
        config_errors = validate_config(config)
        if config_errors:
            report.error("Configuration errors found:")
            for error in config_errors:
                report.warning(error)
            return 1
        return PrmForgeApp(args, config).run()
    except PrmForgeError as exc:
        report.error(str(exc))
        return exc.exit_code
    except KeyboardInterrupt:
        report.warning("Interrupted")
        return 1
    except Exception as exc:
        logging.getLogger(__name__).exception(f"Unexpected error: {exc}")
        report.error(f"Fatal error: {exc}")
        return 1


def main():
    """Main entry point."""
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
