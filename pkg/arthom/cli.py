"""Command-line entry point

Exit status: 0 on success or a true verdict, 1 on a false verdict or a
failed fixture, 2 on errors and unknown verdicts.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError

from . import __version__
from .approx import AddClosure, coresolution
from .classify import (
    classify_algebra,
    is_almost_cluster,
    is_almost_precluster,
    is_precluster,
    search_sweep,
)
from .config import settings
from .endocat import endo_algebra, to_text as endo_to_text
from .errors import ArthomError, PreconditionError
from .fixtures import FIXTURE_ALIASES, SCENARIOS, nakayama_family, verify_fixture
from .homology import (
    ar_translate,
    condition_mn,
    dominant_dimension,
    ext_table,
    minimal_resolution,
    rel_domdim,
)
from .models import Caps, ClassifierReport, CommandRequest, OutputFormat, PropertyName, TranslateKind
from .pathalg import BoundQuiverAlgebra, parse_document
from .relhom import F_tilting_conditions, SubBifunctor, ext_F, pd_id_F
from .report import canonical_json, finalize, render_json, render_text
from .repmod import Rep, decompose, load_modules, regular_module, standard_module

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_ERROR = 2


# ============================================================================
# INPUT
# ============================================================================

def _load(path: str, caps: Caps) -> Tuple[BoundQuiverAlgebra, Dict[str, Rep]]:
    text = Path(path).read_text(encoding="utf-8")
    doc = parse_document(text, path_cap=caps.path_length)
    return doc.algebra, load_modules(doc)


def _module(alg: BoundQuiverAlgebra, mods: Dict[str, Rep], name: str) -> Rep:
    """A declared module, or one of S(i), P(i), I(i), A, DA"""
    if name in mods:
        return mods[name]
    return standard_module(alg, name)


def _caps(args: argparse.Namespace) -> Caps:
    base = settings.caps()
    overrides = {
        field: getattr(args, f"cap_{field}")
        for field in ("resolution", "enumeration", "path_length", "codim", "dimension")
        if getattr(args, f"cap_{field}", None) is not None
    }
    return Caps(**{**base.model_dump(), **overrides}) if overrides else base


# ============================================================================
# OUTPUT
# ============================================================================

def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    print(canonical_json(payload) if args.json else text)


def _emit_report(args: argparse.Namespace, report) -> int:
    print(render_json(report) if args.json else render_text(report))
    if isinstance(report, ClassifierReport):
        return report.exit_code
    return EXIT_OK if report.ok else EXIT_FALSE


def _summands(X: Rep) -> List[List[int]]:
    if X.is_zero():
        return []
    return [list(R.dims) for R in decompose(X).indecomposables()]


# ============================================================================
# SUBCOMMANDS
# ============================================================================

def cmd_resolve(args, caps: Caps) -> int:
    alg, mods = _load(args.input, caps)
    X = _module(alg, mods, args.module)
    res = minimal_resolution(X, args.kind, caps.resolution)
    d = res.dimension()
    payload = {
        "module": X.label(),
        "kind": args.kind,
        "terms": [list(t.dims) for t in res.terms],
        "dimension": d.as_json(),
        "verified": res.verify(),
    }
    label = "pd" if args.kind == "projective" else "id"
    _emit(args, payload, f"{res.describe()}\n{label} {X.label()} = {d}")
    return EXIT_OK


def cmd_ext(args, caps: Caps) -> int:
    alg, mods = _load(args.input, caps)
    X = _module(alg, mods, args.source)
    Y = _module(alg, mods, args.target)
    table = ext_table(X, Y, args.max)
    lines = [f"Ext^{i}({X.label()},{Y.label()}) = {d}" for i, d in enumerate(table)]
    _emit(args, {"from": X.label(), "to": Y.label(), "ext": table}, "\n".join(lines))
    return EXIT_OK


def cmd_domdim(args, caps: Caps) -> int:
    alg, mods = _load(args.input, caps)
    X = _module(alg, mods, args.module) if args.module else regular_module(alg)
    if args.relative:
        I = _module(alg, mods, args.relative)
        d = rel_domdim(X, I, caps.resolution)
        label = f"{I.label()}-domdim {X.label()}"
    else:
        d = dominant_dimension(X, caps.resolution)
        label = f"domdim {X.label()}"
    payload = {**d.as_json(), "relative": args.relative, "module": X.label()}
    _emit(args, payload, f"{label} = {d}")
    return EXIT_OK


def cmd_coresolve(args, caps: Caps) -> int:
    alg, mods = _load(args.input, caps)
    X = _module(alg, mods, args.module) if args.module else regular_module(alg)
    M = _module(alg, mods, args.over)
    res = coresolution(X, AddClosure(M), cap=caps.codim)
    d = res.dimension()
    payload = {
        "module": X.label(),
        "over": M.label(),
        "terms": [_summands(t) for t in res.terms],
        "codim": d.as_json(),
    }
    lines = [f"{M.label()}_{i}: {_summands(t)}" for i, t in enumerate(res.terms)]
    lines.append(f"{M.label()}-codim {X.label()} = {d}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_tau(args, caps: Caps) -> int:
    alg, mods = _load(args.input, caps)
    X = _module(alg, mods, args.module)
    Y = ar_translate(X, args.kind, args.n)
    payload = {"module": X.label(), "kind": args.kind, "n": args.n, "dims": list(Y.dims), "summands": _summands(Y)}
    _emit(args, payload, f"{args.kind}({X.label()}) has dims {list(Y.dims)}, summands {_summands(Y)}")
    return EXIT_OK


def cmd_endo(args, caps: Caps) -> int:
    alg, mods = _load(args.input, caps)
    M = _module(alg, mods, args.module)
    pres = endo_algebra(M, caps.path_length)
    text = endo_to_text(pres)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        logger.info(f"✅ End({M.label()}) written to {args.out}")
    payload = {
        "module": M.label(),
        "vertices": pres.algebra.num_vertices,
        "dimension": pres.algebra.dim,
        "text": text,
    }
    _emit(args, payload, text)
    return EXIT_OK


def cmd_check(args, caps: Caps) -> int:
    alg, mods = _load(args.input, caps)
    M = _module(alg, mods, args.module)
    prop = PropertyName(args.property)
    if prop == PropertyName.ALMOST_PRECLUSTER:
        report = is_almost_precluster(M, args.n, caps)
    elif prop == PropertyName.PRECLUSTER:
        report = is_precluster(M, args.n, caps)
    elif prop == PropertyName.ALMOST_CLUSTER:
        report = is_almost_cluster(M, args.n, caps)
    else:
        N = _module(alg, mods, args.m) if args.m else M
        F = SubBifunctor(args.f, N)
        conditions = F_tilting_conditions(M, F, "cotilting", caps.codim)
        report = finalize(ClassifierReport(
            verdict=all(c.ok for c in conditions),
            conditions=conditions,
            parameters={"module": M.label(), "functor": F.label()},
        ))
    return _emit_report(args, report)


def cmd_classify(args, caps: Caps) -> int:
    alg, _ = _load(args.input, caps)
    return _emit_report(args, classify_algebra(alg, args.n, caps))


def cmd_relhom(args, caps: Caps) -> int:
    alg, mods = _load(args.input, caps)
    F = SubBifunctor(args.f, _module(alg, mods, args.m))
    X = _module(alg, mods, args.module)
    pd = pd_id_F(X, F, "pd", caps.codim)
    idv = pd_id_F(X, F, "id", caps.codim)
    payload = {"functor": F.label(), "module": X.label(), "pd_F": pd.as_json(), "id_F": idv.as_json()}
    lines = [f"pd_F {X.label()} = {pd}", f"id_F {X.label()} = {idv}"]
    if args.to:
        Y = _module(alg, mods, args.to)
        table = [ext_F(X, Y, i, F, caps.codim) for i in range(args.max + 1)]
        payload["ext_F"] = table
        lines.extend(f"Ext_F^{i}({X.label()},{Y.label()}) = {d}" for i, d in enumerate(table))
    _emit(args, payload, f"{F.label()}\n" + "\n".join(lines))
    return EXIT_OK


def cmd_condition(args, caps: Caps) -> int:
    alg, _ = _load(args.input, caps)
    holds = condition_mn(alg, args.m, args.n, args.side, caps.resolution)
    payload = {"m": args.m, "n": args.n, "side": args.side, "holds": holds}
    _emit(args, payload, f"({args.m + 1},{args.n + 1})-condition ({args.side}): {'holds' if holds else 'fails'}")
    return EXIT_OK if holds else EXIT_FALSE


def cmd_verify(args, caps: Caps) -> int:
    names = args.names or list(SCENARIOS)
    status = EXIT_OK
    for name in names:
        status = max(status, _emit_report(args, verify_fixture(name)))
    return status


def cmd_sweep(args, caps: Caps) -> int:
    rows = []
    counterexamples = 0
    for kupisch, cyclic, text in nakayama_family(args.max_vertices, args.max_loewy):
        alg = parse_document(text, path_cap=caps.path_length).algebra
        hits = search_sweep(alg, args.n, args.max_extra, caps)
        for hit in hits:
            bad = not hit.translate_closed or (args.n == 1 and not hit.contains_regular)
            counterexamples += bad
            rows.append({
                "kupisch": list(kupisch),
                "cyclic": cyclic,
                "summands": _summands(hit.module),
                "translate_closed": hit.translate_closed,
                "contains_A": hit.contains_regular,
            })
    payload = {"n": args.n, "hits": rows, "counterexamples": counterexamples}
    lines = [
        f"{'cyclic' if r['cyclic'] else 'linear'} {tuple(r['kupisch'])}: {r['summands']}"
        for r in rows
    ]
    lines.append(f"{len(rows)} almost {args.n}-precluster modules, {counterexamples} counterexamples")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if counterexamples == 0 else EXIT_FALSE


def cmd_serve(args, caps: Caps) -> int:
    import uvicorn

    uvicorn.run("arthom.main:app", host=args.host or settings.HOST, port=args.port or settings.PORT)
    return EXIT_OK


# ============================================================================
# PARSER
# ============================================================================

def _parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--cap-resolution", type=int)
    common.add_argument("--cap-enumeration", type=int)
    common.add_argument("--cap-path-length", type=int)
    common.add_argument("--cap-codim", type=int)
    common.add_argument("--cap-dimension", type=int)

    parser = argparse.ArgumentParser(
        prog="arthom",
        description="Exact homological algebra for bound quiver algebras.",
    )
    parser.add_argument("--version", action="version", version=f"arthom {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("resolve", parents=[common], help="minimal projective or injective resolution")
    p.add_argument("input")
    p.add_argument("--module", required=True)
    p.add_argument("--kind", choices=["projective", "injective"], default="projective")
    p.set_defaults(handler=cmd_resolve)

    p = sub.add_parser("ext", parents=[common], help="dimensions of Ext^i(X, Y)")
    p.add_argument("input")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--max", type=int, default=3)
    p.set_defaults(handler=cmd_ext)

    p = sub.add_parser("domdim", parents=[common], help="dominant or relative dominant dimension")
    p.add_argument("input")
    p.add_argument("--module")
    p.add_argument("--relative")
    p.set_defaults(handler=cmd_domdim)

    p = sub.add_parser("coresolve", parents=[common], help="add M-coresolution")
    p.add_argument("input")
    p.add_argument("--over", required=True)
    p.add_argument("--module")
    p.set_defaults(handler=cmd_coresolve)

    p = sub.add_parser("tau", parents=[common], help="Auslander-Reiten translates")
    p.add_argument("input")
    p.add_argument("--module", required=True)
    p.add_argument("--kind", choices=[k.value for k in TranslateKind], default="tau")
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(handler=cmd_tau)

    p = sub.add_parser("endo", parents=[common], help="present End(M) as a bound quiver algebra")
    p.add_argument("input")
    p.add_argument("--module", required=True)
    p.add_argument("--out")
    p.set_defaults(handler=cmd_endo)

    p = sub.add_parser("check", parents=[common], help="module property classifiers")
    p.add_argument("input")
    p.add_argument("--module", required=True)
    p.add_argument("--property", choices=[k.value for k in PropertyName], required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--f", choices=["upper", "lower"], default="upper")
    p.add_argument("--m")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("classify", parents=[common], help="almost n-minimal Auslander-Gorenstein test")
    p.add_argument("input")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("relhom", parents=[common], help="relative homology for F^M or F_M")
    p.add_argument("input")
    p.add_argument("--f", choices=["upper", "lower"], required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--module", required=True)
    p.add_argument("--to")
    p.add_argument("--max", type=int, default=3)
    p.set_defaults(handler=cmd_relhom)

    p = sub.add_parser("condition", parents=[common], help="the (m+1, n+1)-condition on injective resolutions")
    p.add_argument("input")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.set_defaults(handler=cmd_condition)

    p = sub.add_parser("verify", parents=[common], help="run golden fixture scenarios")
    p.add_argument("names", nargs="*", metavar="NAME", help=", ".join(list(SCENARIOS) + list(FIXTURE_ALIASES)))
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="almost precluster search over Nakayama algebras")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--max-vertices", type=int, default=4)
    p.add_argument("--max-loewy", type=int, default=5)
    p.add_argument("--max-extra", type=int, default=2)
    p.set_defaults(handler=cmd_sweep)

    p = sub.add_parser("serve", parents=[common], help="start the HTTP service")
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.set_defaults(handler=cmd_serve)

    return parser.parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        level=settings.LOG_LEVEL,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    args = _parse_args(argv)
    try:
        caps = _caps(args)
        return args.handler(args, caps)
    except ArthomError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_ERROR
    except (ValidationError, OSError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_ERROR


def _request_argv(req: CommandRequest) -> List[str]:
    argv = [req.subcommand]
    if req.input_path:
        argv.append(req.input_path)
    for flag, name in req.modules.items():
        argv += [f"--{flag}", name]
    if req.n is not None:
        argv += ["--n", str(req.n)]
    if req.m is not None:
        if "m" in req.modules:
            raise PreconditionError("m is either a module name or an integer", req.modules["m"])
        argv += ["--m", str(req.m)]
    for key, value in req.options.items():
        if key == "names":
            argv.extend(str(v) for v in value)
        elif value is True:
            argv.append(f"--{key.replace('_', '-')}")
        elif value not in (None, False):
            argv += [f"--{key.replace('_', '-')}", str(value)]
    if req.caps is not None:
        for field, value in req.caps.model_dump().items():
            argv += [f"--cap-{field.replace('_', '-')}", str(value)]
    if req.output_format == OutputFormat.JSON:
        argv.append("--json")
    return argv


def run(req: CommandRequest) -> int:
    """Execute a CommandRequest exactly as main would execute its argv

    Caps left unset fall back to the ARTHOM_CAP_* settings. Usage errors
    exit 2 instead of raising SystemExit.
    """
    try:
        argv = _request_argv(req)
    except ArthomError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_ERROR
    try:
        return main(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
