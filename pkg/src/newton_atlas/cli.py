"""Command-line front end: newton-atlas {analyze|classify|characterize|render}.

Complex literals on the command line are `re` or `re,im`; list entries are
semicolon-separated; a root/pole entry takes an optional `:multiplicity`.
Reports are JSON with stable key order and 17 significant digits per float.

Exit codes: 0 ok, 2 validation/parse error, 3 degenerate map,
4 unsupported degree, 5 I/O error.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import imaging
from .conjugacy import (
    CubicPolyReport,
    QuadClass,
    classify_quadratic,
    cubic_polynomial_condition,
    recognize_newton_map,
)
from .dynamics import JuliaClass, JuliaVariant, Viewport, julia_topology_predict, render_basins
from .errors import (
    DegenerateMap,
    DegreeMismatch,
    NewtonAtlasError,
    NonSimpleFixedPoint,
    NotCubic,
    NotQuadratic,
    UnsupportedDegree,
)
from .newton_map import (
    FactoredRational,
    RationalMap,
    build_newton_map,
    critical_points,
    fixed_points,
    map_fixed_points,
    newton_degree,
    reduce_map,
    verify_rfpt,
)
from .rational_core import INF, is_inf

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_DEGENERATE = 3
EXIT_UNSUPPORTED = 4
EXIT_IO = 5


class SpecParseError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"line 1, column {column}: {message}")
        self.column = column


# ---------------------------------------------------------------- parsing


def _parse_complex(tok: str, offset: int) -> complex:
    parts = tok.split(",")
    if len(parts) > 2 or not tok.strip():
        raise SpecParseError(f"bad complex literal {tok!r}", offset + 1)
    try:
        re = float(parts[0])
        im = float(parts[1]) if len(parts) == 2 else 0.0
    except ValueError:
        raise SpecParseError(f"bad complex literal {tok!r}", offset + 1) from None
    return complex(re, im)


def parse_point_list(s: str) -> list[tuple[complex, int]]:
    """`re,im:mult;re,im:mult;...` -> [(complex, int), ...]"""
    out = []
    offset = 0
    for entry in s.split(";"):
        body, sep, mult_s = entry.partition(":")
        if sep:
            try:
                mult = int(mult_s)
            except ValueError:
                raise SpecParseError(
                    f"bad multiplicity {mult_s!r}", offset + len(body) + 2
                ) from None
        else:
            mult = 1
        if mult < 1:
            raise SpecParseError("multiplicity must be positive", offset + len(body) + 2)
        out.append((_parse_complex(body, offset), mult))
        offset += len(entry) + 1
    return out


def parse_coeff_list(s: str) -> np.ndarray:
    """Ascending coefficients. Entries are semicolon-separated complex
    literals; a semicolon-free string of plain floats is a real list."""
    if ";" in s:
        out = []
        offset = 0
        for entry in s.split(";"):
            out.append(_parse_complex(entry, offset))
            offset += len(entry) + 1
        return np.array(out, dtype=complex)
    toks = s.split(",")
    try:
        return np.array([float(t) for t in toks], dtype=complex)
    except ValueError:
        pass
    return np.array([_parse_complex(s, 0)], dtype=complex)


def format_point_list(pts) -> str:
    return ";".join(f"{z.real:g},{z.imag:g}:{k}" for z, k in pts)


# ------------------------------------------------------------- JSON output


def _fmt_float(x: float) -> str:
    if x != x:
        return '"nan"'
    if x in (float("inf"), float("-inf")):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, ".16e")


def json_dumps(obj) -> str:
    """JSON with insertion key order and >= 15 significant digits per float."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, str):
        escaped = obj.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(obj, dict):
        items = ",".join(f"{json_dumps(str(k))}:{json_dumps(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(json_dumps(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)}")


def _cx(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _pt(p) -> object:
    return "inf" if is_inf(p) else _cx(p)


# ------------------------------------------------------------ report bodies


def _record_json(rec) -> dict:
    return {
        "location": _pt(rec.location),
        "multiplier": _cx(rec.multiplier),
        "p": rec.pq[0] if rec.pq else None,
        "q": rec.pq[1] if rec.pq else None,
        "index": _cx(rec.index),
        "class": rec.klass.value,
    }


def _julia_json(jc: JuliaClass) -> dict:
    return {"variant": jc.variant.value, "provenance": jc.provenance}


def _quad_json(qc: QuadClass) -> dict:
    p1, p2 = qc.params
    out = {"class": qc.kind}
    if qc.kind == "N1":
        out["d1"], out["d2"] = p1, p2
    else:
        out["e1"], out["e2"] = p1, p2
    w = qc.witness
    out["witness"] = {"a": _cx(w.a), "b": _cx(w.b), "c": _cx(w.c), "d": _cx(w.d)}
    return out


def _cubic_json(rep: CubicPolyReport) -> dict:
    return {
        "case": rep.case_id,
        "condition_value": _cx(rep.condition_value),
        "conjugate_to_poly": rep.conjugate_to_poly,
        "exceptional_point": _pt(rep.exceptional_point) if rep.exceptional_point is not None else None,
        "normal_form": (
            {"a": _cx(rep.normal_form[0]), "b": _cx(rep.normal_form[1])}
            if rep.normal_form
            else None
        ),
        "indices": list(rep.indices) if rep.indices else None,
    }


def _factored_json(R: FactoredRational) -> dict:
    return {
        "roots": [{"re": a.real, "im": a.imag, "multiplicity": k} for a, k in R.roots],
        "poles": [{"re": b.real, "im": b.imag, "multiplicity": k} for b, k in R.poles],
    }


def _input_echo(args, R: FactoredRational | None, N: RationalMap | None) -> dict:
    if R is not None:
        return {"form": "factored", **_factored_json(R)}
    return {
        "form": "raw",
        "num": [_cx(c) for c in N.num],
        "den": [_cx(c) for c in N.den],
    }


def _load_spec(args):
    """Returns (R or None, N) from --roots/--poles or --num/--den."""
    factored = getattr(args, "roots", None) is not None or getattr(args, "poles", None) is not None
    raw = getattr(args, "num", None) is not None or getattr(args, "den", None) is not None
    if factored and raw:
        raise SpecParseError("give either --roots/--poles or --num/--den, not both", 1)
    if factored:
        roots = parse_point_list(args.roots) if args.roots else []
        poles = parse_point_list(args.poles) if args.poles else []
        try:
            R = FactoredRational(tuple(roots), tuple(poles))
        except ValueError as exc:
            raise SpecParseError(str(exc), 1) from None
        return R, build_newton_map(R)
    if raw:
        num = parse_coeff_list(args.num) if args.num else np.zeros(0, dtype=complex)
        den = parse_coeff_list(args.den) if args.den else np.ones(1, dtype=complex)
        try:
            return None, reduce_map(num, den)
        except (ValueError, NewtonAtlasError) as exc:
            raise SpecParseError(f"bad raw map: {exc}", 1) from None
    raise SpecParseError("no function given; use --roots/--poles or --num/--den", 1)


def _classification_fields(R: FactoredRational, deg: int) -> dict:
    out: dict = {}
    if deg == 2:
        out["quad_class"] = _quad_json(classify_quadratic(R))
        out["julia_class"] = _julia_json(julia_topology_predict(R))
    elif deg == 3:
        out["cubic_report"] = _cubic_json(cubic_polynomial_condition(R))
        out["julia_class"] = _julia_json(julia_topology_predict(R))
    else:
        out["julia_class"] = {
            "variant": JuliaVariant.UNDETERMINED.value,
            "provenance": "no implemented theorem applies at this degree",
        }
    return out


def cmd_analyze(args) -> int:
    R, N = _load_spec(args)
    deg = N.degree
    if deg < 2:
        print(f"error: Newton map degree {deg} < 2", file=sys.stderr)
        return EXIT_VALIDATION
    recs = fixed_points(R) if R is not None else map_fixed_points(N)
    total, ok = verify_rfpt(recs)
    finite_crit, inf_crit = critical_points(N)
    if R is None:
        R = recognize_newton_map(N)
    report = {
        "input": _input_echo(args, R if args.roots or args.poles else None, N),
        "degree": deg,
        "newton_map": {"num": [_cx(c) for c in N.num], "den": [_cx(c) for c in N.den]},
        "fixed_points": [_record_json(r) for r in recs],
        "rfpt_sum": _cx(total),
        "rfpt_pass": ok,
        "critical_points": {"finite": [_cx(c) for c in finite_crit], "infinity": inf_crit},
    }
    if R is not None:
        report.update(_classification_fields(R, deg))
    else:
        report["julia_class"] = {
            "variant": JuliaVariant.UNDETERMINED.value,
            "provenance": "raw map is not a recognized Newton map",
        }
    print(json_dumps(report))
    return EXIT_OK


def cmd_classify(args) -> int:
    R, N = _load_spec(args)
    if R is None:
        R = recognize_newton_map(N)
        if R is None:
            print("error: raw map is not a Newton map; nothing to classify", file=sys.stderr)
            return EXIT_VALIDATION
    deg = newton_degree(R)
    if deg not in (2, 3):
        raise UnsupportedDegree(f"classification needs degree 2 or 3, got {deg}")
    report = {"input": _input_echo(args, R, N), "degree": deg}
    jc = julia_topology_predict(R)
    if deg == 2:
        report.update(_quad_json(classify_quadratic(R)))
    else:
        report.update(_cubic_json(cubic_polynomial_condition(R)))
    report["julia"] = jc.variant.value
    report["provenance"] = jc.provenance
    print(json_dumps(report))
    return EXIT_OK


def cmd_characterize(args) -> int:
    if args.num is None and args.den is None:
        raise SpecParseError("characterize takes raw coefficients (--num/--den)", 1)
    _, N = _load_spec(args)
    if N.degree < 2:
        print(f"error: map degree {N.degree} < 2", file=sys.stderr)
        return EXIT_VALIDATION
    reason = None
    residuals = {}
    try:
        R = recognize_newton_map(N)
    except NonSimpleFixedPoint as exc:
        R = None
        reason = f"non-simple fixed point: {exc}"
    if R is None and reason is None:
        bad = [
            rec
            for rec in map_fixed_points(N)
            if not is_inf(rec.location) and rec.pq is None
        ]
        if bad:
            lam = bad[0].multiplier
            reason = (
                f"multiplier {lam.real:g}{lam.imag:+g}i not of form p/q with |p-q|=1"
            )
        else:
            reason = "rebuilt Newton map does not match the input coefficients"
    if R is not None:
        rebuilt = build_newton_map(R).monic()
        Nm = N.monic()
        k = max(rebuilt.num.size, Nm.num.size, rebuilt.den.size, Nm.den.size)

        def pad(p):
            out = np.zeros(k, dtype=complex)
            out[: p.size] = p
            return out

        residuals = {
            "num": float(np.abs(pad(rebuilt.num) - pad(Nm.num)).max()),
            "den": float(np.abs(pad(rebuilt.den) - pad(Nm.den)).max()),
        }
    report = {
        "input": _input_echo(args, None, N),
        "is_newton_map": R is not None,
        "generator": _factored_json(R) if R is not None else None,
        "residuals": residuals,
        "reason": reason,
    }
    print(json_dumps(report))
    return EXIT_OK


def cmd_render(args) -> int:
    R, N = _load_spec(args)
    if N.degree < 1:
        print(f"error: map degree {N.degree} < 1", file=sys.stderr)
        return EXIT_VALIDATION
    recs = fixed_points(R) if R is not None else map_fixed_points(N)
    attractors = [r.location for r in recs if r.klass.value in ("Superattracting", "Attracting")]
    if not attractors:
        print("error: map has no attracting fixed points to render", file=sys.stderr)
        return EXIT_VALIDATION
    cx, cy, w, h = (float(t) for t in args.viewport.split(","))
    pw, ph = (int(t) for t in args.size.lower().split("x"))
    vp = Viewport(complex(cx, cy), w, h, pw, ph)
    threads = int(os.environ.get("NEWTON_ATLAS_THREADS", "1"))
    img = render_basins(N, attractors, vp, max_iter=args.max_iter, eps=args.eps, threads=threads)
    rgb = imaging.render_rgb(img, attractors)
    imaging.write_ppm(args.out, rgb)
    sidecar = {
        "attractors": [_pt(a) for a in attractors],
        "palette": [list(c) for c in imaging.palette_for(attractors)],
        "unresolved_color": list(imaging.UNRESOLVED_COLOR),
        "viewport": {"cx": cx, "cy": cy, "width": w, "height": h, "px_w": pw, "px_h": ph},
        "max_iter": args.max_iter,
        "eps": args.eps,
        "captured_fraction": float((img.indices >= 0).mean()),
    }
    with open(str(args.out) + ".json", "w") as fh:
        fh.write(json_dumps(sidecar))
    print(json_dumps({"out": str(args.out), "captured_fraction": sidecar["captured_fraction"]}))
    return EXIT_OK


# ----------------------------------------------------------------- driver


def _add_spec_args(p: argparse.ArgumentParser, raw: bool = True, factored: bool = True):
    if factored:
        p.add_argument("--roots", help="semicolon list of re,im:mult")
        p.add_argument("--poles", help="semicolon list of re,im:mult")
    if raw:
        p.add_argument("--num", help="ascending numerator coefficients")
        p.add_argument("--den", help="ascending denominator coefficients")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="newton-atlas")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="fixed points, indices, and the index-sum check")
    _add_spec_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", help="quadratic N1/N2 or cubic polynomial-conjugacy")
    _add_spec_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("characterize", help="is a raw map a Newton map? reconstruct R")
    _add_spec_args(p, factored=False)
    p.set_defaults(func=cmd_characterize)

    p = sub.add_parser("render", help="rasterize attraction basins to a PPM file")
    _add_spec_args(p)
    p.add_argument("--viewport", default="0,0,4,4", help="cx,cy,width,height")
    p.add_argument("--size", default="256x256", help="WxH pixels")
    p.add_argument("--out", required=True, help="output PPM path")
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--eps", type=float, default=1e-8)
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (DegenerateMap, DegreeMismatch) as exc:
        print(f"degenerate map: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (UnsupportedDegree, NotQuadratic, NotCubic) as exc:
        print(f"unsupported degree: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NewtonAtlasError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
