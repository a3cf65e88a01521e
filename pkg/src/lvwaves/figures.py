"""Point-set emission for the standard illustration cases.

Produces CSV sample sets (two zero-growth lines, the implicit curve
F(u, v) = 0, and barrier lines where applicable) plus a JSON manifest with
the exact levels.  No plotting is done here; the files are meant for
external tooling.
"""

from __future__ import annotations

import math
from fractions import Fraction
from pathlib import Path

import numpy as np

from .model import TwoSpeciesParams
from .nbarrier import BoundSide, F_value, conic_classify, construct_barrier
from .rational import format_number
from .report import format_float, write_json

CONIC_POINT_TOL = 1e-6

_ONE = Fraction(1)
_FIG1_BASE = dict(
    d1=_ONE, d2=_ONE, sigma1=_ONE, sigma2=_ONE,
    c11=_ONE, c12=Fraction(1, 2), c21=Fraction(2, 3), c22=_ONE,
)
_FIG1_CASES = {
    "a": (Fraction(1, 2), Fraction(4), 2.5),
    "b": (Fraction(2), Fraction(3, 20), 2.5),
    "c": (Fraction(2), 7.5 + 3 * math.sqrt(6), 2.5),
    "d": (Fraction(2), 7.5 - 3 * math.sqrt(6), 2.5),
    "e": (Fraction(2), Fraction(3), 2.5),
    "f": (Fraction(1, 2), Fraction(4), 8.0),
}

_BARRIER_BASE = dict(
    d1=_ONE, sigma1=_ONE, sigma2=_ONE,
    c11=_ONE, c12=Fraction(2), c21=Fraction(3), c22=_ONE,
)
_FIG2_CASES = {
    "a": (Fraction(17), Fraction(18), Fraction(2)),
    "b": (Fraction(17), Fraction(5), Fraction(2)),
    "c": (Fraction(17), Fraction(18), Fraction(2, 3)),
    "d": (Fraction(17), Fraction(18), Fraction(1, 2)),
}
_FIG3_CASES = {
    "a": (Fraction(17), Fraction(18), Fraction(2)),
    "b": (Fraction(17), Fraction(5), Fraction(2)),
    "c": (Fraction(17), Fraction(33), Fraction(2, 3)),
    "d": (Fraction(17), Fraction(18), Fraction(1, 2)),
}


def _write_points(path: Path, pts: list[tuple[float, float]]) -> None:
    lines = ["u,v"] + [f"{format_float(a)},{format_float(b)}" for a, b in pts]
    path.write_text("\n".join(lines) + "\n", newline="\n")


def _line_points(a, b, c, u_max: float, n: int = 201) -> list[tuple[float, float]]:
    """First-quadrant samples of a u + b v = c."""
    pts = []
    for u in np.linspace(0.0, u_max, n):
        v = (float(c) - float(a) * u) / float(b)
        if v >= 0:
            pts.append((float(u), float(v)))
    return pts


def _bisect_edge(f, p0, p1, tol: float) -> tuple[float, float] | None:
    f0, f1 = f(*p0), f(*p1)
    if f0 == 0:
        return p0
    if f1 == 0:
        return p1
    if f0 * f1 > 0:
        return None
    for _ in range(200):
        mid = ((p0[0] + p1[0]) / 2.0, (p0[1] + p1[1]) / 2.0)
        fm = f(*mid)
        if abs(fm) < tol:
            return mid
        if f0 * fm < 0:
            p1 = mid
        else:
            p0, f0 = mid, fm
    return mid


def implicit_curve_points(
    f, u_max: float, v_max: float, n: int = 161, tol: float = CONIC_POINT_TOL
) -> list[tuple[float, float]]:
    """Sign-change scan on a grid with bisection refinement along each edge."""
    us = np.linspace(0.0, u_max, n)
    vs = np.linspace(0.0, v_max, n)
    vals = np.array([[f(u, v) for v in vs] for u in us])
    pts: list[tuple[float, float]] = []
    for i in range(n):
        for j in range(n - 1):
            if vals[i, j] * vals[i, j + 1] < 0:
                hit = _bisect_edge(f, (us[i], vs[j]), (us[i], vs[j + 1]), tol)
                if hit:
                    pts.append(hit)
    for j in range(n):
        for i in range(n - 1):
            if vals[i, j] * vals[i + 1, j] < 0:
                hit = _bisect_edge(f, (us[i], vs[j]), (us[i + 1], vs[j]), tol)
                if hit:
                    pts.append(hit)
    return pts


def emit_figure_data(which: str, case: str, out_dir) -> dict:
    """Write the CSV point sets for one bundled illustration case; returns the manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if which == "fig1":
        if case not in _FIG1_CASES:
            raise ValueError(f"fig1 case must be one of {sorted(_FIG1_CASES)}")
        alpha, beta, window = _FIG1_CASES[case]
        p = TwoSpeciesParams(**_FIG1_BASE)
        barrier = None
    elif which in ("fig2", "fig3"):
        cases = _FIG2_CASES if which == "fig2" else _FIG3_CASES
        if case not in cases:
            raise ValueError(f"{which} case must be one of {sorted(cases)}")
        alpha, beta, d2 = cases[case]
        p = TwoSpeciesParams(d2=d2, **_BARRIER_BASE)
        window = 2.5
        side = BoundSide.LOWER if which == "fig2" else BoundSide.UPPER
        barrier = construct_barrier(p, alpha, beta, side)
    else:
        raise ValueError("which must be fig1, fig2, or fig3")

    if alpha <= 0 or beta <= 0:
        raise ValueError("weights must be positive")

    _write_points(
        out / "line1.csv", _line_points(p.c11, p.c12, p.sigma1, float(window))
    )
    _write_points(
        out / "line2.csv", _line_points(p.c21, p.c22, p.sigma2, float(window))
    )

    def f(u, v):
        return float(F_value(p, float(alpha), float(beta), u, v))

    _write_points(out / "conic.csv", implicit_curve_points(f, float(window), float(window)))
    conic = conic_classify(p, alpha, beta)

    manifest = {
        "which": which,
        "case": case,
        "alpha": format_number(alpha),
        "beta": format_number(beta),
        "params": {k: format_number(v) for k, v in p.to_dict().items()},
        "conic": {
            "kind": conic.kind.value,
            "discriminant": float(conic.discriminant),
        },
        "files": ["line1.csv", "line2.csv", "conic.csv"],
    }
    if barrier is not None:
        for name, level, weight in (
            ("barrier_lambda1.csv", barrier.lambda1, (alpha * p.d1, beta * p.d2)),
            ("barrier_lambda2.csv", barrier.lambda2, (alpha * p.d1, beta * p.d2)),
            ("barrier_eta.csv", barrier.eta, (alpha, beta)),
        ):
            u_reach = float(level) / float(weight[0])
            _write_points(
                out / name, _line_points(weight[0], weight[1], level, min(u_reach, 5.0))
            )
            manifest["files"].append(name)
        manifest["barrier"] = {
            "side": barrier.side.value,
            "case_id": barrier.case_id,
            "lambda1": format_number(barrier.lambda1),
            "lambda2": format_number(barrier.lambda2),
            "eta": format_number(barrier.eta),
        }
    write_json(out / "manifest.json", manifest)
    return manifest
