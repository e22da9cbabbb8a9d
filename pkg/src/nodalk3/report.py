"""Deterministic SVG rendering of the wall-and-chamber picture.

Walls of u are nested semicircles in the upper (s, t) half-plane; at a
concrete rational (eps, epsp) their centers and radii are exact rationals.
Coordinates are fixed to twelve decimals so identical configurations give
byte-identical files.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .lattice import ProblemInstance
from .plane import PolarizationPath, SigmaU, VerticalLine, pivotal_wall, wall_of


class ReportError(ValueError):
    """The requested diagram cannot be drawn from this configuration."""


def _fmt(x: float) -> str:
    return f"{x:.12f}"


def wall_circle(inst: ProblemInstance, m: int, eps: Fraction) -> tuple[Fraction, Fraction]:
    """(center, radius^2) of W_m = W(u, t_m) at a concrete eps.

    From alpha*(s^2 + t^2) + beta*s + gamma = 0: center -beta/(2*alpha) and
    radius^2 = center^2 - gamma/alpha.  radius^2 <= 0 means the wall is empty
    at this eps.
    """
    path = PolarizationPath(inst)
    wall = wall_of(inst.u(), inst.t(m), path)
    alpha = wall.alpha.instantiate(eps, 0)
    beta = wall.beta.instantiate(eps, 0)
    gamma = wall.gamma.instantiate(eps, 0)
    if alpha == 0:
        raise ReportError(f"wall m={m} is vertical at eps={eps}")
    center = -beta / (2 * alpha)
    radius_sq = center * center - gamma / alpha
    return center, radius_sq


def render_walls(
    inst: ProblemInstance,
    m_values: list[int],
    eps: Fraction,
    epsp: Fraction,
) -> tuple[str, dict]:
    """Build the SVG document and its JSON-ready sidecar description."""
    if not (eps > epsp > 0):
        raise ReportError("need eps > epsp > 0")
    path = PolarizationPath(inst)
    line = VerticalLine(path)
    s_line = float(line.abscissa.instantiate(eps, epsp))
    sigma = SigmaU.of(inst, path)
    sigma_s = float(sigma.s.instantiate(eps, epsp))
    sigma_tsq = float(sigma.t_sq.instantiate(eps, epsp))

    pivot = pivotal_wall(inst, path)
    p_alpha = pivot.alpha.instantiate(eps, 0)
    p_center = -pivot.beta.instantiate(eps, 0) / (2 * p_alpha)
    p_rsq = p_center * p_center - pivot.gamma.instantiate(eps, 0) / p_alpha
    if p_rsq <= 0:
        raise ReportError("the pivotal wall is empty at this eps")
    p_radius = math.sqrt(float(p_rsq))

    walls = []
    for m in sorted(set(m_values)):
        center, radius_sq = wall_circle(inst, m, eps)
        entry: dict = {"m": m, "center": str(center), "radius_sq": str(radius_sq)}
        if radius_sq <= 0:
            entry["drawn"] = False
            entry["note"] = "wall is empty at this eps; omitted"
        else:
            entry["drawn"] = True
        walls.append(entry)

    # viewport fits the pivotal wall with a 20% margin
    margin = 0.2 * (2 * p_radius)
    x0 = float(p_center) - p_radius - margin
    x1 = float(p_center) + p_radius + margin
    y1 = p_radius + margin
    scale = 640.0 / (x1 - x0)
    width = 640.0
    height = y1 * scale

    def sx(s: float) -> float:
        return (s - x0) * scale

    def sy(t: float) -> float:
        return height - t * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<rect x="0" y="0" width="{_fmt(width)}" height="{_fmt(height)}" fill="white"/>',
    ]
    # semicircular walls, drawn left to right through the top
    for entry in walls:
        if not entry["drawn"]:
            continue
        c = float(Fraction(entry["center"]))
        r = math.sqrt(float(Fraction(entry["radius_sq"])))
        color = "#c03020" if entry["m"] == -1 else "#3060c0"
        parts.append(
            f'<path d="M {_fmt(sx(c - r))} {_fmt(sy(0.0))} '
            f'A {_fmt(r * scale)} {_fmt(r * scale)} 0 0 1 {_fmt(sx(c + r))} {_fmt(sy(0.0))}" '
            f'fill="none" stroke="{color}" stroke-width="1.2"/>'
        )
    # the vertical line b
    parts.append(
        f'<line x1="{_fmt(sx(s_line))}" y1="{_fmt(sy(0.0))}" '
        f'x2="{_fmt(sx(s_line))}" y2="{_fmt(sy(y1))}" '
        f'stroke="#208040" stroke-width="1.0" stroke-dasharray="4 3"/>'
    )
    # sigma_u
    if sigma_tsq > 0:
        parts.append(
            f'<circle cx="{_fmt(sx(sigma_s))}" cy="{_fmt(sy(math.sqrt(sigma_tsq)))}" '
            f'r="3.0" fill="#000000"/>'
        )
    # sigma_+ / sigma_0 / sigma_- markers around the pivotal wall on the line
    pivot_t = line.abscissa.instantiate(eps, epsp)
    t_sq = -(pivot.beta.instantiate(eps, 0) * pivot_t + pivot.gamma.instantiate(eps, 0)) / p_alpha - pivot_t * pivot_t
    sigma_markers = []
    if t_sq > 0:
        t_wall = math.sqrt(float(t_sq))
        for label, factor in (("σ+", 1.12), ("σ0", 1.0), ("σ-", 0.88)):
            parts.append(
                f'<circle cx="{_fmt(sx(s_line))}" cy="{_fmt(sy(t_wall * factor))}" '
                f'r="2.2" fill="#803090"/>'
            )
            parts.append(
                f'<text x="{_fmt(sx(s_line) + 6.0)}" y="{_fmt(sy(t_wall * factor) + 3.0)}" '
                f'font-family="monospace" font-size="11">{label}</text>'
            )
            sigma_markers.append({"label": label, "t": _fmt(t_wall * factor)})
    parts.append("</svg>")
    svg = "\n".join(parts) + "\n"

    sidecar = {
        "instance": {
            "h2": inst.lattice.h_squared,
            "cl_ne_pic": inst.lattice.class_group_nontrivial,
            "r": inst.r,
            "d": inst.d,
            "a": inst.a,
        },
        "eps": str(eps),
        "epsp": str(epsp),
        "line_s": _fmt(s_line),
        "sigma_u": {"s": _fmt(sigma_s), "t_sq": _fmt(sigma_tsq)},
        "sigma_markers": sigma_markers,
        "walls": walls,
    }
    return svg, sidecar
