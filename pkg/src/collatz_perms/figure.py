"""SVG rendering of a type's line family, no plotting library needed."""
from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .type_algebra import suffix_lines

WIDTH, HEIGHT, MARGIN = 720, 480, 50


def _fmt(v: Fraction) -> str:
    return f"{float(v):.6f}" if v.denominator != 1 else f"{v.numerator}.000000"


def render_family_svg(sigma: str, witnesses: list[int] = ()) -> str:
    """One line per trace position, dashed verticals at ``t = 2**a``.

    The t range is ``[0, max(1.2 * x_max, 1.1 * smallest witness)]``.
    """
    from .geometry import max_intersection_abscissa

    family = suffix_lines(sigma)
    x_max = max_intersection_abscissa(family) if len(family) > 1 else Fraction(1)
    t_hi = Fraction(6, 5) * x_max
    if witnesses:
        t_hi = max(t_hi, Fraction(11, 10) * (1 << min(witnesses)))
    if t_hi <= 0:
        t_hi = Fraction(1)

    def value(line, t):
        p, q, b = line
        return Fraction((t.numerator << p) - b * t.denominator, t.denominator * 3**q)

    ends = [(value(l, Fraction(0)), value(l, t_hi)) for l in family.lines]
    y_lo = min(0, *(min(e) for e in ends))
    y_hi = max(*(max(e) for e in ends), 1)
    sx = Fraction(WIDTH - 2 * MARGIN) / t_hi
    sy = Fraction(HEIGHT - 2 * MARGIN) / (y_hi - y_lo)

    def X(t):
        return _fmt(MARGIN + t * sx)

    def Y(y):
        return _fmt(HEIGHT - MARGIN - (y - y_lo) * sy)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f"<title>{escape(sigma or '-')}</title>",
        f'<line class="axis" x1="{X(Fraction(0))}" y1="{Y(Fraction(0))}" '
        f'x2="{X(t_hi)}" y2="{Y(Fraction(0))}" stroke="black"/>',
        f'<line class="axis" x1="{X(Fraction(0))}" y1="{Y(y_lo)}" '
        f'x2="{X(Fraction(0))}" y2="{Y(y_hi)}" stroke="black"/>',
    ]
    for i, (line, (y0, y1)) in enumerate(zip(family.lines, ends), 1):
        out.append(
            f'<polyline class="family-line" data-position="{i}" fill="none" stroke="black" '
            f'points="{X(Fraction(0))},{Y(y0)} {X(t_hi)},{Y(y1)}"/>'
        )
        out.append(f'<text class="label" x="{X(t_hi)}" y="{Y(y1)}" font-size="10">{i}</text>')
    if len(family) > 1:
        out.append(
            f'<line class="x-max" x1="{X(x_max)}" y1="{Y(y_lo)}" x2="{X(x_max)}" y2="{Y(y_hi)}" '
            f'stroke="blue"/>'
        )
        out.append(
            f'<text x="{X(x_max)}" y="{HEIGHT - MARGIN / 2}" font-size="10">'
            f"&#8776;{float(x_max):.2f}</text>"
        )
    for a in sorted(set(witnesses)):
        t = Fraction(1 << a)
        if t > t_hi:
            continue
        out.append(
            f'<line class="witness" x1="{X(t)}" y1="{Y(y_lo)}" x2="{X(t)}" y2="{Y(y_hi)}" '
            f'stroke="red" stroke-dasharray="6,4"/>'
        )
        out.append(f'<text x="{X(t)}" y="{HEIGHT - MARGIN / 2}" font-size="10">2^{a}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
