"""Minimal static SVG charts: lines, points, error bars. No plotting dependency."""

from __future__ import annotations

from xml.sax.saxutils import escape

WIDTH, HEIGHT = 720, 420
LEFT, RIGHT, TOP, BOTTOM = 60, 60, 40, 50
FEMALE_COLOUR = "#c0392b"
MALE_COLOUR = "#2c6fbb"
SHARE_COLOUR = "#555555"


def _f(x: float) -> str:
    return f"{x:.2f}"


class Canvas:
    def __init__(self, title: str, width: int = WIDTH, height: int = HEIGHT):
        self.width, self.height = width, height
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="white"/>',
            f'<text x="{width / 2:.0f}" y="22" text-anchor="middle" font-family="sans-serif" '
            f'font-size="14">{escape(title)}</text>',
        ]

    def line(self, pts, colour, width=1.5, dash=None):
        if len(pts) < 2:
            return
        d = " ".join(f"{_f(x)},{_f(y)}" for x, y in pts)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.parts.append(f'<polyline points="{d}" fill="none" stroke="{colour}" '
                          f'stroke-width="{width}"{extra}/>')

    def segment(self, x1, y1, x2, y2, colour, width=1.0):
        self.parts.append(f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
                          f'stroke="{colour}" stroke-width="{width}"/>')

    def point(self, x, y, colour, r=3.0):
        self.parts.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{r}" fill="{colour}"/>')

    def text(self, x, y, s, anchor="middle", size=11, colour="black"):
        self.parts.append(f'<text x="{_f(x)}" y="{_f(y)}" text-anchor="{anchor}" '
                          f'font-family="sans-serif" font-size="{size}" fill="{colour}">'
                          f'{escape(s)}</text>')

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


class Axes:
    def __init__(self, canvas: Canvas, xlim, ylim):
        self.c = canvas
        self.xlim, self.ylim = xlim, ylim
        self.x0, self.x1 = LEFT, canvas.width - RIGHT
        self.y0, self.y1 = canvas.height - BOTTOM, TOP

    def sx(self, x):
        lo, hi = self.xlim
        return self.x0 + (x - lo) / ((hi - lo) or 1) * (self.x1 - self.x0)

    def sy(self, y, lim=None):
        lo, hi = lim or self.ylim
        return self.y0 + (y - lo) / ((hi - lo) or 1) * (self.y1 - self.y0)

    def frame(self, xticks, yticks, xfmt=str, yfmt=lambda v: f"{v:.2f}"):
        c = self.c
        c.segment(self.x0, self.y0, self.x1, self.y0, "black")
        c.segment(self.x0, self.y0, self.x0, self.y1, "black")
        for t in xticks:
            c.segment(self.sx(t), self.y0, self.sx(t), self.y0 + 4, "black")
            c.text(self.sx(t), self.y0 + 16, xfmt(t))
        for t in yticks:
            c.segment(self.x0 - 4, self.sy(t), self.x0, self.sy(t), "black")
            c.text(self.x0 - 6, self.sy(t) + 4, yfmt(t), anchor="end")


def _ticks(lo, hi, n=5):
    if hi == lo:
        return [lo]
    return [lo + (hi - lo) * i / (n - 1) for i in range(n)]


def trend_chart(rows, title: str) -> str:
    """Female and male MNLCS with CI error bars, plus the female share on a right-hand axis."""
    canvas = Canvas(title)
    years = [r.year for r in rows]
    if not years:
        return canvas.render()
    vals = []
    for r in rows:
        for g in (r.female, r.male):
            if g is not None:
                vals.append(g.mnlcs)
                if g.ci_low is not None:
                    vals += [g.ci_low, g.ci_high]
    lo, hi = (min(vals), max(vals)) if vals else (0.0, 1.0)
    pad = (hi - lo) * 0.05 or 0.5
    ax = Axes(canvas, (years[0], years[-1]), (lo - pad, hi + pad))
    step = max(1, len(years) // 10)
    ax.frame(years[::step], _ticks(lo - pad, hi + pad))
    share_lim = (0.0, 100.0)
    for t in _ticks(0, 100):
        y = ax.sy(t, share_lim)
        canvas.segment(ax.x1, y, ax.x1 + 4, y, "black")
        canvas.text(ax.x1 + 6, y + 4, f"{t:.0f}%", anchor="start")
    canvas.segment(ax.x1, ax.y0, ax.x1, ax.y1, "black")

    for attr, colour, off in (("female", FEMALE_COLOUR, -2), ("male", MALE_COLOUR, 2)):
        pts = []
        for r in rows:
            g = getattr(r, attr)
            if g is None:
                _flush(canvas, pts, colour)
                pts = []
                continue
            x = ax.sx(r.year) + off
            pts.append((x, ax.sy(g.mnlcs)))
            canvas.point(x, ax.sy(g.mnlcs), colour)
            if g.ci_low is not None:
                canvas.segment(x, ax.sy(g.ci_low), x, ax.sy(g.ci_high), colour)
                canvas.segment(x - 3, ax.sy(g.ci_low), x + 3, ax.sy(g.ci_low), colour)
                canvas.segment(x - 3, ax.sy(g.ci_high), x + 3, ax.sy(g.ci_high), colour)
        _flush(canvas, pts, colour)

    pts = []
    for r in rows:
        if r.female_share_pct is None:
            _flush(canvas, pts, SHARE_COLOUR, dash="4 3")
            pts = []
            continue
        pts.append((ax.sx(r.year), ax.sy(r.female_share_pct, share_lim)))
    _flush(canvas, pts, SHARE_COLOUR, dash="4 3")

    canvas.text(ax.x0 + 10, TOP - 6, "Female MNLCS", anchor="start", colour=FEMALE_COLOUR)
    canvas.text(ax.x0 + 110, TOP - 6, "Male MNLCS", anchor="start", colour=MALE_COLOUR)
    canvas.text(ax.x0 + 200, TOP - 6, "% female (right axis)", anchor="start",
                colour=SHARE_COLOUR)
    return canvas.render()


def _flush(canvas, pts, colour, dash=None):
    if len(pts) >= 2:
        canvas.line(pts, colour, dash=dash)


def curve_chart(curve, title: str) -> str:
    """Cumulative top-percentile female share points and the isolated overall point."""
    canvas = Canvas(title)
    ys = [s for _, s in curve.points] + [curve.overall_share]
    lo, hi = min(ys), max(ys)
    pad = (hi - lo) * 0.05 or 5.0
    ylim = (max(0.0, lo - pad), min(100.0, hi + pad))
    ax = Axes(canvas, (0.0, 100.0), ylim)
    ax.frame(_ticks(0, 100, 11), _ticks(*ylim), xfmt=lambda v: f"{v:.0f}%",
             yfmt=lambda v: f"{v:.1f}%")
    for x, y in curve.points:
        canvas.point(ax.sx(x), ax.sy(y), FEMALE_COLOUR, r=2.0)
    ox, oy = curve.overall_point
    canvas.point(ax.sx(ox), ax.sy(oy), "black", r=4.0)
    canvas.text(ax.x0 + 10, TOP - 6, "cumulative top-cited % (x) vs % female (y)",
                anchor="start")
    return canvas.render()
