"""Newton copolygons of two-variable series with p-adic coefficients.

The copolygon of f = sum c_e x^e is the concave piecewise-linear function

    V_f(xi) = min over e in supp(f) of (e1*xi1 + e2*xi2 + v(c_e)),

the min-plus (tropical) polynomial attached to the support.  Everything
here is exact Fraction geometry: vertices are points where at least three
support functionals tie on the lower envelope, tie segments are the
one-dimensional loci where a pair ties and stays minimal, and copolygon
intersections are solved with 2x2 rational linear algebra.  No floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .padics import Padic, PrecisionError
from .series import Series, grlex


def fraction_str(q) -> str:
    """Render a rational as num/den, denominator always present."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


@dataclass(frozen=True)
class TieSegment:
    """Locus where two support functionals tie and both are minimal.

    The line is a*xi1 + b*xi2 = c; points are base + t*direction with t in
    [t_lo, t_hi], a bound of None meaning unbounded on that side.
    """

    first: tuple
    second: tuple
    line: tuple  # (a, b, c) with a*xi1 + b*xi2 = c
    base: tuple  # a point on the line, pair of Fractions
    direction: tuple  # integer direction vector along the line
    t_lo: object = None
    t_hi: object = None

    def point_at(self, t) -> tuple:
        t = Fraction(t)
        return (self.base[0] + t * self.direction[0],
                self.base[1] + t * self.direction[1])

    def parameter_of(self, point):
        """Parameter t of a point assumed to lie on the line."""
        if self.direction[0]:
            return Fraction(point[0] - self.base[0], self.direction[0])
        return Fraction(point[1] - self.base[1], self.direction[1])

    def contains_parameter(self, t) -> bool:
        if self.t_lo is not None and t < self.t_lo:
            return False
        if self.t_hi is not None and t > self.t_hi:
            return False
        return True

    def contains(self, point) -> bool:
        a, b, c = self.line
        if a * point[0] + b * point[1] != c:
            return False
        return self.contains_parameter(self.parameter_of(point))


class Copolygon:
    """Lower envelope of finitely many affine functionals i*xi1 + j*xi2 + v."""

    __slots__ = ("functionals",)

    def __init__(self, functionals):
        best = {}
        for i, j, v in functionals:
            i, j, v = int(i), int(j), Fraction(v)
            if i < 0 or j < 0:
                raise ValueError("support exponents must be nonnegative")
            key = (i, j)
            if key not in best or v < best[key]:
                best[key] = v
        if not best:
            raise ValueError("a copolygon needs at least one support point")
        object.__setattr__(self, "functionals",
                           tuple((i, j, v) for (i, j), v in sorted(best.items(), key=lambda kv: grlex(kv[0]))))

    def __setattr__(self, name, value):
        raise AttributeError("Copolygon objects are immutable")

    @classmethod
    def from_series(cls, s: Series) -> "Copolygon":
        if s.nvars != 2:
            raise ValueError("copolygons are defined for two-variable series")
        if not s.terms:
            raise ValueError("the zero series has an empty copolygon")
        return cls((e[0], e[1], Fraction(c.valuation)) for e, c in s.terms.items())

    def __eq__(self, other):
        if not isinstance(other, Copolygon):
            return NotImplemented
        return self.functionals == other.functionals

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"({i},{j},{v})" for i, j, v in self.functionals)
        return f"Copolygon[{body}]"

    # -- pointwise data --------------------------------------------------

    def evaluate(self, xi) -> Fraction:
        x1, x2 = Fraction(xi[0]), Fraction(xi[1])
        return min(i * x1 + j * x2 + v for i, j, v in self.functionals)

    def argmin(self, xi) -> list:
        """Functionals achieving the minimum at xi."""
        x1, x2 = Fraction(xi[0]), Fraction(xi[1])
        vals = [(i * x1 + j * x2 + v, (i, j, v)) for i, j, v in self.functionals]
        m = min(val for val, _ in vals)
        return [f for val, f in vals if val == m]

    # -- exact geometry ---------------------------------------------------

    def vertices(self) -> list:
        """Points where at least three functionals tie on the envelope.

        Returns (xi1, xi2, value) triples sorted by coordinates.  All
        triples of support functionals are solved exactly; a candidate is
        kept when the common value is the global minimum there.
        """
        fs = self.functionals
        found = {}
        n = len(fs)
        for a in range(n):
            i1, j1, v1 = fs[a]
            for b in range(a + 1, n):
                i2, j2, v2 = fs[b]
                for c in range(b + 1, n):
                    i3, j3, v3 = fs[c]
                    # f_a = f_b and f_a = f_c
                    a11, a12, r1 = i1 - i2, j1 - j2, v2 - v1
                    a21, a22, r2 = i1 - i3, j1 - j3, v3 - v1
                    det = a11 * a22 - a12 * a21
                    if det == 0:
                        continue
                    x1 = Fraction(r1 * a22 - r2 * a12, det)
                    x2 = Fraction(a11 * r2 - a21 * r1, det)
                    value = i1 * x1 + j1 * x2 + v1
                    if value == self.evaluate((x1, x2)):
                        found[(x1, x2)] = value
        return sorted((x1, x2, val) for (x1, x2), val in found.items())

    def tie_segments(self) -> list:
        """Maximal loci where a pair of functionals ties and is minimal.

        Each pair's tie line is cut down by the constraint that every other
        functional stays >= the common value.  Pairs whose tie line is
        matched identically by a third functional are skipped (the locus is
        already covered by the other pairs), as are loci that are empty or
        a single point.
        """
        fs = self.functionals
        segments = []
        n = len(fs)
        for a in range(n):
            i1, j1, v1 = fs[a]
            for b in range(a + 1, n):
                i2, j2, v2 = fs[b]
                da, db = i1 - i2, j1 - j2
                if da == 0 and db == 0:
                    continue
                # tie line da*xi1 + db*xi2 = v2 - v1
                rhs = v2 - v1
                if da:
                    base = (Fraction(rhs, da), Fraction(0))
                else:
                    base = (Fraction(0), Fraction(rhs, db))
                direction = (db, -da)
                t_lo = t_hi = None
                degenerate = empty = False
                for k in range(n):
                    if k in (a, b):
                        continue
                    ik, jk, vk = fs[k]
                    # (f_k - f_a)(base + t*direction) >= 0
                    g0 = (ik - i1) * base[0] + (jk - j1) * base[1] + vk - v1
                    g1 = (ik - i1) * direction[0] + (jk - j1) * direction[1]
                    if g1 == 0:
                        if g0 < 0:
                            empty = True
                            break
                        if g0 == 0:
                            degenerate = True
                            break
                        continue
                    bound = Fraction(-g0, g1)
                    if g1 > 0:
                        if t_lo is None or bound > t_lo:
                            t_lo = bound
                    else:
                        if t_hi is None or bound < t_hi:
                            t_hi = bound
                if degenerate or empty:
                    continue
                if t_lo is not None and t_hi is not None and t_lo >= t_hi:
                    continue
                segments.append(TieSegment(fs[a], fs[b], (da, db, rhs),
                                           base, direction, t_lo, t_hi))
        return segments


def intersect_tie_loci(first: Copolygon, second: Copolygon) -> list:
    """All points where the tie loci of two copolygons cross.

    Segment pairs are intersected with exact 2x2 solves; a crossing counts
    when it lies within both parameter ranges.  Vertices of either
    copolygon that sit on the other's tie locus are included as well.
    Parallel (including collinear) segment pairs contribute nothing.
    """
    points = set()
    seg_a = first.tie_segments()
    seg_b = second.tie_segments()
    for sa in seg_a:
        a1, b1, c1 = sa.line
        for sb in seg_b:
            a2, b2, c2 = sb.line
            det = a1 * b2 - a2 * b1
            if det == 0:
                continue
            x1 = Fraction(c1 * b2 - c2 * b1, det)
            x2 = Fraction(a1 * c2 - a2 * c1, det)
            if sa.contains_parameter(sa.parameter_of((x1, x2))) and \
               sb.contains_parameter(sb.parameter_of((x1, x2))):
                points.add((x1, x2))
    for poly, segments in ((first, seg_b), (second, seg_a)):
        for x1, x2, _ in poly.vertices():
            if any(seg.contains((x1, x2)) for seg in segments):
                points.add((x1, x2))
    return sorted(points)


# -- evaluation bounds ----------------------------------------------------


def evaluate_series(s: Series, point) -> Padic:
    """Value of a two-variable series at a pair of p-adic scalars."""
    if s.nvars != 2:
        raise ValueError("expected a two-variable series")
    a, b = point
    powers_a = {0: Padic.one(s.p, a.prec)}
    powers_b = {0: Padic.one(s.p, b.prec)}

    def power(x, e, cache):
        if e not in cache:
            cache[e] = power(x, e - 1, cache) * x
        return cache[e]

    total = Padic.zero(s.p, min(a.prec, b.prec))
    for e in sorted(s.terms, key=grlex):
        term = s.terms[e] * power(a, e[0], powers_a) * power(b, e[1], powers_b)
        total = total + term
    return total


def lower_bound_check(s: Series, point) -> bool:
    """Certify v(f(alpha)) >= V_f(v(alpha1), v(alpha2)) at a concrete point.

    Both coordinates must be nonzero so the coordinate valuations are
    finite.  When the sum cancels to zero at working precision the check
    passes only if the certified absolute precision already clears the
    copolygon bound; otherwise a PrecisionError is raised rather than
    returning an unsupported verdict.
    """
    a, b = point
    if a.is_zero or b.is_zero:
        raise ValueError("coordinates must be nonzero so valuations are finite")
    bound = Copolygon.from_series(s).evaluate((a.valuation, b.valuation))
    total = evaluate_series(s, point)
    if not total.is_zero:
        return Fraction(total.valuation) >= bound
    floor = None
    for e, c in s.terms.items():
        abs_prec = c.abs_precision + e[0] * a.valuation + e[1] * b.valuation
        if floor is None or abs_prec < floor:
            floor = abs_prec
    if floor is not None and Fraction(floor) >= bound:
        return True
    raise PrecisionError(
        f"sum vanished at working precision {floor}, below the bound {bound}")


# -- support files ---------------------------------------------------------


def support_text(s: Series) -> str:
    """Serialize a series support with coefficient valuations.

    Header line "p D", then one "i j num/den" line per monomial in graded
    lexicographic order.
    """
    if s.nvars != 2:
        raise ValueError("expected a two-variable series")
    lines = [f"{s.p} {s.degree}"]
    for e in s.support():
        lines.append(f"{e[0]} {e[1]} {fraction_str(s.terms[e].valuation)}")
    return "\n".join(lines) + "\n"


def parse_support_text(text: str):
    """Inverse of support_text: returns (p, degree, Copolygon)."""
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise ValueError("empty support file")
    head = rows[0].split()
    if len(head) != 2:
        raise ValueError("header must be two integers: p and truncation degree")
    p, degree = int(head[0]), int(head[1])
    funcs = []
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"malformed support line: {ln!r}")
        funcs.append((int(parts[0]), int(parts[1]), parse_fraction(parts[2])))
    return p, degree, Copolygon(funcs)


# -- deterministic SVG ------------------------------------------------------


@dataclass(frozen=True)
class SvgOptions:
    width: int = 640
    height: int = 640
    margin: int = 60
    xmin: Fraction = Fraction(-1, 2)
    ymin: Fraction = Fraction(-1, 2)
    xmax: Fraction = Fraction(2)
    ymax: Fraction = Fraction(2)
    palette: tuple = (
        "#c6dbef", "#fdd0a2", "#c7e9c0", "#fcbba1", "#dadaeb",
        "#d9d9d9", "#9ecae1", "#fdae6b", "#a1d99b", "#fc9272",
    )


def _fmt(q: Fraction) -> str:
    """Fixed-point with three decimals, computed in integers."""
    n = round(q * 1000)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 1000}.{n % 1000:03d}"


def _clip_halfplane(polygon, a, b, c):
    """Sutherland-Hodgman step: keep a*x + b*y + c >= 0."""
    if not polygon:
        return []
    out = []
    m = len(polygon)
    for idx in range(m):
        cur = polygon[idx]
        nxt = polygon[(idx + 1) % m]
        cur_in = a * cur[0] + b * cur[1] + c >= 0
        nxt_in = a * nxt[0] + b * nxt[1] + c >= 0
        if cur_in:
            out.append(cur)
        if cur_in != nxt_in:
            denom = a * (nxt[0] - cur[0]) + b * (nxt[1] - cur[1])
            t = Fraction(-(a * cur[0] + b * cur[1] + c), denom)
            out.append((cur[0] + t * (nxt[0] - cur[0]),
                        cur[1] + t * (nxt[1] - cur[1])))
    deduped = []
    for pt in out:
        if not deduped or deduped[-1] != pt:
            deduped.append(pt)
    if deduped and len(deduped) > 1 and deduped[0] == deduped[-1]:
        deduped.pop()
    return deduped


def emit_svg(poly: Copolygon, options: SvgOptions = None) -> str:
    """Draw the minimality cells, tie segments and vertices of a copolygon.

    The output is byte-stable: exact rational geometry, fixed iteration
    order, and integer fixed-point coordinate formatting.
    """
    opt = options or SvgOptions()
    span_x = opt.xmax - opt.xmin
    span_y = opt.ymax - opt.ymin
    inner_w = opt.width - 2 * opt.margin
    inner_h = opt.height - 2 * opt.margin

    def to_px(pt):
        px = opt.margin + (pt[0] - opt.xmin) * inner_w / span_x
        py = opt.height - opt.margin - (pt[1] - opt.ymin) * inner_h / span_y
        return _fmt(px), _fmt(py)

    box = [(opt.xmin, opt.ymin), (opt.xmax, opt.ymin),
           (opt.xmax, opt.ymax), (opt.xmin, opt.ymax)]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{opt.width}" '
        f'height="{opt.height}" viewBox="0 0 {opt.width} {opt.height}">',
        f'<rect width="{opt.width}" height="{opt.height}" fill="#ffffff"/>',
    ]

    fs = poly.functionals
    for idx, (i1, j1, v1) in enumerate(fs):
        cell = list(box)
        for k, (ik, jk, vk) in enumerate(fs):
            if k == idx:
                continue
            # keep f_idx <= f_k: (ik-i1)x + (jk-j1)y + (vk-v1) >= 0
            cell = _clip_halfplane(cell, ik - i1, jk - j1, vk - v1)
            if len(cell) < 3:
                cell = []
                break
        if len(cell) < 3:
            continue
        color = opt.palette[idx % len(opt.palette)]
        coords = " ".join(",".join(to_px(pt)) for pt in cell)
        parts.append(f'<polygon points="{coords}" fill="{color}" '
                     f'stroke="none"><title>{i1} {j1} {fraction_str(v1)}'
                     f'</title></polygon>')

    # coordinate axes
    for a, b, c in ((1, 0, 0), (0, 1, 0)):  # xi1 = 0, xi2 = 0
        ends = _segment_in_box(a, b, c, None, None, None, None, box)
        if ends:
            (x1, y1), (x2, y2) = (to_px(ends[0]), to_px(ends[1]))
            parts.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                         f'stroke="#888888" stroke-width="1"/>')

    for seg in poly.tie_segments():
        ends = _segment_in_box(seg.line[0], seg.line[1], -seg.line[2],
                               seg.base, seg.direction, seg.t_lo, seg.t_hi, box)
        if ends:
            (x1, y1), (x2, y2) = (to_px(ends[0]), to_px(ends[1]))
            parts.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                         f'stroke="#000000" stroke-width="2"/>')

    for x1, x2, value in poly.vertices():
        if opt.xmin <= x1 <= opt.xmax and opt.ymin <= x2 <= opt.ymax:
            cx, cy = to_px((x1, x2))
            parts.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="#000000">'
                         f'<title>{fraction_str(x1)} {fraction_str(x2)} '
                         f'{fraction_str(value)}</title></circle>')

    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _segment_in_box(a, b, c, base, direction, t_lo, t_hi, box):
    """Clip the line a*x + b*y + c = 0 (restricted to [t_lo, t_hi] when a
    parametrization is given) to the box; returns two endpoints or None."""
    if base is None:
        # parametrize the raw line
        if a:
            base = (Fraction(-c, a), Fraction(0))
        else:
            base = (Fraction(0), Fraction(-c, b))
        direction = (b, -a)
    lo, hi = t_lo, t_hi
    (xmin, ymin), (xmax, ymax) = box[0], box[2]
    # box edge constraints, each affine in t
    for coeff, bound, keep_ge in ((direction[0], xmin - base[0], True),
                                  (direction[0], xmax - base[0], False),
                                  (direction[1], ymin - base[1], True),
                                  (direction[1], ymax - base[1], False)):
        if coeff == 0:
            inside = bound <= 0 if keep_ge else bound >= 0
            if not inside:
                return None
            continue
        t = Fraction(bound, coeff)
        wants_ge = keep_ge == (coeff > 0)
        if wants_ge:
            if lo is None or t > lo:
                lo = t
        else:
            if hi is None or t < hi:
                hi = t
    if lo is None or hi is None or lo > hi:
        return None
    return (base[0] + lo * direction[0], base[1] + lo * direction[1]), \
           (base[0] + hi * direction[0], base[1] + hi * direction[1])
