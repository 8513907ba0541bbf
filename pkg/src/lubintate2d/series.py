"""Sparse truncated multivariate power series over p-adic scalars.

Terms live in a dict keyed by exponent tuples; every monomial past the
truncation degree is dropped eagerly and exact-zero coefficients are never
stored.  Values are treated as immutable once built, so series can be
shared freely.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .padics import DEFAULT_PRECISION, Padic


def grlex(exponents):
    """Graded-lexicographic sort key."""
    return (sum(exponents), exponents)


class Series:
    __slots__ = ("p", "nvars", "degree", "terms")

    def __init__(self, p: int, nvars: int, degree: int, terms=None):
        if nvars < 1:
            raise ValueError("need at least one variable")
        if degree < 0:
            raise ValueError("truncation degree must be nonnegative")
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars or any(x < 0 for x in e):
                raise ValueError(f"bad exponent tuple {e} for {nvars} variables")
            if sum(e) > degree:
                raise ValueError(f"monomial {e} exceeds truncation degree {degree}")
            if not isinstance(c, Padic):
                raise TypeError("coefficients must be Padic")
            if c.p != p:
                raise ValueError("coefficient prime mismatch")
            if not c.is_zero:
                clean[e] = c
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Series values are immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, p, nvars, degree):
        return cls(p, nvars, degree, {})

    @classmethod
    def variable(cls, p, nvars, degree, index, prec=DEFAULT_PRECISION):
        e = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(p, nvars, degree, {e: Padic.one(p, prec)})

    @classmethod
    def from_coeffs(cls, p, nvars, degree, coeffs, prec=DEFAULT_PRECISION):
        """Build from {exponents: int | Fraction | Padic}."""
        terms = {}
        for e, c in coeffs.items():
            if isinstance(c, Padic):
                terms[tuple(e)] = c
            elif isinstance(c, int):
                terms[tuple(e)] = Padic.from_int(p, c, prec)
            else:
                terms[tuple(e)] = Padic.from_fraction(p, Fraction(c), prec)
        return cls(p, nvars, degree, terms)

    # -- inspection -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return sorted(self.terms, key=grlex)

    def coefficient(self, e) -> Padic:
        return self.terms.get(tuple(e), Padic.zero(self.p))

    def min_total_degree(self):
        """Least total degree with a nonzero term, or None for zero."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def min_valuation(self):
        """Least coefficient valuation, or None for zero."""
        if not self.terms:
            return None
        return min(c.val for c in self.terms.values())

    def min_val_plus_degree(self):
        """min over terms of (coefficient valuation + total degree)."""
        if not self.terms:
            return None
        return min(c.val + sum(e) for e, c in self.terms.items())

    def degree_slice(self, k: int) -> dict:
        return {e: c for e, c in self.terms.items() if sum(e) == k}

    def units_mod_p(self) -> dict:
        """Reduction modulo p: {exponents: unit % p} over valuation-0 terms.

        Requires every coefficient to be integral.
        """
        out = {}
        for e, c in self.terms.items():
            if c.val < 0:
                raise ValueError(f"coefficient at {e} has negative valuation {c.val}")
            if c.val == 0:
                u = c.unit % self.p
                if u:
                    out[e] = u
        return out

    # -- ring operations ---------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Series):
            raise TypeError("expected a Series")
        if (other.p, other.nvars, other.degree) != (self.p, self.nvars, self.degree):
            raise ValueError("series shape mismatch (prime, variables, degree)")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms.items():
            cur = acc.get(e)
            acc[e] = c if cur is None else cur + c
        return Series(self.p, self.nvars, self.degree, acc)

    def __neg__(self):
        return Series(self.p, self.nvars, self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        acc = {}
        deg = self.degree
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) > deg:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                cur = acc.get(e)
                acc[e] = c if cur is None else cur + c
        return Series(self.p, self.nvars, deg, acc)

    def scale(self, c) -> "Series":
        if isinstance(c, int):
            c = Padic.from_int(self.p, c)
        elif isinstance(c, Fraction):
            c = Padic.from_fraction(self.p, c)
        if c.p != self.p:
            raise ValueError("prime mismatch")
        return Series(self.p, self.nvars, self.degree, {e: t * c for e, t in self.terms.items()})

    # -- reshaping ----------------------------------------------------------

    def truncate(self, degree: int) -> "Series":
        if degree > self.degree:
            raise ValueError("cannot extend a truncated series")
        return Series(self.p, self.nvars, degree,
                      {e: c for e, c in self.terms.items() if sum(e) <= degree})

    def raise_vars(self, q: int) -> "Series":
        """Substitute x_i -> x_i**q for every variable."""
        if q < 1:
            raise ValueError("exponent must be positive")
        acc = {}
        for e, c in self.terms.items():
            if sum(e) * q <= self.degree:
                acc[tuple(x * q for x in e)] = c
        return Series(self.p, self.nvars, self.degree, acc)

    def embed(self, nvars: int, positions: Sequence[int]) -> "Series":
        """View in a larger variable set; positions maps old index -> new."""
        positions = tuple(positions)
        if len(positions) != self.nvars or len(set(positions)) != len(positions):
            raise ValueError("positions must list a distinct slot per variable")
        if any(i < 0 or i >= nvars for i in positions):
            raise ValueError("position out of range")
        acc = {}
        for e, c in self.terms.items():
            new = [0] * nvars
            for old, pos in enumerate(positions):
                new[pos] = e[old]
            acc[tuple(new)] = c
        return Series(self.p, nvars, self.degree, acc)

    def permute_vars(self, perm: Sequence[int]) -> "Series":
        """Relabel variables: new exponent i comes from old exponent perm[i]."""
        perm = tuple(perm)
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError("not a permutation")
        return Series(self.p, self.nvars, self.degree,
                      {tuple(e[perm[i]] for i in range(self.nvars)): c
                       for e, c in self.terms.items()})

    def eliminate_zeros(self, positions: Sequence[int]) -> "Series":
        """Set the listed variables to 0 and drop them from the tuple."""
        drop = set(positions)
        keep = [i for i in range(self.nvars) if i not in drop]
        if not keep:
            raise ValueError("cannot drop every variable")
        acc = {}
        for e, c in self.terms.items():
            if any(e[i] for i in drop):
                continue
            acc[tuple(e[i] for i in keep)] = c
        return Series(self.p, len(keep), self.degree, acc)

    # -- substitution --------------------------------------------------------

    def substitute(self, inner: Sequence["Series"]) -> "Series":
        """Plug inner[i] in for variable i; inner series need zero constant
        term so the truncated composite is exact through the shared degree."""
        inner = list(inner)
        if len(inner) != self.nvars:
            raise ValueError(f"need {self.nvars} inner series, got {len(inner)}")
        w = inner[0].nvars
        zero_exp = (0,) * w
        for g in inner:
            if (g.p, g.degree) != (self.p, self.degree) or g.nvars != w:
                raise ValueError("inner series shape mismatch")
            if not g.coefficient(zero_exp).is_zero:
                raise ValueError("inner series must have zero constant term")
        caches = [dict() for _ in inner]
        acc = {}
        for e in sorted(self.terms, key=grlex):
            c = self.terms[e]
            prod = None
            for i, ei in enumerate(e):
                if ei == 0:
                    continue
                pw = _power(inner[i], ei, caches[i])
                prod = pw if prod is None else prod * pw
                if prod.is_zero:
                    break
            if prod is None:
                # constant monomial of the outer series passes through
                cur = acc.get(zero_exp)
                acc[zero_exp] = c if cur is None else cur + c
                continue
            for fe, fc in prod.terms.items():
                t = c * fc
                cur = acc.get(fe)
                acc[fe] = t if cur is None else cur + t
        return Series(self.p, w, self.degree, acc)

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        if (self.p, self.nvars) != (other.p, other.nvars):
            return False
        for e in self.terms.keys() | other.terms.keys():
            if self.coefficient(e) != other.coefficient(e):
                return False
        return True

    __hash__ = None

    def __repr__(self):
        n = len(self.terms)
        return f"Series(p={self.p}, vars={self.nvars}, D={self.degree}, {n} terms)"


def _power(s: Series, e: int, cache: dict) -> Series:
    if e == 1:
        return s
    md = s.min_total_degree()
    if md is None or md * e > s.degree:
        return Series.zero(s.p, s.nvars, s.degree)
    hit = cache.get(e)
    if hit is not None:
        return hit
    half = _power(s, e // 2, cache)
    out = half * half
    if e % 2:
        out = out * s
    cache[e] = out
    return out


@dataclass(frozen=True)
class SeriesPair:
    first: Series
    second: Series

    def __post_init__(self):
        a, b = self.first, self.second
        if (a.p, a.nvars, a.degree) != (b.p, b.nvars, b.degree):
            raise ValueError("pair components must share prime, variables, degree")

    @property
    def p(self):
        return self.first.p

    @property
    def nvars(self):
        return self.first.nvars

    @property
    def degree(self):
        return self.first.degree

    @classmethod
    def identity(cls, p, degree, prec=DEFAULT_PRECISION):
        return cls(Series.variable(p, 2, degree, 0, prec),
                   Series.variable(p, 2, degree, 1, prec))

    @classmethod
    def zero(cls, p, nvars, degree):
        return cls(Series.zero(p, nvars, degree), Series.zero(p, nvars, degree))

    @property
    def is_zero(self):
        return self.first.is_zero and self.second.is_zero

    def __add__(self, other):
        return SeriesPair(self.first + other.first, self.second + other.second)

    def __sub__(self, other):
        return SeriesPair(self.first - other.first, self.second - other.second)

    def scale(self, c):
        return SeriesPair(self.first.scale(c), self.second.scale(c))

    def truncate(self, degree):
        return SeriesPair(self.first.truncate(degree), self.second.truncate(degree))

    def raise_vars(self, q):
        return SeriesPair(self.first.raise_vars(q), self.second.raise_vars(q))

    def embed(self, nvars, positions):
        return SeriesPair(self.first.embed(nvars, positions),
                          self.second.embed(nvars, positions))

    def min_valuation(self):
        vals = [v for v in (self.first.min_valuation(), self.second.min_valuation()) if v is not None]
        return min(vals) if vals else None


def compose(outer: SeriesPair, inner: SeriesPair) -> SeriesPair:
    """outer(inner): outer must be a pair in two variables."""
    if outer.nvars != 2:
        raise ValueError("outer pair must live in two variables")
    ins = [inner.first, inner.second]
    return SeriesPair(outer.first.substitute(ins), outer.second.substitute(ins))


def invert_pair(f: SeriesPair, prec: int = DEFAULT_PRECISION) -> SeriesPair:
    """Compositional inverse of a pair congruent to the identity mod degree 2.

    Degree-by-degree correction: with g exact through degree k, the defect
    r = f(g) - id starts in degree k+1, and g - r is exact through k+1
    because the linear part of f is the identity.
    """
    if f.nvars != 2:
        raise ValueError("inversion needs a two-variable pair")
    p, degree = f.p, f.degree
    one = Padic.one(p, prec)
    zero_exp = (0, 0)
    for comp, var in ((f.first, (1, 0)), (f.second, (0, 1))):
        if not comp.coefficient(zero_exp).is_zero:
            raise ValueError("pair must have zero constant term")
        lin = comp.degree_slice(1)
        if set(lin) != {var} or lin[var] != one:
            raise ValueError("linear part must be the identity")
    ident = SeriesPair.identity(p, degree, prec)
    g = ident
    for _ in range(degree + 1):
        r = compose(f, g) - ident
        if r.is_zero:
            break
        g = g - r
    else:
        raise ArithmeticError("inversion did not converge")
    if not (compose(g, f) - ident).is_zero:
        raise ArithmeticError("inverse failed the two-sided check")
    return g


# -- plain-text serialization -------------------------------------------------
#
# One term per line, "e1 e2 ... ev : valuation unit", graded-lex order.
# A file is an optional JSON header line followed by [name v=<nvars> D=<degree>]
# sections, one per series.


def series_to_lines(s: Series):
    out = []
    for e in s.support():
        c = s.terms[e]
        out.append(f"{' '.join(str(x) for x in e)} : {c.val} {c.unit}")
    return out


def dump_sections(header, sections) -> str:
    """Serialize {name: Series} with an optional JSON header dict."""
    lines = []
    if header is not None:
        lines.append(json.dumps(header, sort_keys=True, separators=(", ", ": ")))
    for name, s in sections.items():
        lines.append(f"[{name} v={s.nvars} D={s.degree}]")
        lines.extend(series_to_lines(s))
    return "\n".join(lines) + "\n"


def parse_sections(text: str):
    """Inverse of dump_sections; the header must carry "p" (and may carry "N")."""
    header = None
    sections = {}
    current = None  # (name, nvars, degree, terms)
    p = None
    prec = DEFAULT_PRECISION

    def flush():
        if current is not None:
            name, nv, dg, terms = current
            sections[name] = Series(p, nv, dg, terms)

    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("{"):
            header = json.loads(line)
            p = header.get("p")
            prec = header.get("N", DEFAULT_PRECISION)
            continue
        if line.startswith("["):
            if p is None:
                raise ValueError("series file needs a header line with p before sections")
            flush()
            body = line[1:-1].split()
            name = body[0]
            fields = dict(part.split("=") for part in body[1:])
            current = (name, int(fields["v"]), int(fields["D"]), {})
            continue
        if current is None:
            raise ValueError(f"term line outside any section: {line!r}")
        left, right = line.split(":")
        e = tuple(int(x) for x in left.split())
        val_s, unit_s = right.split()
        current[3][e] = Padic(p, int(val_s), int(unit_s), prec)
    flush()
    return header, sections
