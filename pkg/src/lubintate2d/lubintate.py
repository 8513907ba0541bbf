"""Two-dimensional Lubin-Tate formal groups over Z_p.

A coprime pair of heights (h1, h2) determines a logarithm pair L whose
coefficients live in Q_p: with h = h1 + h2 and q = p^h,

    L1 = x1 + sum_{k>=1} p^{-2k} x1^{q^k} + sum_{k>=0} p^{-(2k+1)} x2^{p^{h1} q^k}
    L2 = x2 + sum_{k>=1} p^{-2k} x2^{q^k} + sum_{k>=0} p^{-(2k+1)} x1^{p^{h2} q^k}

L solves the twisted functional equations

    L1 = x1 + p^{-1} L2(x1^{p^{h1}}, x2^{p^{h1}})
    L2 = x2 + p^{-1} L1(x1^{p^{h2}}, x2^{p^{h2}})

and F = L^{-1}(L(X) + L(Y)) is then a formal group law with integral
coefficients whose multiplication-by-p reduces mod p to the cross
Frobenius pair (x2^{p^{h1}}, x1^{p^{h2}}), giving height h1 + h2.

Everything here is exact at the chosen truncation degree; the verifiers
return structured violation lists rather than booleans alone, so a failure
names the offending monomial.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .padics import DEFAULT_PRECISION, Padic, UnramifiedElement, is_prime
from .series import Series, SeriesPair, compose, grlex, invert_pair


@dataclass(frozen=True)
class HeightPair:
    h1: int
    h2: int

    def __post_init__(self):
        if not (isinstance(self.h1, int) and isinstance(self.h2, int)):
            raise ValueError("heights must be integers")
        if self.h1 < 1 or self.h2 < 1:
            raise ValueError("heights must be positive")
        if gcd(self.h1, self.h2) != 1:
            raise ValueError(f"heights must be coprime, got ({self.h1}, {self.h2})")

    @property
    def total(self) -> int:
        return self.h1 + self.h2


def _as_heights(heights) -> HeightPair:
    if isinstance(heights, HeightPair):
        return heights
    h1, h2 = heights
    return HeightPair(h1, h2)


def _check_params(p: int, degree: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if degree < 1:
        raise ValueError("truncation degree must be at least 1")


def build_logarithm(p: int, heights, degree: int, prec: int = DEFAULT_PRECISION) -> SeriesPair:
    """Closed-form logarithm pair, truncated at total degree `degree`."""
    heights = _as_heights(heights)
    _check_params(p, degree)
    h = heights.total
    one = Padic.one(p, prec)
    terms1 = {(1, 0): one}
    terms2 = {(0, 1): one}
    k = 1
    while p ** (k * h) <= degree:
        c = Padic(p, -2 * k, 1, prec)
        terms1[(p ** (k * h), 0)] = c
        terms2[(0, p ** (k * h))] = c
        k += 1
    k = 0
    while p ** (heights.h1 + k * h) <= degree:
        terms1[(0, p ** (heights.h1 + k * h))] = Padic(p, -(2 * k + 1), 1, prec)
        k += 1
    k = 0
    while p ** (heights.h2 + k * h) <= degree:
        terms2[(p ** (heights.h2 + k * h), 0)] = Padic(p, -(2 * k + 1), 1, prec)
        k += 1
    return SeriesPair(Series(p, 2, degree, terms1), Series(p, 2, degree, terms2))


def recursion_defects(log: SeriesPair, p: int, heights) -> list:
    """Monomials violating the twisted functional equations; empty = exact.

    Checked coefficientwise through the truncation degree.  Raising the
    variables to the p^{h_i} power maps degree d to degree d * p^{h_i}, so
    the truncated right-hand side is complete through the shared degree.
    """
    heights = _as_heights(heights)
    pinv = Padic(p, -1, 1)
    x1 = Series.variable(p, 2, log.degree, 0)
    x2 = Series.variable(p, 2, log.degree, 1)
    d1 = log.first - x1 - log.second.raise_vars(p**heights.h1).scale(pinv)
    d2 = log.second - x2 - log.first.raise_vars(p**heights.h2).scale(pinv)
    out = []
    for comp, d in ((1, d1), (2, d2)):
        for e in d.support():
            out.append((comp, e))
    return out


class GroupConstructionError(ArithmeticError):
    """The constructed law failed a structural invariant."""


@dataclass(frozen=True)
class LubinTateGroup:
    p: int
    heights: HeightPair
    degree: int
    prec: int
    logarithm: SeriesPair   # two variables
    exponential: SeriesPair  # two variables, inverse of the logarithm
    group_law: SeriesPair   # four variables: x1, x2, y1, y2


def build_group(p: int, heights, degree: int, prec: int = DEFAULT_PRECISION) -> LubinTateGroup:
    """Construct the group law F = L^{-1}(L(X) + L(Y)) and check its shape."""
    heights = _as_heights(heights)
    log = build_logarithm(p, heights, degree, prec)
    exp = invert_pair(log, prec)
    lx = log.embed(4, (0, 1))
    ly = log.embed(4, (2, 3))
    law = compose(exp, lx + ly)

    mv = law.min_valuation()
    if mv is not None and mv < 0:
        raise GroupConstructionError(f"group law has a denominator (min valuation {mv})")
    ident = SeriesPair.identity(p, degree, prec)
    if SeriesPair(law.first.eliminate_zeros((2, 3)), law.second.eliminate_zeros((2, 3))) != ident:
        raise GroupConstructionError("F(X, 0) != X")
    if SeriesPair(law.first.eliminate_zeros((0, 1)), law.second.eliminate_zeros((0, 1))) != ident:
        raise GroupConstructionError("F(0, Y) != Y")
    return LubinTateGroup(p, heights, degree, prec, log, exp, law)


def multiplication(a, group: LubinTateGroup) -> SeriesPair:
    """[a]_F = L^{-1}(a L(X)) for an integral p-adic multiplier a."""
    if isinstance(a, Padic):
        if a.p != group.p:
            raise ValueError("prime mismatch")
        c = a
    else:
        c = Padic.from_int(group.p, a, group.prec)
    if c.is_zero:
        return SeriesPair.zero(group.p, 2, group.degree)
    if c.valuation < 0:
        raise ValueError(f"multiplier must be integral, valuation {c.valuation} < 0")
    return compose(group.exponential, group.logarithm.scale(c))


@dataclass(frozen=True)
class Violation:
    component: int        # 1 or 2
    exponents: tuple | None
    check: str
    detail: str = ""

    def __str__(self):
        where = f" at {self.exponents}" if self.exponents is not None else ""
        tail = f": {self.detail}" if self.detail else ""
        return f"[{self.check}] component {self.component}{where}{tail}"


@dataclass(frozen=True)
class CongruenceReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def congruence_report(f: SeriesPair, p: int, heights) -> CongruenceReport:
    """Check a pair against the multiplication-by-p congruences.

    Term by term through the pair's truncation degree:
      - integral coefficients, zero constant term;
      - linear part exactly (p x1, p x2);
      - reduction mod p equal to the cross Frobenius pair
        (x2^{p^{h1}}, x1^{p^{h2}}), monomials beyond the truncation excused.
    """
    heights = _as_heights(heights)
    if f.nvars != 2:
        raise ValueError("expected a two-variable pair")
    out = []
    p_scalar = Padic.from_int(p, p)
    lin_expected = ({(1, 0): p_scalar}, {(0, 1): p_scalar})
    frob_exp = ((0, p**heights.h1), (p**heights.h2, 0))
    for idx, comp in ((1, f.first), (2, f.second)):
        if not comp.coefficient((0, 0)).is_zero:
            out.append(Violation(idx, (0, 0), "constant", "nonzero constant term"))
        bad_val = [e for e, c in comp.terms.items() if c.val < 0]
        for e in sorted(bad_val, key=grlex):
            out.append(Violation(idx, e, "integral", "negative valuation"))
        lin = comp.degree_slice(1)
        want = lin_expected[idx - 1]
        for e in sorted(lin.keys() | want.keys(), key=grlex):
            if lin.get(e, Padic.zero(p)) != want.get(e, Padic.zero(p)):
                out.append(Violation(idx, e, "linear", "linear part is not p*X"))
        if bad_val:
            continue  # reduction mod p undefined
        units = comp.units_mod_p()
        expected = {}
        e = frob_exp[idx - 1]
        if sum(e) <= f.degree:
            expected[e] = 1
        for e in sorted(units.keys() | expected.keys(), key=grlex):
            got = units.get(e, 0)
            want_u = expected.get(e, 0)
            if sum(e) <= 1:
                continue  # the linear check owns degree <= 1
            if got != want_u:
                out.append(Violation(idx, e, "frobenius",
                                     f"mod-p coefficient {got}, expected {want_u}"))
    return CongruenceReport(tuple(out))


def verify_p_congruences(group: LubinTateGroup) -> CongruenceReport:
    """Congruence checks on [p]_F plus exact linearity L([p]_F X) = p L(X)."""
    m = multiplication(group.p, group)
    base = congruence_report(m, group.p, group.heights)
    out = list(base.violations)
    lhs = compose(group.logarithm, m)
    rhs = group.logarithm.scale(group.p)
    diff = lhs - rhs
    for idx, comp in ((1, diff.first), (2, diff.second)):
        for e in comp.support():
            out.append(Violation(idx, e, "linearity", "L([p] X) != p L(X)"))
    return CongruenceReport(tuple(out))


def is_endomorphism(f: SeriesPair, group: LubinTateGroup, degree: int | None = None):
    """Does f(F(X, Y)) equal F(f(X), f(Y)) through the given degree?

    Returns (ok, first_violation) with the earliest offending monomial in
    graded-lex order when the answer is no.
    """
    d = group.degree if degree is None else degree
    if d > group.degree:
        raise ValueError("cannot check beyond the group's truncation degree")
    if f.nvars != 2 or f.degree != group.degree or f.p != group.p:
        raise ValueError("endomorphism candidate must match the group's shape")
    law = group.group_law
    lhs = compose(f, law)
    fx = f.embed(4, (0, 1))
    fy = f.embed(4, (2, 3))
    ins = [fx.first, fx.second, fy.first, fy.second]
    rhs = SeriesPair(law.first.substitute(ins), law.second.substitute(ins))
    diff = (lhs - rhs).truncate(d)
    if diff.is_zero:
        return True, None
    worst = None
    for idx, comp in ((1, diff.first), (2, diff.second)):
        for e in comp.support():
            cand = (grlex(e), idx, e)
            if worst is None or cand < worst:
                worst = cand
    _, idx, e = worst
    return False, Violation(idx, e, "endomorphism", "f(F(X,Y)) != F(f(X), f(Y))")


@dataclass(frozen=True)
class GammaEndomorphism:
    """The diagonal endomorphism X -> (g x1, g^{p^{h2}} x2) for a
    Teichmuller unit g of the degree-(h1+h2) unramified extension."""

    gamma: UnramifiedElement
    twist: UnramifiedElement  # gamma^{p^{h2}}
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations


def gamma_endomorphism(gamma: UnramifiedElement, group: LubinTateGroup) -> GammaEndomorphism:
    """Verify L(gamma x1, gamma^{p^{h2}} x2) = diag(gamma, gamma^{p^{h2}}) L(X).

    The check is coefficientwise over the logarithm's support: the monomial
    x1^i x2^j picks up gamma^(i + j p^{h2}), which must equal gamma on the
    first component and gamma^{p^{h2}} on the second.  All root-of-unity
    arithmetic happens in the unramified ring at its own precision.
    """
    ring = gamma.ring
    heights = group.heights
    if ring.p != group.p:
        raise ValueError("prime mismatch between gamma and the group")
    if ring.degree != heights.total:
        raise ValueError(f"gamma must live in the degree-{heights.total} unramified ring")
    if gamma.is_zero:
        raise ValueError("gamma must be a unit")
    order = ring.p**ring.degree - 1
    if gamma**order != ring.one():
        raise ValueError("gamma must be a (p^h - 1)-th root of unity (Teichmuller unit)")
    q2 = group.p**heights.h2
    twist = gamma**q2
    powers = {1: gamma}

    def gpow(e):
        if e not in powers:
            powers[e] = gamma**e
        return powers[e]

    out = []
    for idx, comp, target in ((1, group.logarithm.first, gamma),
                              (2, group.logarithm.second, twist)):
        for e in comp.support():
            i, j = e
            if gpow(i + j * q2) != target:
                out.append(Violation(idx, e, "gamma",
                                     f"gamma^{i + j * q2} differs from the diagonal entry"))
    return GammaEndomorphism(gamma, twist, tuple(out))


def height_of(group: LubinTateGroup):
    """Height read off from [p]_F mod p.

    Returns h1 + h2 when the reduction is exactly the cross Frobenius pair
    (x2^{p^{h1}}, x1^{p^{h2}}); any other shape gets the diagnostic string
    "not monomial-Frobenius" rather than a guess.
    """
    m = multiplication(group.p, group)
    mv = m.min_valuation()
    if mv is not None and mv < 0:
        return "not monomial-Frobenius"
    h1, h2 = group.heights.h1, group.heights.h2
    expected = ({(0, group.p**h1): 1}, {(group.p**h2, 0): 1})
    for comp, want in ((m.first, expected[0]), (m.second, expected[1])):
        if any(sum(e) > group.degree for e in want):
            return "not monomial-Frobenius"
        got = {e: u for e, u in comp.units_mod_p().items() if sum(e) > 1}
        if got != want:
            return "not monomial-Frobenius"
    return group.heights.total


def cauchy_gap(group: LubinTateGroup, m: int, n: int):
    """Valuation gap between renormalized iterates L_k = p^{-k} [p^k]_F.

    Term valuation is coefficient valuation plus total degree.  Returns the
    minimum over the surviving monomials of L_m - L_n, or None when the
    difference vanishes identically at this truncation (the infinite
    marker).  The gap is at least n + 1 whenever m > n.
    """
    if not (m >= n >= 1):
        raise ValueError("need m >= n >= 1")
    has_nonlinear = any(sum(e) > 1
                        for comp in (group.logarithm.first, group.logarithm.second)
                        for e in comp.terms)
    if not has_nonlinear:
        raise ValueError("truncation degree too small: the logarithm has no nonlinear term")
    if m == n:
        return None
    lm = multiplication(group.p**m, group).scale(Padic(group.p, -m, 1, group.prec))
    ln = multiplication(group.p**n, group).scale(Padic(group.p, -n, 1, group.prec))
    diff = lm - ln
    vals = [v for v in (diff.first.min_val_plus_degree(), diff.second.min_val_plus_degree())
            if v is not None]
    return min(vals) if vals else None


@dataclass(frozen=True)
class AxiomsReport:
    commutative: bool
    identity: bool
    associative: bool
    associativity_degree: int
    additive: bool          # L(F(X,Y)) = L(X) + L(Y)
    integral: bool
    p_differential: bool    # [p]_F has linear part exactly p * X
    violations: tuple = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return (self.commutative and self.identity and self.associative
                and self.additive and self.integral and self.p_differential)


def group_axioms_report(group: LubinTateGroup, assoc_degree: int = 8) -> AxiomsReport:
    """Exact group-axiom suite; associativity runs in six variables at
    min(assoc_degree, group degree) to keep the blowup bounded."""
    p, degree = group.p, group.degree
    law = group.group_law
    out = []

    swapped = SeriesPair(law.first.permute_vars((2, 3, 0, 1)),
                         law.second.permute_vars((2, 3, 0, 1)))
    commutative = swapped == law
    if not commutative:
        out.append(Violation(0, None, "commutative", "F(X,Y) != F(Y,X)"))

    ident = SeriesPair.identity(p, degree, group.prec)
    identity_ok = (SeriesPair(law.first.eliminate_zeros((2, 3)),
                              law.second.eliminate_zeros((2, 3))) == ident)
    if not identity_ok:
        out.append(Violation(0, None, "identity", "F(X, 0) != X"))

    da = min(assoc_degree, degree)
    fa = law.truncate(da)
    f_xy = fa.embed(6, (0, 1, 2, 3))
    f_yz = fa.embed(6, (2, 3, 4, 5))
    z1 = Series.variable(p, 6, da, 4, group.prec)
    z2 = Series.variable(p, 6, da, 5, group.prec)
    x1 = Series.variable(p, 6, da, 0, group.prec)
    x2 = Series.variable(p, 6, da, 1, group.prec)
    left_ins = [f_xy.first, f_xy.second, z1, z2]
    right_ins = [x1, x2, f_yz.first, f_yz.second]
    lhs = SeriesPair(fa.first.substitute(left_ins), fa.second.substitute(left_ins))
    rhs = SeriesPair(fa.first.substitute(right_ins), fa.second.substitute(right_ins))
    associative = lhs == rhs
    if not associative:
        out.append(Violation(0, None, "associative", f"fails at degree {da}"))

    lhs_add = compose(group.logarithm, law)
    rhs_add = group.logarithm.embed(4, (0, 1)) + group.logarithm.embed(4, (2, 3))
    additive = lhs_add == rhs_add
    if not additive:
        out.append(Violation(0, None, "additive", "L(F(X,Y)) != L(X) + L(Y)"))

    mv = law.min_valuation()
    integral = mv is None or mv >= 0
    if not integral:
        out.append(Violation(0, None, "integral", f"min valuation {mv}"))

    pm = multiplication(p, group)
    p_scalar = Padic.from_int(p, p)
    p_diff = (pm.first.degree_slice(1) == {(1, 0): p_scalar}
              and pm.second.degree_slice(1) == {(0, 1): p_scalar})
    if not p_diff:
        out.append(Violation(0, None, "p-differential", "[p]_F linear part is not p*X"))

    return AxiomsReport(commutative, identity_ok, associative, da,
                        additive, integral, p_diff, tuple(out))


def group_to_text(group: LubinTateGroup) -> str:
    """Series text serialization with a JSON parameter header."""
    from .series import dump_sections

    header = {"p": group.p, "h1": group.heights.h1, "h2": group.heights.h2,
              "D": group.degree, "N": group.prec}
    sections = {
        "logarithm.1": group.logarithm.first,
        "logarithm.2": group.logarithm.second,
        "exponential.1": group.exponential.first,
        "exponential.2": group.exponential.second,
        "group_law.1": group.group_law.first,
        "group_law.2": group.group_law.second,
    }
    return dump_sections(header, sections)


def group_from_text(text: str) -> LubinTateGroup:
    from .series import parse_sections

    header, sections = parse_sections(text)
    heights = HeightPair(header["h1"], header["h2"])
    log = SeriesPair(sections["logarithm.1"], sections["logarithm.2"])
    exp = SeriesPair(sections["exponential.1"], sections["exponential.2"])
    law = SeriesPair(sections["group_law.1"], sections["group_law.2"])
    return LubinTateGroup(header["p"], heights, header["D"],
                          header.get("N", DEFAULT_PRECISION), log, exp, law)
