"""Named example inputs shared by the command line and the tests.

Three kinds of fixture live here: the running two-variable copolygon
example 2*x1*x2 + x1^4 + x2^5 over Z_2, the cross-Frobenius dynamical
systems at small parameters, and a stored degree-32 sample of a
multiplication-by-2 endomorphism for heights (4, 5).  The stored sample
is kept with its known defect: its mod-2 reduction is the diagonal
Frobenius pair (x1^32, x2^16) rather than the crossed pair required of a
multiplication-by-p map, which makes it a useful negative control for
the congruence checks.
"""

from __future__ import annotations

from importlib import resources

from .padics import DEFAULT_PRECISION
from .series import Series, SeriesPair, parse_sections
from .torsion import dynamical_system


def worked_copolygon_series(degree: int = 9,
                            prec: int = DEFAULT_PRECISION) -> Series:
    """2*x1*x2 + x1^4 + x2^5 over Z_2, whose copolygon has one vertex."""
    terms = {(1, 1): 2, (4, 0): 1, (0, 5): 1}
    kept = {e: c for e, c in terms.items() if sum(e) <= degree}
    return Series.from_coeffs(2, 2, degree, kept, prec=prec)


def stored_mult45():
    """The stored height-(4, 5) multiplication-by-2 sample over Z_2.

    Returns (header, pair) where the header carries p, h1, h2, D and N.
    """
    text = resources.files("lubintate2d").joinpath("data/mult45.txt").read_text()
    header, sections = parse_sections(text)
    return header, SeriesPair(sections["first"], sections["second"])


def frobenius_profile(pair: SeriesPair, p: int) -> dict:
    """What a multiplication-by-p candidate actually looks like mod p.

    Reports whether the linear part is exactly (p*x1, p*x2), the single
    mod-p monomial of each component (None when the reduction is not a
    single monic monomial), the sorted total degrees of those monomials,
    and whether the orientation is the crossed one (first component a
    power of x2, second a power of x1).
    """
    linear_ok = True
    monomials = []
    for idx, comp in enumerate((pair.first, pair.second)):
        want = {tuple(1 if k == idx else 0 for k in range(2)): p}
        got = {e: c for e, c in comp.degree_slice(1).items()}
        if set(got) != set(want) or any(got[e] != want[e] for e in want):
            linear_ok = False
        units = comp.units_mod_p()
        if len(units) == 1:
            e, u = next(iter(units.items()))
            monomials.append(e if u == 1 and sum(e) > 1 else None)
        else:
            monomials.append(None)
    cross = (monomials[0] is not None and monomials[1] is not None
             and monomials[0][0] == 0 and monomials[1][1] == 0)
    exponents = sorted(sum(e) for e in monomials if e is not None)
    return {
        "linear_ok": linear_ok,
        "first": monomials[0],
        "second": monomials[1],
        "cross": cross,
        "exponents": exponents,
    }


FIXTURE_NAMES = ("ex1", "dyn23", "dyn312", "mult45")


def load_fixture(name: str, degree: int = None,
                 prec: int = DEFAULT_PRECISION):
    """Fixture registry for the command line.

    ex1    -> the worked copolygon series (default degree 9)
    dyn23  -> dynamical system at p = 2, heights (2, 3) (default degree 9)
    dyn312 -> dynamical system at p = 3, heights (1, 2) (default degree 9)
    mult45 -> the stored height-(4, 5) sample (fixed degree 32)
    """
    if name == "ex1":
        return worked_copolygon_series(degree or 9, prec)
    if name == "dyn23":
        return dynamical_system(2, (2, 3), degree or 9, prec)
    if name == "dyn312":
        return dynamical_system(3, (1, 2), degree or 9, prec)
    if name == "mult45":
        if degree is not None and degree != 32:
            raise ValueError("the stored sample has fixed degree 32")
        return stored_mult45()[1]
    raise ValueError(f"unknown fixture {name!r}; choose from {FIXTURE_NAMES}")
