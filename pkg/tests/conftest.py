from fractions import Fraction

from hypothesis import strategies as st

from cqplane.algebra import Generator, NcPoly
from cqplane.coeff import CoeffPoly, Exponent
from cqplane.colours import LAMBDA, MU, NU

COLOURS = (LAMBDA, MU, NU)

small_frac = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))


@st.composite
def exponents(draw, colours=COLOURS):
    e = Exponent(draw(small_frac))
    for c in colours:
        e = e + Exponent.of_colour(c).scale(draw(st.integers(-2, 2)))
    return e


@st.composite
def coeffs(draw, max_terms=3, poles=False):
    out = CoeffPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        term = CoeffPoly.qpow(draw(exponents()), draw(st.integers(-3, 3)))
        if draw(st.booleans()):
            term = term * CoeffPoly.h(draw(st.integers(1, 2)))
        if poles and draw(st.booleans()):
            term = term * CoeffPoly.pole(1)
        out = out + term
    return out


@st.composite
def words(draw, kinds=("x", "y"), colours=(LAMBDA, MU), max_len=3):
    n = draw(st.integers(0, max_len))
    return tuple(Generator(draw(st.sampled_from(kinds)), draw(st.sampled_from(colours))) for _ in range(n))


@st.composite
def ncpolys(draw, kinds=("x", "y"), colours=(LAMBDA, MU), max_len=3, max_terms=3):
    out = NcPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        w = draw(words(kinds, colours, max_len))
        c = CoeffPoly.qpow(draw(exponents((LAMBDA, MU))), draw(st.integers(-2, 2)))
        out = out + NcPoly.word(w, c)
    return out


# acceptance criteria report -------------------------------------------------

CRITERIA = {}


def record(number: int, title: str, ok: bool, note: str = ""):
    CRITERIA[number] = (title, ok, note)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        title, ok, note = CRITERIA[n]
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {title}"
        if note and not ok:
            line += f"  [{note}]"
        terminalreporter.write_line(line)
