"""Reference polynomial identities for both cases of the cubic analysis.

Texts use the grammar of :mod:`cmcalg.parse` over :func:`standard_varset`.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class QDisplay:
    label: str
    sequence: tuple[int, ...]
    text: str
    note: str = ""


_RELABEL_NOTE = ("printed under label {label}; the polynomial is exactly the value of "
                 "the index sequence {seq}, the label has indices 1 and 2 exchanged")

Q_DISPLAYS: tuple[QDisplay, ...] = (
    QDisplay("q1", (1,), "4*(3*a1 + a6 - 3*b5)"),
    QDisplay("q2", (2,), "4*(3*a2 + a4 - b6)"),
    QDisplay("q11", (1, 1), "-8*(6*a5 + a7 - 3*(-2 + 2*b3 - a1*b5 + b5^2 + a2*b6))"),
    QDisplay("q12", (1, 2), "-12*(a10 - 2*(a2*b5 + (a1 - b5)*b6))"),
    QDisplay("q22", (2, 2), "-8*(a7 + 3*(-a1*b5 + b5^2 + a2*b6))"),
    QDisplay("q111", (1, 1, 1), (
        "24*(10*a8 + 4*a1^2*b5 + b5*(13 + 6*a2^2 - 7*b3 + 4*b5^2 + a2*b6 - 3*b6^2) + a1*(-23 + 7*b3 - 8*b5^2 + 2*a2*b6 + 3*b6^2))")),
    QDisplay("q112", (1, 1, 2), (
        "-24*(-2*a9 + 4*a2^2*b6 + (2 - 2*a1^2 + a1*b5 + b5^2)*b6 + a2*(-11 + 5*b3 - 6*a1*b5 + 7*b5^2 + 4*b6^2))")),
    QDisplay("q122", (1, 2, 2), (
        "24*(12*a1^2*b5 - a1*(-3 + 3*b3 + 24*b5^2 + 10*a2*b6 + 3*b6^2) + b5*(2*a2^2 + 7*a2*b6 + 3*(-1 + b3 + 4*b5^2 + b6^2)))")),
    QDisplay("q222", (2, 2, 2), (
        "24*(20*a2^2*b6 + 3*(2*a1^2 - 5*a1*b5 + 3*b5^2)*b6 + a2*(1 + b3 - 14*a1*b5 + 15*b5^2 + 4*b6^2))")),
    QDisplay("q1111", (1, 1, 1, 1), (
        "-48/5*(96*a1^3*b5 + 120*a2^3*b6 + 3*a1^2*(-19 + 26*b3 - 86*b5^2 - 4*a2*b6 - 6*b6^2) + 3*a1*b5*(73 - 12*a2^2 - 47*b3 + 76*b5^2 - 38*a2*b6 + 12*b6^2) + a2*b6*(-295 + 85*b3 + 156*b5^2 + 30*b6^2) + a2^2*(75 + 60*b3 + 56*b5^2 + 110*b6^2) + 3*(50 + 50*a3 - 54*b5^2 - 22*b5^4 + b3*(-50 + 21*b5^2) - 6*b5^2*b6^2))")),
    QDisplay("q1112", (1, 1, 1, 2), (
        "-24/5*(10*a1^3*b6 - 3*a1^2*b5*(26*a2 + 55*b6) + b5*(-162*a2^3 + 223*a2^2*b6 + a2*(-421 + 169*b3 + 67*b5^2 - 139*b6^2) - 5*b6*(-27 + 15*b3 + 35*b5^2 + 6*b6^2)) + a1*(-74*a2^2*b6 + 15*b6*(-9 + 5*b3 + 22*b5^2 + 2*b6^2) + a2*(496 - 214*b3 + b5^2 + 129*b6^2)))")),
    QDisplay("q1122", (1, 1, 2, 2), (
        "24/5*(48*a1^3*b5 - 160*a2^3*b6 - 2*a2^2*(-85 + 70*b3 + 181*b5^2 - 70*b6^2) + 2*a1^2*(-183 + 72*b3 + 108*b5^2 + 52*a2*b6 - 12*b6^2) + 3*b5^2*(-117 + 63*b3 + 104*b5^2 + 17*b6^2) + 3*a2*b6*(-30 + 30*b3 + 221*b5^2 + 20*b6^2) - a1*b5*(-717 - 312*a2^2 + 333*b3 + 576*b5^2 + 782*a2*b6 + 27*b6^2))")),
    QDisplay("q1222", (1, 2, 2, 2), (
        "24/5*(90*a1^3*b6 + 3*a1^2*b5*(86*a2 + 45*b6) + b5*(-18*a2^3 + 467*a2^2*b6 + 15*b6*(-9 + 9*b3 + 21*b5^2 + 8*b6^2) + a2*(-339 + 231*b3 + 513*b5^2 + 259*b6^2)) - a1*(186*a2^2*b6 + 15*b6*(-9 + 9*b3 + 36*b5^2 + 8*b6^2) + a2*(-384 + 246*b3 + 771*b5^2 + 379*b6^2)))")),
    QDisplay("q2222", (2, 2, 2, 2), (
        "48*(8*a2^3*b6 + 3*a1*b5*(18 - 4*a2^2 - 12*b3 + 12*b5^2 - 25*b6^2) + 9*b5^2*(-3 + 2*b3 - 2*b5^2 + 5*b6^2) + a2*b6*(9 + 5*b3 + 7*b5^2 + 18*b6^2) + a1^2*(-27 + 18*b3 - 18*b5^2 - 4*a2*b6 + 30*b6^2) + a2^2*(-31 + 28*b3 + 22*b5^2 + 66*b6^2))")),
    QDisplay("q11111", (2, 2, 2, 2, 2), (
        "24*(-6*a1^3*b5*(82*a2 - 195*b6) - 180*a1^4*b6 + 600*a2^4*b6 + 2*a2^3*(-1095 + 375*b3 + 529*b5^2 - 420*b6^2) + 45*b5^2*b6*(-14 + 8*b3 - 34*b5^2 + 13*b6^2) + 2*a2^2*b6*(-345 + 150*b3 - 891*b5^2 + 50*b6^2) + 2*a1^2*(42*a2^2*b6 + a2*(-903 + 267*b3 + 303*b5^2 - 182*b6^2) + 15*b6*(-21 + 12*b3 - 111*b5^2 + 13*b6^2)) + a2*(-438*b5^4 + 3*b5^2*(-542 + 58*b3 - 583*b6^2) + 5*b6^2*(37 + 13*b3 + 44*b6^2)) + a1*b5*(-828*a2^3 + 1858*a2^2*b6 - 15*b6*(-84 + 48*b3 - 258*b5^2 + 65*b6^2) + a2*(3432 - 708*b3 + 324*b5^2 + 2138*b6^2)))"),
        _RELABEL_NOTE.format(label="q11111", seq="22222")),
    QDisplay("q11112", (1, 2, 2, 2, 2), (
        "-72/5*(72*a1^4*b5 + 2*a1^3*(-477 + 63*b3 - 744*b5^2 - 82*a2*b6 - 183*b6^2) + 2*a1^2*b5*(1056 - 250*a2^2 + 51*b3 + 2016*b5^2 + 621*a2*b6 + 404*b6^2) + b5*(-12*a2^4 + 1272*b5^4 - 78*a2^3*b6 - 25*b6^2*(-11 + 11*b3 + 9*b6^2) + b5^2*(204 + 354*b3 + 76*b6^2) - a2*b6*(-902 + 498*b3 + 476*b5^2 + 167*b6^2) - 2*a2^2*(-732 + 253*b3 + 150*b5^2 + 745*b6^2)) + a1*(-3888*b5^4 + 396*a2^3*b6 + 25*b6^2*(-11 + 11*b3 + 9*b6^2) + 2*a2^2*(-797 + 243*b3 + 410*b5^2 + 111*b6^2) - 2*b5^2*(681 + 291*b3 + 259*b6^2) + 2*a2*b6*(274*b3 - 7*(78 + 43*b5^2 - 28*b6^2))))"),
        _RELABEL_NOTE.format(label="q11112", seq="12222")),
    QDisplay("q11122", (1, 1, 2, 2, 2), (
        "-24/5*(120*a2^4*b6 - a2^2*b6*(2140 + 1020*a1^2 - 1960*b3 + 2720*a1*b5 - 4211*b5^2 + 940*b6^2) + 2*a2^3*(-435 + 75*b3 + 90*a1*b5 - 134*b5^2 + 1420*b6^2) + 3*(a1 - b5)*b6*(180*a1^3 - 672*a1^2*b5 - 3*a1*(-418 + 122*b3 + 67*b5^2 - 42*b6^2) + b5*(-1179 + 531*b3 + 693*b5^2 + 124*b6^2)) + a2*(1860*a1^3*b5 - 2*a1^2*(-525 + 465*b3 + 2916*b5^2 + 844*b6^2) + a1*b5*(-3006 + 2364*b3 + 6429*b5^2 + 8525*b6^2) + 3*(30 + 60*a3 - 10*b3^2 + 637*b5^2 - 819*b5^4 + 350*b6^2 - 2249*b5^2*b6^2 - 220*b6^4 - b3*(20 + 473*b5^2 + 350*b6^2))))"),
        _RELABEL_NOTE.format(label="q11122", seq="11222")),
)

# relations solved at stages 1-3, in the order they are derived
SOLVED_DISPLAYS: dict[str, str] = {
    "a6": "-3*a1 + 3*b5",
    "a4": "-3*a2 + b6",
    "a5": "-1 + b3 - a1*b5 + b5^2 + a2*b6",
    "a10": "2*(a2*b5 + (a1 - b5)*b6)",
    "a7": "3*a1*b5 - 3*(b5^2 + a2*b6)",
    "a8": "1/10*(-4*a1^2*b5 + a1*(23 - 7*b3 + 8*b5^2 - 2*a2*b6 - 3*b6^2) - b5*(13 + 6*a2^2 - 7*b3 + 4*b5^2 + a2*b6 - 3*b6^2))",
    "a9": "1/2*(4*a2^2*b6 + (2 - 2*a1^2 + a1*b5 + b5^2)*b6 + a2*(-11 + 5*b3 - 6*a1*b5 + 7*b5^2 + 4*b6^2))",
}

# stage at which each q is checked, and which parameter it is solved for
CASE1_STAGES: tuple[tuple[tuple[str, ...], tuple[tuple[str, str], ...]], ...] = (
    (("q1", "q2"), (("q1", "a6"), ("q2", "a4"))),
    (("q11", "q12", "q22"), (("q22", "a7"), ("q12", "a10"), ("q11", "a5"))),
    (("q111", "q112", "q122", "q222"), (("q111", "a8"), ("q112", "a9"))),
)

NORMALIZATION = (("b1", "1"), ("b2", "0"), ("b4", "0"))

# sequences whose values form the final ideal, in the order they are listed
IDEAL_SEQUENCES: tuple[tuple[int, ...], ...] = (
    (1, 2, 2), (2, 2, 2),
    (1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 2, 2), (1, 2, 2, 2), (2, 2, 2, 2),
    (1, 1, 1, 1, 1), (1, 1, 1, 1, 2), (1, 1, 1, 2, 2),
)
IDEAL_VARIABLES = ("a1", "a2", "b5", "b6", "b3", "a3")
IDEAL_BASIS = ("-1 - a3 + b3", "a2", "a1 - b5")
FINAL_RELATIONS = (("a2", "0"), ("b5", "a1"), ("b3", "1 + a3"))
CASE1_FACTORS = ("1 + a1*x1 + b6*x2 + a3*x3", "x1^2 + x3 + x3^2")

CASE2_VANISHING = (("b1", "0"), ("b4", "0"), ("b5", "0"))
CASE2_X1_AXIS_COEFF = "-16*(a4^2 + a5^2)^3"
# numerators of the x3^12 / x2^12 coefficients; the printed values divide these by a8^6 / a6^6
CASE2_P2_NUMERATOR = "-16*((a10*a3 - a8*a9)^2 + a8^2*(a3^2 + a8^2))^3"
CASE2_P3_NUMERATOR = "-16*((a10*a2 - a6*a7)^2 + a6^2*(a2^2 + a6^2))^3"
CASE2_P2_SUBSTITUTION = ("-(b3 + a3*x3)", "a8")
CASE2_P3_SUBSTITUTION = ("-(b2 + a2*x2)", "a6")
CASE2_P4_NUMERATOR = "-b2*x2^2 - a2*x2^3 - b6*x2*x3 - a7*x2^2*x3 - b3*x3^2 - a9*x2*x3^2 - a3*x3^3"
CASE2_P4_DENOMINATOR = "x2*x3"
CASE2_X3_18 = "-16*b3^6"
CASE2_X3_24 = "-16*a3^6"
CASE2_FACTORS = ("x2", "b2*x2 + a2*x2^2 + b6*x3 + x1*x3 + a7*x2*x3 + a9*x3^2")
