"""Closed-form formula data, kept as text in the package's polynomial grammar.

Zero-stable invariant numerators are polynomials in ``s0, c1..c5``; each is
divided by ``prefactor * sigma_n`` on evaluation.  The image Milnor number
expressions are polynomials in ``s0, c1..c5, sig1..sig5`` to be divided by
``sig_n``; they are written out block by block exactly as displayed in the
literature, so that they can be compared against the coefficient table
(which is derived from the n = 5 display only).
"""

CLASS_VARS = ("s0", "c1", "c2", "c3", "c4", "c5")
SIGMA_VARS = ("sig1", "sig2", "sig3", "sig4", "sig5")

# label -> (dimension, prefactor, numerator)
ZERO_STABLE = {
    "A0^2": (1, 2, "s0-c1"),
    "A0^3": (2, 6, "s0^2-3*s0*c1+2*c1^2+2*c2"),
    "A1": (2, 1, "c2"),
    "A0^4": (3, 24, "s0^3-6*s0^2*c1+11*s0*c1^2+8*s0*c2-6*c1^3-18*c1*c2-12*c3"),
    "A0A1": (3, 1, "s0*c2-2*c1*c2-2*c3"),
    "A0^5": (
        4,
        120,
        "s0^4-10*s0^3*c1+35*s0^2*c1^2+20*s0^2*c2-50*s0*c1^3-110*s0*c1*c2"
        "-60*s0*c3+24*c1^4+144*c1^2*c2+216*c1*c3+48*c2^2+144*c4",
    ),
    "A0^2A1": (4, 2, "s0^2*c2-5*s0*c1*c2-4*s0*c3+6*c1^2*c2+14*c1*c3+4*c2^2+12*c4"),
    "A2": (4, 1, "c1*c3+c2^2+2*c4"),
    "A0^6": (
        5,
        720,
        "s0^5-15*s0^4*c1+5*s0^3*(17*c1^2+8*c2)-15*s0^2*(15*c1^3+26*c1*c2+12*c3)"
        "+2*s0*(137*c1^4+607*c1^2*c2+164*c2^2+738*c1*c3+432*c4)"
        "-120*(c1^5+10*c1^3*c2+10*c1*c2^2+25*c1^2*c3+12*c2*c3+38*c1*c4+24*c5)",
    ),
    "A0^3A1": (
        5,
        6,
        "s0^3*c2-3*s0^2*(3*c1*c2+2*c3)+2*s0*(13*c1^2*c2+7*c2^2+24*c1*c3+18*c4)"
        "-24*(c1^3*c2+4*c1^2*c3+3*c2*c3+2*c1*(c2^2+4*c4)+6*c5)",
    ),
    "A0A2": (5, 1, "s0*(c2^2+c1*c3+2*c4)-3*(c1^2*c3+2*c2*c3+c1*(c2^2+4*c4)+4*c5)"),
    # two identical cross-cap branches: the 2! symmetry factor applies
    "A1^2": (5, 2, "s0*c2^2-2*c1^2*c3-4*c1*c2^2-8*c2*c3-10*c1*c4-12*c5"),
}

_B1 = "(-s0+c1)/2"
_B2 = "(s0^2-c1^2-c2)/6"
_B3 = "(-s0^3-2*s0^2*c1+s0*c1^2+16*s0*c2+2*c1^3-10*c1*c2)/24"
_B4 = (
    "(s0^4+5*s0^3*c1+5*s0^2*c1^2-50*s0^2*c2-5*s0*c1^3-20*s0*c1*c2"
    "+60*s0*c3-6*c1^4+34*c1^2*c2-64*c1*c3+108*c2^2+4*c4)/120"
)
_B5 = (
    "(-s0^5-9*s0^4*c1-25*s0^3*c1^2+110*s0^3*c2-15*s0^2*c1^3+270*s0^2*c1*c2"
    "-240*s0^2*c3+26*s0*c1^4+16*s0*c1^2*c2+24*s0*c1*c3-1138*s0*c2^2+336*s0*c4"
    "+24*c1^5-156*c1^3*c2+276*c1^2*c3+108*c1*c2^2-396*c1*c4+600*c2*c3)/720"
)

# n -> numerator N with mu_I = N / sig_n
MU_DISPLAYED = {
    2: f"{_B1}*sig1+{_B2}",
    3: f"-({_B1}*sig2+{_B2}*sig1+{_B3})",
    4: f"{_B1}*sig3+{_B2}*sig2+{_B3}*sig1+{_B4}",
    5: f"-({_B1}*sig4+{_B2}*sig3+{_B3}*sig2+{_B4}*sig1+{_B5})",
}
