"""Worked instances shared by the test modules."""

from diophant.quadform import QuadForm4

EX_BILINEAR_FORM = "270*x1^2 + 76*x1*x2 + 152*x1*x3 - 16*x2^2 - 48*x2*x3 - 35*x3^2 + 3*x4^2"
EX_DIAGONAL_FORM = "x1^2 - 9*x2^2 - x3^2 + 4*x4^2"

# reference parametrizations of the two forms above
EX_BILINEAR_SOLUTION = (
    "4*p*m - 2*q*n",
    "(117*p + 4*q)*m + (2*p - 65*q)*n",
    "-(72*p + 2*q)*m - (p - 40*q)*n",
    "2*q*m - p*n",
)
EX_DIAGONAL_SOLUTION = ("2*p*m + 18*q*n", "2*p*n + 2*q*m", "-2*p*m + 18*q*n", "-3*p*n + 3*q*m")
EX_THREE_PARAM_SOLUTION = (
    "16*p*q + 26*p*r",
    "540*p^2 + 152*p*q + 304*p*r - 16*q^2 - 70*q*r - 70*r^2",
    "-270*p^2 - 76*p*q - 152*p*r + 16*q^2 + 64*q*r + 61*r^2",
    "-270*p^2 - 76*p*q - 152*p*r + 16*q^2 + 48*q*r + 35*r^2",
)
# x = P y and a bilinear solution of the diagonalized form
EX_TRANSFORM = ("y1 - y2 + y3", "31*y1 - 29*y2 + 26*y3", "-19*y1 + 18*y2 - 16*y3", "y4")
EX_Y_SOLUTION = ("(2*p + 2*q)*m + (p - 2*q)*n", "(-p + 2*q)*m + (p + q)*n", "p*m + q*n", "-p*n + 2*q*m")

PAIRS = {
    "linear-factors": (
        "x1^2 + 5*x2^2 - 4*x2*x4 - 3*x3^2 + 2*x4^2",
        "x1^2 + 3*x2^2 - 2*x2*x4 - 2*x3^2 + x4^2",
    ),
    "quartic-families": (
        "x1^2 + 544*x1*x2 - 320*x1*x3 - 27*x2^2 + 320*x2*x4 - x3^2 + 320*x4^2",
        "x1^2 + 1088*x1*x2 - 640*x1*x3 - 55*x2^2 + 640*x2*x4 - x3^2 + 640*x4^2",
    ),
    "four-points": (
        "x1^2 + 4*x2^2 + 8*x2*x3 + 8*x2*x4 + 5*x3^2 + 16*x3*x4 + 8*x4^2",
        "2*x1^2 + 5*x2^2 + 8*x2*x3 + 8*x2*x4 + 4*x3^2 + 16*x3*x4 + 8*x4^2",
    ),
    "elliptic": (
        "x1^2 + 6*x2^2 + 2*x2*x3 + 16*x2*x4 - 4*x3^2 + 8*x3*x4 + 16*x4^2",
        "2*x1^2 + 7*x2^2 + 2*x2*x3 + 16*x2*x4 - 5*x3^2 + 8*x3*x4 + 16*x4^2",
    ),
    "square-pencil": (
        EX_DIAGONAL_FORM,
        "3*x1^2 - 30*x1*x2 - 4*x1*x3 - 9*x2^2 - 12*x2*x3 - 7*x3^2 + 12*x3*x4 + 4*x4^2",
    ),
    "rank-three-curve": (
        "6*x1^2 - 4*x1*x2 + 4*x2*x3 - 36*x2*x4 - 5*x3^2 - 27*x4^2",
        "11*x1^2 - 8*x1*x2 + 4*x2^2 + 8*x2*x3 - 72*x2*x4 - 9*x3^2 - 63*x4^2",
    ),
    "congruence-empty": (
        "x1^2 - 2*x1*x2 - 9*x2^2 + 3*x3^2 - 4*x3*x4 + 11*x4^2",
        "6*x1^2 - x1*x2 + x2^2 - 15*x3^2 - 2*x3*x4 - 11*x4^2",
    ),
    "square-pencil-empty": (
        "x1^2 + 2*x2^2 - x3^2 - x4^2",
        "7*x1^2 + 4*x1*x2 + 14*x2^2 - 6*x3^2 + 2*x3*x4 - 8*x4^2",
    ),
    "single-point": (
        "x1*x2 - x3*x4",
        "(x1 - x2)^2 + (x1 - x3)^2 + (x1 - x4)^2",
    ),
    "not-sufficient": (
        "x1*x2 - x3*x4",
        "(x1 - x2)^2 + (x1 - x3)^2 + (7*x1 - x4)^2",
    ),
}

# reference families for the "square-pencil" pair
SQUARE_PENCIL_LINEAR = ("2*m", "2*n", "-2*m", "-3*n")
SQUARE_PENCIL_CUBIC = (
    "6*m^2*n - 108*m*n^2 + 270*n^3",
    "2*m^3 - 8*m^2*n + 18*m*n^2 - 36*n^3",
    "30*m^2*n - 36*m*n^2 + 270*n^3",
    "3*m^3 - 12*m^2*n + 63*m*n^2 + 54*n^3",
)
# reference families for the "linear-factors" pair
LINEAR_FACTORS_FAMILIES = (
    ("m^2 - n^2", "2*m*n", "m^2 + n^2", "m^2 + 2*m*n - n^2"),
    ("m^2 - n^2", "2*m*n", "m^2 + n^2", "-(m^2 - 2*m*n - n^2)"),
)
QUARTIC_FAMILIES = (
    ("-119*m^4 - 480*m^3*n - 350*m^2*n^2 + 25*n^4", "120*m^4 + 200*m^3*n + 120*m^2*n^2 + 200*m*n^3",
     "169*m^4 + 480*m^3*n + 450*m^2*n^2 + 25*n^4", "-155*m^4 - 186*m^3*n + 300*m^2*n^2 + 70*m*n^3 - 25*n^4"),
    ("-119*m^4 - 480*m^3*n - 350*m^2*n^2 + 25*n^4", "120*m^4 + 200*m^3*n + 120*m^2*n^2 + 200*m*n^3",
     "169*m^4 + 480*m^3*n + 450*m^2*n^2 + 25*n^4", "35*m^4 - 14*m^3*n - 420*m^2*n^2 - 270*m*n^3 + 25*n^4"),
)
ELLIPTIC_MAP = ("4*xi^2 - 4", "8*xi", "4*xi^2 + 4", "-xi^2 - 4*xi + 2*eta - 1")
RANK_THREE_MAP = (
    "12*xi^3 + 12*xi^2 + 18*xi + 6*eta*xi - 24",
    "-6*xi^3 + 18*xi^2 + 3*xi - 3*eta*xi - 12",
    "24*xi^3 + 24*xi^2 - 36*xi + 6*eta + 6",
    "-8*xi^3 + 4*xi + 2*eta + 2",
)
RANK_THREE_POINTS = ((1, 2, 5, 2), (-1, 2, 3, 2), (-14, 95, 4897, 1805))  # (xi num, den, eta num, den)

QUARTEX1 = (1, -7, -3, 48, -35)
QUARTEX2 = (2, 3, 7, -207, 379)


def form(text: str) -> QuadForm4:
    return QuadForm4.parse(text)


def pair(name: str):
    a, b = PAIRS[name]
    return form(a), form(b)
