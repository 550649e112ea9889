"""Independent oracle arithmetic for the test suite.

Everything here is computed on exact rationals (``fractions.Fraction``)
with explicit truncation control, sharing no code with the package
under test: pi by the Machin formula, square roots by Newton's
iteration, sin/cos/exp by Taylor series, log by the atanh series.
Working precision is 256 bits unless stated otherwise, far beyond any
tolerance asserted against these values.

``FROZEN`` collects reference constants computed with these routines
(and cross-checked against mpmath at 300 bits); tests assert against
the frozen decimals, and a dedicated test re-derives them at runtime.
"""

from __future__ import annotations

from fractions import Fraction

BITS = 256


def _trunc(x: Fraction, bits: int) -> Fraction:
    """Limit denominator growth; error at most 2**-bits."""
    scale = 1 << bits
    return Fraction(round(x * scale), scale)


def machin_pi(bits: int = BITS) -> Fraction:
    """pi = 16*atan(1/5) - 4*atan(1/239) with rational Taylor terms."""
    def atan_inv(n: int) -> Fraction:
        x = Fraction(1, n)
        total = Fraction(0)
        term = x
        k = 0
        tol = Fraction(1, 1 << (bits + 16))
        while abs(term) > tol:
            total += term
            k += 1
            term = Fraction((-1) ** k, 2 * k + 1) * x ** (2 * k + 1)
        return total
    return 16 * atan_inv(5) - 4 * atan_inv(239)


def newton_sqrt(x: Fraction, bits: int = BITS) -> Fraction:
    """Square root by Newton's iteration on rationals."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative operand")
    if x == 0:
        return Fraction(0)
    r = Fraction(max(1, x.numerator // max(1, x.denominator)))
    for _ in range(bits):
        r_next = _trunc((r + x / r) / 2, bits + 8)
        if abs(r_next - r) < Fraction(1, 1 << (bits + 2)):
            return r_next
        r = r_next
    return r


def taylor_sin(x: Fraction, bits: int = BITS) -> Fraction:
    total = Fraction(0)
    term = Fraction(x)
    k = 0
    tol = Fraction(1, 1 << (bits + 16))
    while abs(term) > tol:
        total += term
        k += 1
        term = _trunc(term * (-1) * x * x / ((2 * k) * (2 * k + 1)), bits + 32)
    return total


def taylor_cos(x: Fraction, bits: int = BITS) -> Fraction:
    total = Fraction(0)
    term = Fraction(1)
    k = 0
    tol = Fraction(1, 1 << (bits + 16))
    while abs(term) > tol:
        total += term
        k += 1
        term = _trunc(term * (-1) * x * x / ((2 * k - 1) * (2 * k)), bits + 32)
    return total


def taylor_tan(x: Fraction, bits: int = BITS) -> Fraction:
    return taylor_sin(x, bits) / taylor_cos(x, bits)


def taylor_exp(x: Fraction, bits: int = BITS) -> Fraction:
    total = Fraction(0)
    term = Fraction(1)
    k = 0
    tol = Fraction(1, 1 << (bits + 16))
    while abs(term) > tol:
        total += term
        k += 1
        term = _trunc(term * x / k, bits + 32)
    return total


def log_frac(z: Fraction, bits: int = BITS) -> Fraction:
    """log z = 2*atanh((z-1)/(z+1)), valid for z > 0."""
    z = Fraction(z)
    if z <= 0:
        raise ValueError("log needs a positive operand")
    t = (z - 1) / (z + 1)
    total = Fraction(0)
    power = t
    k = 0
    tol = Fraction(1, 1 << (bits + 16))
    while abs(power) / (2 * k + 1) > tol:
        total += power / (2 * k + 1)
        k += 1
        power = _trunc(power * t * t, bits + 32)
    return 2 * total


def parabola_arclength() -> Fraction:
    """Arc length of x^2 on [0, 1]: (2*sqrt(5) + log(2 + sqrt(5))) / 4."""
    s5 = newton_sqrt(Fraction(5))
    return (2 * s5 + log_frac(2 + s5)) / 4


def exp_arclength() -> Fraction:
    """Arc length of exp on [0, 1] via the antiderivative
    sqrt(1+u^2) - log((1 + sqrt(1+u^2)) / u) evaluated at u = e^x."""
    def anti(u: Fraction) -> Fraction:
        s = newton_sqrt(1 + u * u)
        return s - log_frac((1 + s) / u)
    return anti(taylor_exp(Fraction(1))) - anti(Fraction(1))


def log_curve_arclength() -> Fraction:
    """Arc length of log on [1, 3] via the antiderivative
    sqrt(1+x^2) - log((1 + sqrt(1+x^2)) / x)."""
    def anti(x: Fraction) -> Fraction:
        s = newton_sqrt(1 + x * x)
        return s - log_frac((1 + s) / x)
    return anti(Fraction(3)) - anti(Fraction(1))


def quarter_circle_truncated_arclength(edge: Fraction = Fraction(1, 10 ** 9)) -> Fraction:
    """asin(1 - edge) = pi/2 - 2*asin(sqrt(edge/2)), with the asin of the
    small argument summed directly from its Taylor series."""
    y = newton_sqrt(edge / 2)
    total = Fraction(0)
    term = y
    k = 0
    tol = Fraction(1, 1 << (BITS + 16))
    while abs(term) > tol:
        total += term
        # next odd-power coefficient ratio: (2k+1)^2 / ((2k+2)(2k+3))
        term = _trunc(term * y * y * (2 * k + 1) ** 2
                      / ((2 * k + 2) * (2 * k + 3)), BITS + 32)
        k += 1
    return machin_pi() / 2 - 2 * total


# Reference decimals computed with the routines above and cross-checked
# against mpmath at 300-bit precision (all agree to < 2**-190).  The two
# non-elementary arc lengths (sin, x^3) come from 300-bit quadrature.
FROZEN = {
    "pi": Fraction("3.14159265358979323846264338327950288419716939937510"),
    "sqrt2": Fraction("1.41421356237309504880168872420969807856967187537694"),
    "sqrt5": Fraction("2.23606797749978969640917366873127623544061835961152"),
    # polygon starts and early stages
    "l0_k4": Fraction("0.70710678118654752440084436210484903928483593768847"),
    "l0_k3": Fraction("0.86602540378443864676372317075293618347140262690519"),
    "u0_k6": Fraction("0.57735026918962576450914878050195745564760175127012"),
    "stage1_lower_k6": Fraction("3.10582854123024914818678605148857994018882681583916"),
    "stage4_lower_k6": Fraction("3.14103195089050963811135292645966010703641221616283"),
    "stage4_upper_k6": Fraction("3.14271459964536829816885909377212387100096909151116"),
    # arc lengths and chords
    "parabola_arc": Fraction("1.47894285754459743382790601943391443507169743059500"),
    "exp_arc": Fraction("2.00349711162735247856990275242023913082114279523209"),
    "exp_chord": Fraction("1.98808763438953056542127218333481843117333134505214"),
    "log_arc": Fraction("2.30198753457756886510727888521455463647751906321913"),
    "outer_parabola_arc": Fraction("1.70010832364123036168933470575604437281784394554779"),
    "quarter_circle_truncated": Fraction("1.57075160543534289665743016999139098930213356039819"),
    "x2_secant_three_point": Fraction("1.46040481324094474738209873405044304542297873336419"),
    "x2_tangent_two_point": Fraction("1.61803398874989484820458683436563811772030917980576"),
    "sin_arc": Fraction("3.8201977890277120179047620821714432919099676146473"),
    "cubic_arc_01": Fraction("1.5478656546836101447753316460642606180066333179471"),
}
