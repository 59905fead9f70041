import functools
import logging
from dataclasses import dataclass
from typing import Tuple

import sympy as sym

from braids.braid_core import BraidWord
from errors import InvariantViolation
from helpers import logged_method, timed_method
from invariants.skein_poly import HalfLaurent, equal_up_to_unit, to_text

LOGGER = logging.getLogger(__name__)

T = sym.Symbol("t")

# Hand computed: det(I - rho) (1 - t) / (1 - t^2) for the cube and square of (-t).
CALIBRATION_FIXTURES = (
    (BraidWord((1, 1, 1), n=2), HalfLaurent({2: 1, 0: -1, -2: 1})),
    (BraidWord((1, 1), n=2), HalfLaurent({1: 1, -1: -1})),
)


def laurent_to_sympy(pz: HalfLaurent):
    if any(e % 2 for e in pz.coeffs):
        raise InvariantViolation(f"{to_text(pz, normalize=False)} has half-integer powers of t")
    return sum((c * T ** (e // 2) for e, c in pz.coeffs.items()), sym.Integer(0))


def sympy_to_laurent(expr) -> HalfLaurent:
    coeffs = {}
    for term in sym.Add.make_args(sym.expand(expr)):
        coefficient, exponent = term.as_coeff_exponent(T)
        if coefficient == 0:
            continue
        if not coefficient.is_integer or not exponent.is_integer:
            raise InvariantViolation(f"Term {term} is not an integral Laurent monomial in t")
        coeffs[2 * int(exponent)] = coeffs.get(2 * int(exponent), 0) + int(coefficient)
    return HalfLaurent(coeffs)


@dataclass(frozen=True)
class LaurentMatrix:
    rows: Tuple[Tuple[HalfLaurent, ...], ...]

    def __post_init__(self) -> None:
        if any(len(row) != len(self.rows) for row in self.rows):
            raise InvariantViolation("LaurentMatrix must be square")

    @property
    def dimension(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, dimension: int) -> "LaurentMatrix":
        return cls(
            tuple(
                tuple(HalfLaurent.one() if r == c else HalfLaurent.zero() for c in range(dimension))
                for r in range(dimension)
            )
        )

    def __matmul__(self, other: "LaurentMatrix") -> "LaurentMatrix":
        size = self.dimension
        out = []
        for r in range(size):
            row = []
            for c in range(size):
                acc = HalfLaurent.zero()
                for k in range(size):
                    if self.rows[r][k].is_zero() or other.rows[k][c].is_zero():
                        continue
                    acc = acc + self.rows[r][k] * other.rows[k][c]
                row.append(acc)
            out.append(tuple(row))
        return LaurentMatrix(tuple(out))

    def to_sympy(self) -> sym.Matrix:
        return sym.Matrix([[laurent_to_sympy(x) for x in row] for row in self.rows])


def generator_matrix(n: int, k: int) -> LaurentMatrix:
    """Reduced Burau image of sigma_|k| (its inverse when k < 0) in B_n, size n-1.

    Only row |k| differs from the identity: (t, -t, 1) around the diagonal,
    (1, -1/t, 1/t) for the inverse, truncated at the matrix border.
    """
    size = n - 1
    rows = [list(row) for row in LaurentMatrix.identity(size).rows]
    r = abs(k) - 1
    if k > 0:
        left, diagonal, right = HalfLaurent({2: 1}), HalfLaurent({2: -1}), HalfLaurent.one()
    else:
        left, diagonal, right = HalfLaurent.one(), HalfLaurent({-2: -1}), HalfLaurent({-2: 1})
    if r > 0:
        rows[r][r - 1] = left
    rows[r][r] = diagonal
    if r < size - 1:
        rows[r][r + 1] = right
    return LaurentMatrix(tuple(tuple(row) for row in rows))


@logged_method
def burau_matrix(w: BraidWord) -> LaurentMatrix:
    if w.n < 2:
        raise InvariantViolation(f"The reduced Burau representation needs n >= 2, received {w}")
    product = LaurentMatrix.identity(w.n - 1)
    for k in w.letters:
        product = product @ generator_matrix(w.n, k)
    return product


def _burau_alexander(w: BraidWord) -> HalfLaurent:
    rho = burau_matrix(w).to_sympy()
    det = sym.together((sym.eye(w.n - 1) - rho).det(method="berkowitz"))
    numerator, denominator = sym.fraction(det)
    numerator = sym.expand(numerator)
    if numerator == 0:
        return HalfLaurent.zero()
    den_terms = sym.Poly(denominator, T).terms()
    if len(den_terms) != 1:
        raise InvariantViolation(f"Burau determinant of {w} has non-monomial denominator {denominator}")
    (shift,), scale = den_terms[0]
    quotient, remainder = sym.div(sym.expand(numerator * (1 - T)), 1 - T**w.n, T)
    if remainder != 0:
        raise InvariantViolation(f"(1 - t^{w.n}) does not divide the Burau determinant of {w}")
    if any(c % scale != 0 for c in sym.Poly(quotient, T).coeffs()):
        raise InvariantViolation(f"Burau determinant of {w} has non-unit denominator {denominator}")
    result = sympy_to_laurent(quotient / scale).shift(-2 * shift)
    LOGGER.debug(f"Burau Alexander polynomial of {w}: {to_text(result)}")
    return result


@functools.cache
def calibrate() -> bool:
    for word, expected in CALIBRATION_FIXTURES:
        computed = _burau_alexander(word)
        if not equal_up_to_unit(computed, expected):
            raise InvariantViolation(
                f"Burau convention check failed on {word}: got {to_text(computed)}, expected {to_text(expected)}"
            )
    LOGGER.debug("Burau convention calibrated against the trefoil and Hopf link")
    return True


@timed_method
@logged_method
def alexander_burau(w: BraidWord) -> HalfLaurent:
    calibrate()
    return _burau_alexander(w)


@logged_method
def alexander_of_closure(w: BraidWord) -> HalfLaurent:
    if w.n == 1:
        return HalfLaurent.one()
    return alexander_burau(w)
