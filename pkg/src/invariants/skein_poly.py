import logging
from fractions import Fraction
from typing import Dict, Iterable, Tuple

from braids.resolving_tree import TreeNode, iter_nodes
from errors import InvariantViolation
from helpers import logged_method

LOGGER = logging.getLogger(__name__)


class HalfLaurent:
    """Laurent polynomial in t^(1/2) with integer coefficients.

    coeffs maps e to the coefficient of t^(e/2). Zero coefficients are never stored.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Dict[int, int] = None) -> None:
        self.coeffs: Dict[int, int] = {int(e): int(c) for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def zero(cls) -> "HalfLaurent":
        return cls()

    @classmethod
    def one(cls) -> "HalfLaurent":
        return cls({0: 1})

    @classmethod
    def monomial(cls, coefficient: int, half_exponent: int) -> "HalfLaurent":
        return cls({half_exponent: coefficient})

    @classmethod
    def from_integer_powers(cls, coeffs: Dict[int, int]) -> "HalfLaurent":
        return cls({2 * e: c for e, c in coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def terms(self) -> Iterable[Tuple[int, int]]:
        return sorted(self.coeffs.items(), reverse=True)

    def __add__(self, other: "HalfLaurent") -> "HalfLaurent":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return HalfLaurent(out)

    def __neg__(self) -> "HalfLaurent":
        return HalfLaurent({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: "HalfLaurent") -> "HalfLaurent":
        return self + (-other)

    def __mul__(self, other) -> "HalfLaurent":
        if isinstance(other, int):
            return HalfLaurent({e: c * other for e, c in self.coeffs.items()})
        out: Dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return HalfLaurent(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = HalfLaurent({0: other})
        return isinstance(other, HalfLaurent) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def shift(self, half_steps: int) -> "HalfLaurent":
        return HalfLaurent({e + half_steps: c for e, c in self.coeffs.items()})

    def breadth(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        return Fraction(max(self.coeffs) - min(self.coeffs), 2)

    def __repr__(self) -> str:
        return f"HalfLaurent({to_text(self)})"

    def __str__(self) -> str:
        return to_text(self)


def add(a: HalfLaurent, b: HalfLaurent) -> HalfLaurent:
    return a + b


def sub(a: HalfLaurent, b: HalfLaurent) -> HalfLaurent:
    return a - b


def mul(a: HalfLaurent, b: HalfLaurent) -> HalfLaurent:
    return a * b


def breadth(pz: HalfLaurent) -> Fraction:
    return pz.breadth()


def conway_z() -> HalfLaurent:
    # t^(-1/2) - t^(1/2)
    return HalfLaurent({-1: 1, 1: -1})


def normalize_unit(pz: HalfLaurent) -> HalfLaurent:
    if pz.is_zero():
        return pz
    lowest = min(pz.coeffs)
    shifted = pz.shift(-lowest)
    return -shifted if shifted.coeffs[0] < 0 else shifted


def equal_up_to_unit(a: HalfLaurent, b: HalfLaurent) -> bool:
    return normalize_unit(a) == normalize_unit(b)


def _exponent_text(e: int) -> str:
    if e % 2 == 0:
        return f"t^{e // 2}"
    return f"t^({e}/2)"


def to_text(pz: HalfLaurent, normalize: bool = True) -> str:
    """Descending terms, e.g. `t^2 - t^1 + 1`. Normalized to the canonical unit by default."""
    if normalize:
        pz = normalize_unit(pz)
    if pz.is_zero():
        return "0"
    parts = []
    for e, c in pz.terms():
        magnitude = abs(c)
        if e == 0:
            body = str(magnitude)
        elif magnitude == 1:
            body = _exponent_text(e)
        else:
            body = f"{magnitude}*{_exponent_text(e)}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def _leaf_value(node: TreeNode) -> HalfLaurent:
    if node.components is None or node.components < 1:
        raise InvariantViolation(f"Leaf {node.word} carries no component count")
    return HalfLaurent.one() if node.components == 1 else HalfLaurent.zero()


@logged_method
def subtree_polynomials(t: TreeNode) -> Dict[int, HalfLaurent]:
    """Skein values for every node of the tree keyed by id(node)."""
    values: Dict[int, HalfLaurent] = {}
    z = conway_z()

    def evaluate(node: TreeNode) -> HalfLaurent:
        if node.is_leaf:
            value = _leaf_value(node)
        elif node.change is None or node.resolve is None:
            raise InvariantViolation(f"Internal node {node.word} is missing a child")
        else:
            value = evaluate(node.change) + z * evaluate(node.resolve)
        values[id(node)] = value
        return value

    evaluate(t)
    return values


@logged_method
def alexander_from_tree(t: TreeNode) -> HalfLaurent:
    value = subtree_polynomials(t)[id(t)]
    LOGGER.debug(f"Skein evaluation of {t.word}: {to_text(value)}")
    return value


def breadth_inequality_violations(t: TreeNode) -> int:
    """Internal nodes with Br(node) > max(Br(change), Br(resolve)) + 1.

    Only the max holds in general: the change child of the trefoil is the unknot.
    """
    values = subtree_polynomials(t)
    bad = 0
    for node, _ in iter_nodes(t):
        if node.is_leaf:
            continue
        parent = values[id(node)].breadth()
        bound = max(values[id(node.change)].breadth(), values[id(node.resolve)].breadth()) + 1
        if parent > bound:
            LOGGER.warning(f"Breadth {parent} of {node.word} exceeds its children's bound {bound}")
            bad += 1
    return bad
