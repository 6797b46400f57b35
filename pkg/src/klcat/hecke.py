"""The Hecke algebra of a Coxeter system in its standard basis.

Elements are finite maps from group elements to Laurent polynomials in v
(standard-basis coordinates), pruned after every operation so equality is
structural.  The generator relations are

    H_s^2 = (v^-1 - v) H_s + 1,      H_s H_t H_s ... = H_t H_s H_t ...  (m_st factors)

and the degree-shifted generators C_s = H_s + v act on the standard basis by

    C_s H_x = H_sx + v H_x     if l(sx) > l(x),
    C_s H_x = H_sx + v^-1 H_x  if l(sx) < l(x).

Only left multiplication by generators is needed by the algorithms here; a
generic product is provided for tests and structure constants.
"""

from __future__ import annotations

import weakref

from .coxeter import Element, GroupTable, Word, mult_gen
from .laurent import LaurentPoly, ONE, V, V_INV, ZERO

_STD_INV_MINUS_ONE = LaurentPoly({1: 1, -1: -1})  # v - v^-1, from inverting H_s


class HeckeElt:
    """A Hecke algebra element in standard-basis coordinates."""

    __slots__ = ("table", "_coeffs")

    def __init__(self, table: GroupTable, coeffs: dict[Element, LaurentPoly] | None = None):
        self.table = table
        self._coeffs: dict[Element, LaurentPoly] = (
            {w: c for w, c in coeffs.items() if c} if coeffs else {}
        )

    def coeff(self, w: Element) -> LaurentPoly:
        return self._coeffs.get(w, ZERO)

    def items(self) -> list[tuple[Element, LaurentPoly]]:
        """Coordinates sorted by (length, ShortLex) of the basis element."""
        return sorted(self._coeffs.items())

    def support(self) -> list[Element]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        acc = dict(self._coeffs)
        for w, c in other._coeffs.items():
            acc[w] = acc.get(w, ZERO) + c
        return HeckeElt(self.table, acc)

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        acc = dict(self._coeffs)
        for w, c in other._coeffs.items():
            acc[w] = acc.get(w, ZERO) - c
        return HeckeElt(self.table, acc)

    def scale(self, factor: LaurentPoly | int) -> "HeckeElt":
        return HeckeElt(self.table, {w: c * factor for w, c in self._coeffs.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HeckeElt):
            return NotImplemented
        return self.table is other.table and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((id(self.table), frozenset(self._coeffs.items())))

    def __repr__(self) -> str:
        terms = " + ".join(f"({c})H[{w.name}]" for w, c in self.items()) or "0"
        return f"HeckeElt({terms})"

    def to_json_obj(self) -> dict:
        return {"coeffs": [[list(w.word), c.to_json_obj()] for w, c in self.items()]}

    @classmethod
    def from_json_obj(cls, table: GroupTable, obj: dict) -> "HeckeElt":
        coeffs = {}
        for word, poly in obj["coeffs"]:
            w = table.element_from_word(tuple(word))
            coeffs[w] = LaurentPoly.from_json_obj(poly)
        return cls(table, coeffs)


def unit(table: GroupTable) -> HeckeElt:
    return HeckeElt(table, {table.identity: ONE})


def std_basis(table: GroupTable, w: Element) -> HeckeElt:
    """The standard basis element H_w."""
    return HeckeElt(table, {w: ONE})


def left_mul_std(s: int, h: HeckeElt) -> HeckeElt:
    """Left multiplication by the generator H_s, extended linearly.

    H_s H_x = H_sx when l(sx) > l(x), and H_sx + (v^-1 - v) H_x otherwise.
    """
    table = h.table
    acc: dict[Element, LaurentPoly] = {}
    quad = LaurentPoly({-1: 1, 1: -1})  # v^-1 - v
    for x, c in h._coeffs.items():
        sx = mult_gen(table, x, s, "left")
        acc[sx] = acc.get(sx, ZERO) + c
        if sx.length < x.length:
            acc[x] = acc.get(x, ZERO) + c * quad
    return HeckeElt(table, acc)


def left_mul_kl(s: int, h: HeckeElt) -> HeckeElt:
    """Left multiplication by the shifted generator C_s = H_s + v."""
    table = h.table
    acc: dict[Element, LaurentPoly] = {}
    for x, c in h._coeffs.items():
        sx = mult_gen(table, x, s, "left")
        acc[sx] = acc.get(sx, ZERO) + c
        stay = V if sx.length > x.length else V_INV
        acc[x] = acc.get(x, ZERO) + c * stay
    return HeckeElt(table, acc)


def product(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """The bilinear product, expanding left factors along reduced words."""
    if a.table is not b.table:
        raise ValueError("factors live over different group tables")
    total = HeckeElt(a.table)
    for w, c in a.items():
        acc = b
        for s in reversed(w.word):
            acc = left_mul_std(s, acc)
        total = total + acc.scale(c)
    return total


def _left_mul_std_inverse(s: int, h: HeckeElt) -> HeckeElt:
    # H_s^-1 = H_s + (v - v^-1), from the quadratic relation
    return left_mul_std(s, h) + h.scale(_STD_INV_MINUS_ONE)


_inverse_memo: "weakref.WeakKeyDictionary[GroupTable, dict[int, HeckeElt]]" = (
    weakref.WeakKeyDictionary()
)


def _inverse_of_inverse_word(table: GroupTable, w: Element) -> HeckeElt:
    """Standard-basis expansion of the inverse of H_{w^-1}."""
    memo = _inverse_memo.setdefault(table, {})
    cached = memo.get(w.index)
    if cached is not None:
        return cached
    acc = unit(table)
    for s in reversed(w.word):
        acc = _left_mul_std_inverse(s, acc)
    memo[w.index] = acc
    return acc


def bar_involution(h: HeckeElt) -> HeckeElt:
    """The ring involution with v -> v^-1 and H_w -> (H_{w^-1})^-1."""
    total = HeckeElt(h.table)
    for w, c in h.items():
        total = total + _inverse_of_inverse_word(h.table, w).scale(c.bar())
    return total


def bott_samelson_class(table: GroupTable, word: Word) -> HeckeElt:
    """The product C_{s_1} ... C_{s_k} for an arbitrary expression.

    This is the class of the word's chain of shifted generators in the
    standard basis; its coefficients are the graded cell characters.
    """
    acc = unit(table)
    for s in reversed(word):
        acc = left_mul_kl(s, acc)
    return acc
