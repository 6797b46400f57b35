"""Kazhdan-Lusztig basis, KL polynomials, mu-coefficients, and change of basis.

Two independent computation paths are provided and cross-checked by the
verification suites:

  * :func:`compute_kl` runs the defining algorithm: the KL basis element of
    ``su`` is ``C_s * C_u`` minus, for every z in the support of that
    product, the constant term of the H_z-coefficient times the KL basis
    element of z.  The result is the unique bar-invariant element whose
    lower coefficients lie in vZ[v].

  * :func:`recursion_kl_poly` evaluates the normalized one-step recursion

        h_{x,w} = v^{+-1} h_{x,sw} + h_{sx,sw} - sum mu(z,sw) h_{x,z}

    (exponent +1 when l(sx) > l(x), -1 otherwise; the sum over z with
    sz < z < sw) using only table entries strictly below w.

Classical polynomials in q are related by h_{x,w}(v) = v^(l(w)-l(x)) P_{x,w}(v^-2),
and mu(z,w) is the linear coefficient of h_{z,w}.
"""

from __future__ import annotations

import hashlib
import json

from .coxeter import (
    Element,
    GroupTable,
    IncompleteTableError,
    Word,
    bruhat_interval,
    bruhat_leq,
    descents,
    mult_gen,
)
from .hecke import HeckeElt, bott_samelson_class, left_mul_kl, unit
from .laurent import LaurentPoly, ONE, ZERO

TOOL_VERSION = "0.1.0"


class KLTable:
    """KL basis elements, stored as full standard-basis expansions.

    ``kl_element(w)`` is the bar-invariant basis element of w; its
    H_x-coefficient is the KL polynomial h_{x,w}.  Structure constants and
    product expansions are memoized on the table (pure recomputation, so
    races are benign).
    """

    def __init__(self, table: GroupTable, complete_up_to: int):
        self.table = table
        self.complete_up_to = complete_up_to
        self._kl: dict[int, HeckeElt] = {}
        self._sc_memo: dict[tuple[int, int], dict[Element, LaurentPoly]] = {}
        self._bs_memo: dict[Word, dict[Element, LaurentPoly]] = {}

    def stored_elements(self) -> list[Element]:
        return [w for w in self.table.elements if w.length <= self.complete_up_to]

    def kl_element(self, w: Element) -> HeckeElt:
        try:
            return self._kl[w.index]
        except KeyError:
            raise ValueError(f"KL data for {w.name} not stored (bound {self.complete_up_to})")

    def kl_poly(self, x: Element, w: Element) -> LaurentPoly:
        """h_{x,w}: 1 when x = w, 0 when x is not below w."""
        if x.index == w.index:
            return ONE
        return self.kl_element(w).coeff(x)

    def mu(self, z: Element, w: Element) -> int:
        """The linear coefficient of h_{z,w}."""
        return self.kl_poly(z, w).coefficient(1)

    def expand_in_kl_basis(self, h: HeckeElt) -> dict[Element, LaurentPoly]:
        """Coefficients a_y with h = sum a_y C_y, by back-substitution from the top."""
        remaining = h
        out: dict[Element, LaurentPoly] = {}
        while remaining:
            y = max(remaining.support())
            a = remaining.coeff(y)
            out[y] = a
            remaining = remaining - self.kl_element(y).scale(a)
        return dict(sorted(out.items()))

    def structure_constants(self, s: int, u: Element) -> dict[Element, LaurentPoly]:
        """Coefficients of C_s * C_u in the KL basis, memoized."""
        key = (s, u.index)
        cached = self._sc_memo.get(key)
        if cached is None:
            cached = self.expand_in_kl_basis(left_mul_kl(s, self.kl_element(u)))
            self._sc_memo[key] = cached
        return cached

    def bott_samelson_expansion(self, word: Word) -> dict[Element, LaurentPoly]:
        """KL-basis coefficients of the chain product of ``word``, memoized.

        The support of this expansion is the simple-support of the word
        (the y whose graded simple module is nonzero).
        """
        word = tuple(word)
        cached = self._bs_memo.get(word)
        if cached is None:
            cached = self.expand_in_kl_basis(bott_samelson_class(self.table, word))
            self._bs_memo[word] = cached
        return cached


def compute_kl(table: GroupTable, up_to_length: int, descent_choice: str = "min") -> KLTable:
    """Fill a KL table for all elements of length <= ``up_to_length``.

    Iterates in increasing length; for each w picks a left descent s
    (smallest generator index by default; the result is independent of the
    choice, which ``descent_choice='max'`` lets tests confirm), forms
    C_s * (KL element of sw), and subtracts the constant term of each lower
    coefficient times the corresponding lower KL element.
    """
    if up_to_length < 0:
        raise ValueError("up_to_length must be nonnegative")
    if table.partial and up_to_length > table.complete_length:
        raise IncompleteTableError(
            f"table is only complete through length {table.complete_length}"
        )
    if descent_choice not in ("min", "max"):
        raise ValueError("descent_choice must be 'min' or 'max'")
    bound = min(up_to_length, table.complete_length)
    kl = KLTable(table, bound)
    kl._kl[table.identity.index] = unit(table)
    for w in table.elements:
        if w.length == 0 or w.length > bound:
            continue
        ds = descents(table, w, "left")
        s = ds[0] if descent_choice == "min" else ds[-1]
        u = mult_gen(table, w, s, "left")
        prod = left_mul_kl(s, kl._kl[u.index])
        for z, g in prod.items():
            if z.index == w.index:
                continue
            g0 = g.coefficient(0)
            if g0:
                prod = prod - kl._kl[z.index].scale(g0)
        kl._kl[w.index] = prod
    return kl


def to_classical(h: LaurentPoly, lx: int, lw: int) -> LaurentPoly:
    """Rewrite h_{x,w}(v) as the classical polynomial P_{x,w}(q).

    Every exponent of h must have the parity of ``lw - lx`` and not exceed
    it; a violation signals a corrupted table upstream.
    """
    gap = lw - lx
    out: dict[int, int] = {}
    for e, c in h.items():
        if (gap - e) % 2 != 0:
            raise ValueError(f"exponent {e} breaks the parity of l(w)-l(x) = {gap}")
        j = (gap - e) // 2
        if j < 0:
            raise ValueError(f"exponent {e} exceeds l(w)-l(x) = {gap}")
        out[j] = c
    return LaurentPoly(out)


def recursion_kl_poly(kl: KLTable, x: Element, w: Element, s: int) -> LaurentPoly:
    """h_{x,w} by the one-step recursion, never touching the stored element of w.

    Requires s to be a left descent of w; every ingredient is read from
    strictly shorter table entries.
    """
    table = kl.table
    if s not in descents(table, w, "left"):
        raise ValueError(f"s{s + 1} is not a left descent of {w.name}")
    sw = mult_gen(table, w, s, "left")
    try:
        sx = mult_gen(table, x, s, "left")
        shift = 1 if sx.length > x.length else -1
        sx_term = kl.kl_poly(sx, sw)
    except IncompleteTableError:
        # sx beyond a truncated table is longer than x, hence not below sw
        shift, sx_term = 1, ZERO
    total = kl.kl_poly(x, sw).shift(shift) + sx_term
    for z in bruhat_interval(table, sw):
        if z.index == sw.index or s not in descents(table, z, "left"):
            continue
        m = kl.mu(z, sw)
        if m:
            total = total - kl.kl_poly(x, z) * m
    return total


def _classical(kl: KLTable, x: Element, w: Element) -> LaurentPoly:
    return to_classical(kl.kl_poly(x, w), x.length, w.length)


def classical_recursion(kl: KLTable, x: Element, w: Element, s: int) -> LaurentPoly:
    """P_{x,w} by the classical q-form recursion.

    P is 1 when x = w and 0 when x is not below w; otherwise, with c = 0
    when l(sx) > l(x) and c = 1 when l(sx) < l(x),

        P_{x,w} = q^(1-c) P_{sx,sw} + q^c P_{x,sw}
                  - sum_{sz < z < sw} mu(z,sw) q^((l(w)-l(z))/2) P_{x,z},

    where mu(z,sw) reads the coefficient of q^((l(sw)-l(z)-1)/2) on the
    classical side (never the v-side linear coefficient).  These exponents
    are forced by substituting q = v^-2 into the v-form recursion; getting
    either sign backwards breaks the identity with :func:`to_classical`.
    """
    table = kl.table
    if s not in descents(table, w, "left"):
        raise ValueError(f"s{s + 1} is not a left descent of {w.name}")
    if x.index == w.index:
        return ONE
    if not bruhat_leq(table, x, w):
        return ZERO
    sw = mult_gen(table, w, s, "left")
    sx = mult_gen(table, x, s, "left")  # x < w keeps sx within any stored bound
    c = 0 if sx.length > x.length else 1
    total = _classical(kl, sx, sw).shift(1 - c) + _classical(kl, x, sw).shift(c)
    for z in bruhat_interval(table, sw):
        if z.index == sw.index or s not in descents(table, z, "left"):
            continue
        exp = sw.length - z.length - 1
        if exp % 2 != 0:
            continue
        m = _classical(kl, z, sw).coefficient(exp // 2)
        if m:
            term = _classical(kl, x, z).shift((w.length - z.length) // 2) * m
            total = total - term
    return total


# -- export and cache ------------------------------------------------------


def canonical_json(obj) -> str:
    """Compact deterministic JSON (callers fix key order), newline-terminated."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True) + "\n"


def matrix_content_hash(matrix, up_to_length: int) -> str:
    payload = {"m": [list(r) for r in matrix.orders], "rank": matrix.rank, "up_to": up_to_length}
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def kl_to_json_obj(kl: KLTable) -> dict:
    body = []
    for w in kl.stored_elements():
        coeffs = [[list(x.word), c.to_json_obj()] for x, c in kl.kl_element(w).items()]
        body.append([list(w.word), coeffs])
    return {
        "header": {
            "matrix_hash": matrix_content_hash(kl.table.matrix, kl.complete_up_to),
            "rank": kl.table.rank,
            "up_to_length": kl.complete_up_to,
            "tool_version": TOOL_VERSION,
        },
        "body": {"complete_up_to": kl.complete_up_to, "kl": body},
    }


def kl_from_json_obj(table: GroupTable, obj: dict) -> KLTable:
    body = obj["body"]
    kl = KLTable(table, int(body["complete_up_to"]))
    for word, coeffs in body["kl"]:
        w = table.element_from_word(tuple(word))
        elt = HeckeElt(
            table,
            {
                table.element_from_word(tuple(xw)): LaurentPoly.from_json_obj(poly)
                for xw, poly in coeffs
            },
        )
        kl._kl[w.index] = elt
    return kl


class CacheMismatchError(Exception):
    """A cache file exists but its header does not match the request."""


def validate_cache_header(header: dict, matrix, up_to_length: int) -> None:
    expected = {
        "matrix_hash": matrix_content_hash(matrix, up_to_length),
        "rank": matrix.rank,
        "up_to_length": up_to_length,
        "tool_version": TOOL_VERSION,
    }
    for key, want in expected.items():
        got = header.get(key)
        if got != want:
            raise CacheMismatchError(f"cache {key} is {got!r}, expected {want!r}")


def kl_to_csv(kl: KLTable) -> str:
    """Rows (x, w, h_{x,w}, P_{x,w}, mu) for all x <= w, length-then-ShortLex order."""
    lines = ["x,w,h,P,mu"]
    for w in kl.stored_elements():
        for x in bruhat_interval(kl.table, w):
            h = kl.kl_poly(x, w)
            p = to_classical(h, x.length, w.length)
            lines.append(
                f"{x.name},{w.name},{h.render('v')},{p.render('q')},{kl.mu(x, w)}"
            )
    return "\n".join(lines) + "\n"


__all__ = [
    "KLTable",
    "compute_kl",
    "to_classical",
    "recursion_kl_poly",
    "classical_recursion",
    "canonical_json",
    "matrix_content_hash",
    "kl_to_json_obj",
    "kl_from_json_obj",
    "kl_to_csv",
    "validate_cache_header",
    "CacheMismatchError",
    "TOOL_VERSION",
]
