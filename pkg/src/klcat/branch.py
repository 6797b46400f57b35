"""Branching of cell and simple module classes along the tail of a word.

Dropping the first letter s of a reduced word embeds the tail's algebra,
and restriction of modules induces a linear map of graded Grothendieck
groups.  On cell classes it acts by

    Res [cell(x)] = v^-1 [cell'(x)] + [cell'(sx)]   if l(sx) < l(x),
                    v    [cell'(x)] + [cell'(sx)]   if l(sx) > l(x),

and on a simple class [L(x)] its coordinates over the tail's simples are
the KL-basis structure constants of C_s * C_u read at x.  Equating the two
routes through the simple basis and isolating the coefficient of the
tail's top simple class re-derives the one-step KL recursion; that
derivation is executable here as :func:`derive_kl_recursion` and is kept
honest by computing each ingredient on its own pipeline (structure
constants by KL-basis expansion, never by reading mu).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .coxeter import Element, Word, bruhat_interval, evaluate_word, mult_gen, word_name
from .kl import KLTable
from .laurent import LaurentPoly, ZERO
from .leaves import enumerate_leaves, split_top_generator


@dataclass(frozen=True)
class GrothendieckVector:
    """Coordinates over a fixed simple-class basis (zero entries dropped)."""

    basis: tuple[Element, ...]
    coords: tuple[tuple[Element, LaurentPoly], ...]

    @classmethod
    def make(cls, basis, coords: dict[Element, LaurentPoly]) -> "GrothendieckVector":
        basis = tuple(sorted(basis))
        kept = tuple(sorted((y, c) for y, c in coords.items() if c))
        for y, _ in kept:
            if y not in basis:
                raise ValueError(f"coordinate {y.name} outside the basis")
        return cls(basis, kept)

    def coord(self, y: Element) -> LaurentPoly:
        for z, c in self.coords:
            if z.index == y.index:
                return c
        return ZERO


@dataclass
class ResData:
    """The restriction map in simple-class coordinates."""

    word: Word
    tail: Word
    generator: int
    domain: list[Element]  # simple support of the word
    codomain: list[Element]  # simple support of the tail
    columns: dict[int, GrothendieckVector]  # domain element index -> image vector

    def apply(self, vector: dict[Element, LaurentPoly]) -> GrothendieckVector:
        acc: dict[Element, LaurentPoly] = {}
        for x, c in vector.items():
            for u, h in self.columns[x.index].coords:
                acc[u] = acc.get(u, ZERO) + h * c
        return GrothendieckVector.make(self.codomain, acc)


def _checked_word(kl: KLTable, word: Word) -> tuple[Word, Element]:
    word = tuple(word)
    w = evaluate_word(kl.table, word)
    if w.length != len(word):
        raise ValueError(f"word {word_name(word)} is not reduced")
    return word, w


def build_res(kl: KLTable, word: Word) -> ResData:
    """Restriction matrix on simple classes: column of x is u -> h_{s,u}^x."""
    word, _ = _checked_word(kl, word)
    if not word:
        raise ValueError("restriction needs a word of length >= 1")
    s, tail = word[0], word[1:]
    domain = sorted(kl.bott_samelson_expansion(word))
    codomain = sorted(kl.bott_samelson_expansion(tail))
    columns: dict[int, dict[Element, LaurentPoly]] = {x.index: {} for x in domain}
    for u in codomain:
        for x, h in kl.structure_constants(s, u).items():
            if x.index not in columns:
                raise ValueError(
                    f"structure constant support {x.name} escapes the simple support of {word_name(word)}"
                )
            columns[x.index][u] = h
    return ResData(
        word=word,
        tail=tail,
        generator=s,
        domain=domain,
        codomain=codomain,
        columns={i: GrothendieckVector.make(codomain, col) for i, col in columns.items()},
    )


def res_cell_class(kl: KLTable, word: Word, x: Element) -> GrothendieckVector:
    """Image of the cell class of x in the tail's simple basis.

    Expands v^{-+1} [cell'(x)] + [cell'(sx)] through the tail's
    decomposition numbers: coordinate at u is v^{-+1} h_{x,u} + h_{sx,u}.
    """
    word, _ = _checked_word(kl, word)
    if not word:
        raise ValueError("restriction needs a word of length >= 1")
    s, tail = word[0], word[1:]
    sx = mult_gen(kl.table, x, s, "left")
    shift = -1 if sx.length < x.length else 1
    codomain = sorted(kl.bott_samelson_expansion(tail))
    coords = {}
    for u in codomain:
        coords[u] = kl.kl_poly(x, u).shift(shift) + kl.kl_poly(sx, u)
    return GrothendieckVector.make(codomain, coords)


def verify_branching(kl: KLTable, word: Word) -> list[dict]:
    """Character and leaf-partition checks for every x below the word's product.

    (a) the cell character of the word at x equals v^{-+1} times the tail
        character at x plus the tail character at sx;
    (b) the two parts of the final-level leaf partition realize exactly the
        degree multisets of the two summands (shifted on the sub side).
    """
    word, w = _checked_word(kl, word)
    if not word:
        raise ValueError("branching needs a word of length >= 1")
    table = kl.table
    s, tail = word[0], word[1:]
    records = []
    word_chars = _degree_multisets(table, word)
    tail_chars = _degree_multisets(table, tail)
    for x in bruhat_interval(table, w):
        sx = mult_gen(table, x, s, "left")
        down = sx.length < x.length
        shift = -1 if down else 1
        lhs = _poly_of(word_chars.get(x.index, Counter()))
        rhs = _poly_of(tail_chars.get(x.index, Counter())).shift(shift) + _poly_of(
            tail_chars.get(sx.index, Counter())
        )
        records.append(
            {
                "identity": "branching_characters",
                "word": word_name(word),
                "x": x.name,
                "lhs": lhs.render(),
                "rhs": rhs.render(),
                "pass": lhs == rhs,
            }
        )
        part_sub, part_quot = split_top_generator(table, word, x)
        got_sub = Counter(p.degree for p in part_sub)
        got_quot = Counter(p.degree for p in part_quot)
        if down:
            want_sub = tail_chars.get(sx.index, Counter())
            want_quot = _shift_counter(tail_chars.get(x.index, Counter()), -1)
        else:
            want_sub = _shift_counter(tail_chars.get(x.index, Counter()), +1)
            want_quot = tail_chars.get(sx.index, Counter())
        ok = got_sub == want_sub and got_quot == want_quot
        records.append(
            {
                "identity": "leaf_partition",
                "word": word_name(word),
                "x": x.name,
                "lhs": f"sub={sorted(got_sub.items())} quot={sorted(got_quot.items())}",
                "rhs": f"sub={sorted(want_sub.items())} quot={sorted(want_quot.items())}",
                "pass": ok,
            }
        )
    return records


def _degree_multisets(table, word: Word) -> dict[int, Counter]:
    out: dict[int, Counter] = {}
    for p in enumerate_leaves(table, word).paths:
        out.setdefault(p.endpoint.index, Counter())[p.degree] += 1
    return out


def _shift_counter(counter: Counter, k: int) -> Counter:
    return Counter({d + k: n for d, n in counter.items()})


def _poly_of(counter: Counter) -> LaurentPoly:
    return LaurentPoly(dict(counter))


def verify_restriction_counts(kl: KLTable, word: Word) -> list[dict]:
    """Composition multiplicities of a restricted cell module, two ways.

    For every z below the word's product and every u in the tail's simple
    support, the count through structure constants,
    sum over x in the word's simple support of h_{s,u}^x h_{z,x}, must
    match the coordinate of the restricted cell class at u.
    """
    word, w = _checked_word(kl, word)
    if not word:
        raise ValueError("restriction needs a word of length >= 1")
    s = word[0]
    domain = sorted(kl.bott_samelson_expansion(word))
    codomain = sorted(kl.bott_samelson_expansion(word[1:]))
    sc = {u.index: kl.structure_constants(s, u) for u in codomain}
    records = []
    for z in bruhat_interval(kl.table, w):
        image = res_cell_class(kl, word, z)
        for u in codomain:
            lhs = ZERO
            for x in domain:
                h = sc[u.index].get(x, ZERO)
                if h:
                    lhs = lhs + h * kl.kl_poly(z, x)
            rhs = image.coord(u)
            records.append(
                {
                    "identity": "restriction_counts",
                    "word": word_name(word),
                    "x": z.name,
                    "u": u.name,
                    "lhs": lhs.render(),
                    "rhs": rhs.render(),
                    "pass": lhs == rhs,
                }
            )
    return records


def derive_kl_recursion(kl: KLTable, word: Word, x: Element) -> tuple[LaurentPoly, LaurentPoly, bool]:
    """Reproduce h_{x,w} from the branching pipeline alone.

    rhs = (coefficient of the tail-top simple class in Res[cell(x)])
          - sum over z in the word's simple support, z != w, of
            h_{s,tail-top}^z * h_{x,z},

    with the structure constants taken from the KL-basis expansion (never
    from mu) and the first term read off :func:`res_cell_class`.  lhs is
    the stored h_{x,w}; the two must agree.
    """
    word, w = _checked_word(kl, word)
    if not word:
        raise ValueError("the derivation needs a word of length >= 1")
    s = word[0]
    wp = mult_gen(kl.table, w, s, "left")  # product of the tail
    support = sorted(kl.bott_samelson_expansion(word))
    sc = kl.structure_constants(s, wp)
    lhs = kl.kl_poly(x, w)
    rhs = res_cell_class(kl, word, x).coord(wp)
    for z in support:
        if z.index == w.index:
            continue
        h = sc.get(z, ZERO)
        if h:
            rhs = rhs - h * kl.kl_poly(x, z)
    return lhs, rhs, lhs == rhs
