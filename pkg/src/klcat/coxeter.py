"""Coxeter systems from an arbitrary Coxeter matrix.

Group elements are interned in a :class:`GroupTable` under their
ShortLex-minimal reduced word.  Word normalization uses Tits' solution to
the word problem: saturating braid moves on a word either exposes an
adjacent repeated letter (the word is not reduced; delete the pair and
recurse) or enumerates every reduced word of the element, whose
lexicographic minimum is the canonical form.  This is exact and
representation-free, and entirely adequate at desk scale (tables of at
most a few thousand elements).

Construction is a breadth-first search from the identity over right
multiplication by generators.  If the group does not close within the
requested element cap, the table is truncated by length: it contains all
elements of length <= ``complete_length`` and nothing longer, and any
product falling outside raises :class:`IncompleteTableError`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

INFINITE = 0  # JSON encoding of an infinite braid order m_st


class IncompleteTableError(Exception):
    """A product left the complete part of a length-truncated table."""


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric matrix of braid orders; diagonal 1, off-diagonal >= 2 or 0 (= infinity)."""

    rank: int
    orders: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("rank must be positive")
        if len(self.orders) != self.rank:
            raise ValueError("matrix must have `rank` rows")
        for i, row in enumerate(self.orders):
            if len(row) != self.rank:
                raise ValueError("matrix must be square")
            for j, m in enumerate(row):
                if i == j:
                    if m != 1:
                        raise ValueError("diagonal entries must be 1")
                elif m != INFINITE and m < 2:
                    raise ValueError("off-diagonal entries must be >= 2 or 0 (infinity)")
                if m != self.orders[j][i]:
                    raise ValueError("matrix must be symmetric")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "CoxeterMatrix":
        orders = tuple(tuple(int(m) for m in row) for row in rows)
        return cls(len(orders), orders)

    def braid_order(self, s: int, t: int) -> int:
        """m_st, with 0 standing for infinity."""
        return self.orders[s][t]

    def to_json_obj(self) -> dict:
        return {"rank": self.rank, "m": [list(row) for row in self.orders]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "CoxeterMatrix":
        if not isinstance(obj, dict) or "rank" not in obj or "m" not in obj:
            raise ValueError('matrix JSON must be {"rank": n, "m": [[...]]}')
        matrix = cls.from_rows(obj["m"])
        if matrix.rank != int(obj["rank"]):
            raise ValueError("declared rank does not match matrix size")
        return matrix


def preset_matrix(name: str) -> CoxeterMatrix:
    """A named standard matrix: ``An`` (chain of 3s), ``Bn`` (one 4), ``I2(m)``.

    >>> preset_matrix("A2").orders
    ((1, 3), (3, 1))
    >>> preset_matrix("I2(7)").orders
    ((1, 7), (7, 1))
    """
    name = name.strip()
    if name.startswith("I2(") and name.endswith(")"):
        m = int(name[3:-1])
        if m < 2:
            raise ValueError("I2(m) needs m >= 2")
        return CoxeterMatrix.from_rows([[1, m], [m, 1]])
    if len(name) >= 2 and name[0] in "AB" and name[1:].isdigit():
        n = int(name[1:])
        if n < 1 or (name[0] == "B" and n < 2):
            raise ValueError(f"unsupported preset {name!r}")
        rows = [[1 if i == j else (3 if abs(i - j) == 1 else 2) for j in range(n)] for i in range(n)]
        if name[0] == "B":
            rows[n - 2][n - 1] = rows[n - 1][n - 2] = 4
        return CoxeterMatrix.from_rows(rows)
    raise ValueError(f"unknown preset {name!r}")


Word = tuple[int, ...]


def word_name(word: Word) -> str:
    """Human name of a word: ``e`` or 1-based ``s2.s1.s3``."""
    return ".".join(f"s{i + 1}" for i in word) if word else "e"


def parse_word(text: str, rank: int) -> Word:
    """Parse ``s2,s1,s3`` (1-based generator names) into letter indices."""
    text = text.strip()
    if not text or text == "e":
        return ()
    letters = []
    for token in text.split(","):
        token = token.strip()
        if not (token.startswith("s") and token[1:].isdigit()):
            raise ValueError(f"bad generator token {token!r}; expected s1,s2,...")
        i = int(token[1:]) - 1
        if not 0 <= i < rank:
            raise ValueError(f"generator {token!r} out of range for rank {rank}")
        letters.append(i)
    return tuple(letters)


@dataclass(frozen=True, order=True)
class Element:
    """An interned group element: table index, length, canonical reduced word.

    Indices are assigned in (length, ShortLex) order, so dataclass ordering
    agrees with the canonical sort everywhere.
    """

    index: int
    length: int
    word: Word

    @property
    def name(self) -> str:
        return word_name(self.word)

    def __repr__(self) -> str:
        return f"<{self.name}>"


# -- Tits rewriting ------------------------------------------------------


def _adjacent_duplicate(word: Word) -> int:
    """Index of the first adjacent equal pair, or -1."""
    for i in range(len(word) - 1):
        if word[i] == word[i + 1]:
            return i
    return -1


def _braid_neighbors(matrix: CoxeterMatrix, word: Word):
    """Words reachable from ``word`` by one braid move."""
    n = len(word)
    orders = matrix.orders
    for i in range(n - 1):
        a, b = word[i], word[i + 1]
        if a == b:
            continue
        m = orders[a][b]
        if m == INFINITE or i + m > n:
            continue
        if all(word[i + j] == (a if j % 2 == 0 else b) for j in range(m)):
            flipped = tuple(b if j % 2 == 0 else a for j in range(m))
            yield word[:i] + flipped + word[i + m:]


def braid_closure(matrix: CoxeterMatrix, word: Word) -> frozenset[Word]:
    """All words reachable from ``word`` by braid moves (including itself)."""
    seen = {word}
    queue = deque([word])
    while queue:
        for nb in _braid_neighbors(matrix, queue.popleft()):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return frozenset(seen)


def normal_form(
    matrix: CoxeterMatrix,
    word: Word,
    memo: Optional[dict[Word, tuple[bool, Word]]] = None,
) -> tuple[bool, Word]:
    """``(is_reduced, canonical_word)`` of the element that ``word`` spells.

    The canonical word is the ShortLex-minimal reduced word.  A word is
    reduced exactly when no braid-equivalent word carries an adjacent
    repeated letter; otherwise such a pair is deleted and normalization
    recurses on the shorter word.
    """
    if memo is None:
        memo = {}
    cached = memo.get(word)
    if cached is not None:
        return cached
    seen = {word}
    queue = deque([word])
    dup_word, dup_at = None, -1
    while queue:
        w = queue.popleft()
        at = _adjacent_duplicate(w)
        if at >= 0:
            dup_word, dup_at = w, at
            break
        for nb in _braid_neighbors(matrix, w):
            if nb not in seen:
                seen.add(nb)
                queue.append(nb)
    if dup_word is not None:
        _, canonical = normal_form(matrix, dup_word[:dup_at] + dup_word[dup_at + 2:], memo)
        result = (False, canonical)
    else:
        result = (True, min(seen))
    for w in seen:
        memo[w] = result
    return result


# -- group tables ---------------------------------------------------------


class GroupTable:
    """Interned elements of one Coxeter system with generator multiplication tables.

    Immutable after construction; downstream modules hang memo caches off
    the private dicts created here (benign to recompute, so thread-safe).
    """

    def __init__(
        self,
        matrix: CoxeterMatrix,
        words: list[Word],
        right: list[list[Optional[int]]],
        left: list[list[Optional[int]]],
        partial: bool,
        cap: int,
    ):
        self.matrix = matrix
        self.elements = [Element(i, len(w), w) for i, w in enumerate(words)]
        self._index = {w: i for i, w in enumerate(words)}
        self._right = right
        self._left = left
        self.partial = partial
        self.cap = cap
        self.complete_length = self.elements[-1].length
        self._bruhat_memo: dict[tuple[int, int], bool] = {}
        self._redwords_memo: dict[int, frozenset[Word]] = {}

    @property
    def identity(self) -> Element:
        return self.elements[0]

    @property
    def rank(self) -> int:
        return self.matrix.rank

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_from_word(self, word: Word) -> Element:
        """The element whose canonical word is ``word`` (must be canonical)."""
        return self.elements[self._index[tuple(word)]]

    def counts_by_length(self) -> list[int]:
        counts = [0] * (self.complete_length + 1)
        for el in self.elements:
            counts[el.length] += 1
        return counts


def build_group(matrix: CoxeterMatrix, cap: int) -> GroupTable:
    """BFS-close the group over right multiplication, interning canonical words.

    If closure is not reached within ``cap`` elements the table keeps only
    the complete length strata and is marked partial.

    >>> t = build_group(preset_matrix("A2"), 100)
    >>> t.order, t.complete_length, t.partial
    (6, 3, False)
    """
    if cap < 1:
        raise ValueError("cap must be a positive element count")
    memo: dict[Word, tuple[bool, Word]] = {}
    rank = matrix.rank
    words: list[Word] = [()]
    index: dict[Word, int] = {(): 0}
    frontier: list[Word] = [()]
    partial = False
    while True:
        candidates = set()
        for w in frontier:
            for s in range(rank):
                reduced, canonical = normal_form(matrix, w + (s,), memo)
                if reduced and canonical not in index:
                    candidates.add(canonical)
        if not candidates:
            break
        if len(words) + len(candidates) > cap:
            partial = True
            break
        frontier = sorted(candidates)
        for w in frontier:
            index[w] = len(words)
            words.append(w)

    def resolve(word: Word) -> Optional[int]:
        _, canonical = normal_form(matrix, word, memo)
        return index.get(canonical)

    right = [[resolve(w + (s,)) for s in range(rank)] for w in words]
    left = [[resolve((s,) + w) for s in range(rank)] for w in words]
    return GroupTable(matrix, words, right, left, partial, cap)


def mult_gen(table: GroupTable, w: Element, s: int, side: str = "left") -> Element:
    """The product ``s*w`` (left) or ``w*s`` (right); length changes by exactly 1."""
    row = table._left if side == "left" else table._right
    j = row[w.index][s]
    if j is None:
        raise IncompleteTableError(
            f"product of {w.name} with s{s + 1} lies beyond length {table.complete_length}"
        )
    return table.elements[j]


def evaluate_word(table: GroupTable, word: Word) -> Element:
    """Left-to-right product of the letters; the empty word is the identity."""
    x = table.identity
    for s in word:
        x = mult_gen(table, x, s, "right")
    return x


def is_reduced(table: GroupTable, word: Word) -> bool:
    """True iff the letter count equals the length of the product."""
    return len(word) == evaluate_word(table, word).length


def descents(table: GroupTable, w: Element, side: str = "left") -> tuple[int, ...]:
    """Generators s with ``l(sw) < l(w)`` (left) or ``l(ws) < l(w)`` (right), ascending."""
    row = table._left if side == "left" else table._right
    out = []
    for s in range(table.rank):
        j = row[w.index][s]
        if j is not None and table.elements[j].length < w.length:
            out.append(s)
    return tuple(out)


def bruhat_leq(table: GroupTable, x: Element, w: Element) -> bool:
    """Bruhat order by the lifting recursion, memoized per table.

    With s a left descent of w: x <= w iff min(x, sx) <= sw, where "min"
    picks the shorter of x and sx.
    """
    if x.index == w.index:
        return True
    if x.length >= w.length:
        return False
    memo = table._bruhat_memo
    key = (x.index, w.index)
    cached = memo.get(key)
    if cached is not None:
        return cached
    s = descents(table, w, "left")[0]
    sw = table.elements[table._left[w.index][s]]
    sx = table.elements[table._left[x.index][s]]
    shorter = sx if sx.length < x.length else x
    result = bruhat_leq(table, shorter, sw)
    memo[key] = result
    return result


def bruhat_interval(table: GroupTable, w: Element) -> list[Element]:
    """All x <= w, in (length, ShortLex) order."""
    return [x for x in table.elements if x.length <= w.length and bruhat_leq(table, x, w)]


def all_reduced_words(table: GroupTable, w: Element) -> frozenset[Word]:
    """Every reduced word of w, by recursive peeling of left descents."""
    memo = table._redwords_memo
    cached = memo.get(w.index)
    if cached is not None:
        return cached
    if w.length == 0:
        result = frozenset({()})
    else:
        acc = set()
        for s in descents(table, w, "left"):
            rest = table.elements[table._left[w.index][s]]
            for tail in all_reduced_words(table, rest):
                acc.add((s,) + tail)
        result = frozenset(acc)
    memo[w.index] = result
    return result
