"""Finite words and finite-horizon language tables.

Words are plain Python strings over a character alphabet (one character per
symbol, e.g. alphabet "01").  Lexicographic order on words is then just
string order, which keeps class representatives and reports deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import HorizonExceededError

EMPTY = ""


def factors(text: str, n: int) -> set[str]:
    """All distinct length-n contiguous subwords of `text`.

    Returns the empty set when n exceeds len(text); {""} when n == 0.
    """
    if n < 0:
        raise ValueError("factor length must be nonnegative")
    if n > len(text):
        return set()
    if n == 0:
        return {EMPTY}
    return {text[i : i + n] for i in range(len(text) - n + 1)}


@dataclass(frozen=True)
class LanguageTable:
    """All admitted words up to a horizon length.

    by_length[n] holds the admitted words of length n for 0 <= n <= max_len;
    by_length[0] is always {""}.  Immutable after construction.
    """

    alphabet: str
    max_len: int
    by_length: dict[int, frozenset[str]]
    certificate: dict = field(default_factory=dict, compare=False)

    def admits(self, w: str) -> bool:
        if len(w) > self.max_len:
            raise HorizonExceededError(
                f"word of length {len(w)} beyond horizon {self.max_len}"
            )
        return w in self.by_length[len(w)]

    def words(self, n: int) -> frozenset[str]:
        if n > self.max_len:
            raise HorizonExceededError(f"length {n} beyond horizon {self.max_len}")
        return self.by_length[n]

    def left_extensions(self, w: str) -> set[str]:
        """Symbols a such that a+w is admitted."""
        if len(w) + 1 > self.max_len:
            raise HorizonExceededError(
                f"extension of length {len(w) + 1} beyond horizon {self.max_len}"
            )
        longer = self.by_length[len(w) + 1]
        return {a for a in self.alphabet if a + w in longer}

    def right_extensions(self, w: str) -> set[str]:
        """Symbols a such that w+a is admitted."""
        if len(w) + 1 > self.max_len:
            raise HorizonExceededError(
                f"extension of length {len(w) + 1} beyond horizon {self.max_len}"
            )
        longer = self.by_length[len(w) + 1]
        return {a for a in self.alphabet if w + a in longer}


def table_from_words(alphabet: str, max_len: int, words_by_length) -> LanguageTable:
    by_length = {0: frozenset({EMPTY})}
    for n in range(1, max_len + 1):
        by_length[n] = frozenset(words_by_length.get(n, ()))
    return LanguageTable(alphabet=alphabet, max_len=max_len, by_length=by_length)


def table_from_text(alphabet: str, max_len: int, text: str) -> LanguageTable:
    """Table whose words are exactly the factors of `text` up to max_len."""
    return table_from_words(
        alphabet, max_len, {n: factors(text, n) for n in range(1, max_len + 1)}
    )


def validate_table(table: LanguageTable) -> list[str]:
    """Check factoriality and left/right extendability; return all violations.

    An empty list means the table satisfies every LanguageTable invariant.
    """
    problems: list[str] = []
    for n in range(1, table.max_len + 1):
        shorter = table.by_length[n - 1]
        for w in sorted(table.by_length[n]):
            if n >= 2 and (w[:-1] not in shorter or w[1:] not in shorter):
                problems.append(f"factoriality: {w!r} has a non-admitted factor")
            if any(c not in table.alphabet for c in w):
                problems.append(f"alphabet: {w!r} uses unknown symbols")
    for n in range(table.max_len):
        longer = table.by_length[n + 1]
        for w in sorted(table.by_length[n]):
            if not any(w + a in longer for a in table.alphabet):
                problems.append(f"right-extendability: {w!r} has no right extension")
            if not any(a + w in longer for a in table.alphabet):
                problems.append(f"left-extendability: {w!r} has no left extension")
    return problems


def left_extensions(table: LanguageTable, w: str) -> set[str]:
    return table.left_extensions(w)
