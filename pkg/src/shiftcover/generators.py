"""Concrete shift-space generators and the rays they define.

A generator spec produces arbitrarily long prefixes of one distinguished
infinite word; `language_from_generator` turns the factor sets of that word
(or, for matrix SFTs, the admissible paths) into a certified LanguageTable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConstructionError, HorizonExceededError, StabilizationError
from .quadratic import Surd, cf_value
from .words import EMPTY, LanguageTable, factors, table_from_text, table_from_words

# hard cap on any single generated prefix
PREFIX_SAFETY_BOUND = 1 << 20


def looks_periodic(word: str) -> bool:
    """Conservative periodicity surrogate: word is a power of a short word."""
    n = len(word)
    for p in range(1, n // 3 + 1):
        if n % p == 0 and word == word[:p] * (n // p):
            return True
    return False


@dataclass(frozen=True)
class SubstitutionSystem:
    """A substitution on a character alphabet, iterated from a seed symbol."""

    rules: tuple[tuple[str, str], ...]  # (symbol, image) pairs
    seed: str

    @classmethod
    def from_map(cls, rules: dict[str, str], seed: str) -> "SubstitutionSystem":
        return cls(tuple(sorted(rules.items())), seed)

    @property
    def rule_map(self) -> dict[str, str]:
        return dict(self.rules)

    @property
    def alphabet(self) -> str:
        return "".join(sorted(self.rule_map))

    def __post_init__(self):
        rules = self.rule_map
        if self.seed not in rules:
            raise ConstructionError(f"seed {self.seed!r} has no rule")
        for sym, image in rules.items():
            if not image or any(c not in rules for c in image):
                raise ConstructionError(f"rule for {sym!r} is empty or leaves alphabet")
        if not rules[self.seed].startswith(self.seed):
            raise ConstructionError(
                f"rules({self.seed!r}) does not start with the seed; no fixed point"
            )

    def is_primitive(self) -> bool:
        """Every symbol eventually occurs in every symbol's iterated image."""
        rules = self.rule_map
        syms = sorted(rules)
        reach = {s: set(rules[s]) for s in syms}
        for _ in range(2 * len(syms)):
            for s in syms:
                reach[s] = reach[s] | {t for r in reach[s] for t in rules[r]}
        return all(reach[s] == set(syms) for s in syms)

    def prefix(self, n: int) -> str:
        if n > PREFIX_SAFETY_BOUND:
            raise HorizonExceededError(f"prefix length {n} beyond safety bound")
        rules = self.rule_map
        w = self.seed
        while len(w) < n:
            grown = "".join(rules[c] for c in w)
            if len(grown) == len(w):  # non-expanding: extend by repetition
                if looks_periodic((w * 3)[: 3 * len(w)]):
                    w = w * ((n // len(w)) + 1)
                    break
                raise ConstructionError("substitution does not grow")
            w = grown
        return w[:n]


def substitution_prefix(sys: SubstitutionSystem, n: int) -> str:
    return sys.prefix(n)


@dataclass(frozen=True)
class SturmianSpec:
    """Sturmian generator.

    cf_digits drive the standard-word recursion s_{k+1} = s_k^{a_{k+1}} s_{k-1}
    (digits repeat cyclically past the end of the list); the associated slope
    is then the irrational [0; a_1+1, a_2, a_3, ...].  With an intercept, the
    generated word is the mechanical word of that slope instead, computed in
    exact quadratic arithmetic; cf_period gives the repeating digit block
    (defaults to the whole digit list).
    """

    cf_digits: tuple[int, ...]
    intercept: tuple[Fraction, Fraction] | None = None  # rho = r0 + r1 * alpha
    cf_period: tuple[int, ...] | None = None

    @classmethod
    def characteristic(cls, digits) -> "SturmianSpec":
        return cls(tuple(digits))

    @classmethod
    def mechanical(cls, digits, rho, rho_alpha=0) -> "SturmianSpec":
        return cls(
            tuple(digits), intercept=(Fraction(rho), Fraction(rho_alpha))
        )

    @property
    def alphabet(self) -> str:
        return "01"

    def __post_init__(self):
        if not self.cf_digits or any(a < 1 for a in self.cf_digits):
            raise ConstructionError("cf digits must be a nonempty list of positives")

    def slope(self) -> Surd:
        d = list(self.cf_digits)
        period = list(self.cf_period) if self.cf_period else d
        pre = [d[0] + 1] + d[1:]
        return cf_value(pre, period)

    def prefix(self, n: int) -> str:
        if n > PREFIX_SAFETY_BOUND:
            raise HorizonExceededError(f"prefix length {n} beyond safety bound")
        if self.intercept is None:
            return standard_sturmian_prefix(self, n)
        return mechanical_word(self, n)


def standard_sturmian_prefix(spec: SturmianSpec, n: int) -> str:
    """Length-n prefix of the standard word of spec's digit sequence."""
    if spec.intercept is not None:
        raise ConstructionError("standard word is defined for intercept-free specs")
    if n == 0:
        return EMPTY
    prev, cur = "1", "0"
    k = 0
    while len(cur) < n:
        a = spec.cf_digits[k % len(spec.cf_digits)]
        prev, cur = cur, cur * a + prev
        k += 1
    return cur[:n]


def mechanical_word(spec: SturmianSpec, n: int) -> str:
    """w_k = floor((k+1)a + r) - floor(ka + r) in exact arithmetic."""
    if spec.intercept is None:
        raise ConstructionError("mechanical word needs an intercept")
    alpha = spec.slope()
    r0, r1 = spec.intercept
    rho = alpha * r1 + r0
    out = []
    prev = rho.floor()
    for k in range(1, n + 1):
        cur = (alpha * k + rho).floor()
        out.append(str(cur - prev))
        prev = cur
    word = "".join(out)
    if any(c not in "01" for c in word):
        raise ConstructionError("mechanical word left the binary alphabet")
    return word


@dataclass(frozen=True)
class ToeplitzSpec:
    """Iterated hole-filling Toeplitz generator; '?' marks holes."""

    pattern: str
    HOLE = "?"

    @property
    def alphabet(self) -> str:
        return "".join(sorted(set(self.pattern) - {self.HOLE}))

    def __post_init__(self):
        if self.HOLE not in self.pattern:
            raise ConstructionError(
                "pattern has no hole: the limit word is periodic"
            )
        if len(set(self.pattern)) < 2:
            raise ConstructionError("pattern needs at least one non-hole symbol")
        if self.pattern[0] == self.HOLE:
            raise ConstructionError("leading hole makes position 0 self-referential")

    def fill_round(self, seq: str) -> str:
        """One filling round: holes of the pattern stream take seq's values."""
        out = []
        hole_idx = 0
        q = len(self.pattern)
        for j in range(len(seq)):
            c = self.pattern[j % q]
            if c != self.HOLE:
                out.append(c)
            else:
                out.append(seq[hole_idx] if hole_idx < len(seq) else self.HOLE)
                hole_idx += 1
        return "".join(out)

    def prefix(self, n: int) -> str:
        if n > PREFIX_SAFETY_BOUND:
            raise HorizonExceededError(f"prefix length {n} beyond safety bound")
        q = len(self.pattern)
        seq = (self.pattern * (n // q + 1))[:n]
        rounds = 0
        while self.HOLE in seq:
            nxt = self.fill_round(seq)
            rounds += 1
            if nxt == seq:
                raise ConstructionError("hole filling stalled")
            seq = nxt
            if rounds > n + 8:
                raise ConstructionError("hole filling did not converge")
        return seq


def toeplitz_word(spec: ToeplitzSpec, n: int) -> str:
    return spec.prefix(n)


@dataclass(frozen=True)
class MatrixSFT:
    """Vertex shift of a square 0-1 transition matrix; symbols '0','1',..."""

    transition: tuple[tuple[int, ...], ...]

    @property
    def alphabet(self) -> str:
        return "".join(str(i) for i in range(len(self.transition)))

    def __post_init__(self):
        m = self.transition
        size = len(m)
        if size > 10:
            raise ConstructionError("at most 10 symbols supported")
        if any(len(row) != size for row in m):
            raise ConstructionError("transition matrix must be square")
        for i in range(size):
            if not any(m[i][j] for j in range(size)):
                raise ConstructionError(f"all-zero row {i}: not right-extendable")
            if not any(m[j][i] for j in range(size)):
                raise ConstructionError(f"all-zero column {i}: not left-extendable")

    def allows(self, a: str, b: str) -> bool:
        return bool(self.transition[int(a)][int(b)])

    def words_of_length(self, n: int) -> set[str]:
        if n == 0:
            return {EMPTY}
        level = set(self.alphabet)
        for _ in range(n - 1):
            level = {w + b for w in level for b in self.alphabet if self.allows(w[-1], b)}
        return level

    def prefix(self, n: int) -> str:
        """A transitive-ish ray: greedy least-used-edge walk from symbol '0'."""
        if n > PREFIX_SAFETY_BOUND:
            raise HorizonExceededError(f"prefix length {n} beyond safety bound")
        if n == 0:
            return EMPTY
        used: dict[tuple[str, str], int] = {}
        out = ["0"]
        while len(out) < n:
            cur = out[-1]
            nxt = min(
                (b for b in self.alphabet if self.allows(cur, b)),
                key=lambda b: (used.get((cur, b), 0), b),
            )
            used[(cur, nxt)] = used.get((cur, nxt), 0) + 1
            out.append(nxt)
        return "".join(out)


@dataclass(frozen=True)
class WordSource:
    """A finite word posing as a generator; prefix queries beyond it fail."""

    word: str
    alphabet: str

    def prefix(self, n: int) -> str:
        if n > len(self.word):
            raise HorizonExceededError(
                f"word chain of length {len(self.word)} cannot give a prefix of {n}"
            )
        return self.word[:n]


@dataclass(frozen=True)
class Ray:
    """A right-infinite point: prepend + sigma^shift_offset(source word)."""

    source: object
    shift_offset: int = 0
    prepend: str = ""

    def prefix(self, n: int) -> str:
        head = self.prepend[:n]
        rest = n - len(head)
        if rest == 0:
            return head
        body = self.source.prefix(self.shift_offset + rest)[self.shift_offset :]
        return head + body

    def shift(self, j: int) -> "Ray":
        if j <= len(self.prepend):
            return Ray(self.source, self.shift_offset, self.prepend[j:])
        return Ray(self.source, self.shift_offset + j - len(self.prepend), "")

    def describe(self) -> str:
        head = f"{self.prepend}+" if self.prepend else ""
        return f"{head}sigma^{self.shift_offset}({type(self.source).__name__})"


LANGUAGE_BUDGET = 1 << 16


def language_from_generator(gen, max_len: int, initial_factor=4) -> LanguageTable:
    """Certified LanguageTable of a generator's infinite word.

    For sequence generators: take the prefix of length initial_factor*max_len
    and double it until the factor-count vector p(1..max_len) is identical
    across two consecutive doublings; the certificate records the prefix
    length used.  For matrix SFTs the words are the admissible paths.
    """
    if max_len < 1:
        raise ConstructionError("max_len must be positive")
    if isinstance(gen, MatrixSFT):
        table = table_from_words(
            gen.alphabet,
            max_len,
            {n: gen.words_of_length(n) for n in range(1, max_len + 1)},
        )
        table.certificate.update({"method": "paths", "tags": _tags(gen)})
        return table

    length = initial_factor * max_len
    prev_counts = None
    while length <= LANGUAGE_BUDGET:
        text = gen.prefix(length)
        counts = tuple(len(factors(text, n)) for n in range(1, max_len + 1))
        if counts == prev_counts:
            table = table_from_text(gen.alphabet, max_len, text)
            table.certificate.update(
                {"method": "prefix-doubling", "prefix_length": length, "tags": _tags(gen)}
            )
            return table
        prev_counts = counts
        length *= 2
    raise StabilizationError(
        f"factor counts did not stabilize within prefix budget {LANGUAGE_BUDGET}",
        budget=LANGUAGE_BUDGET,
    )


def _tags(gen) -> dict:
    tags = {}
    if isinstance(gen, MatrixSFT):
        tags["periodic"] = False
        tags["minimal_candidate"] = False
        return tags
    probe = gen.prefix(96)
    tags["periodic"] = looks_periodic(probe)
    if isinstance(gen, SubstitutionSystem):
        tags["primitive"] = gen.is_primitive()
    tags["minimal_candidate"] = not tags["periodic"]
    return tags
