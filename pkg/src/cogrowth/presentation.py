"""Group presentation input: parsing, validation, symmetric closure.

The input grammar is ``gens: <letters> ; rels: <relator>[, <relator>]*``
where a lowercase ASCII letter is a generator and the matching uppercase
letter is its inverse.  Dots inside relators are ignored (handy for writing
commutators readably).  Relators are freely and cyclically reduced at parse
time, then the relator set is closed under inversion and cyclic rotation,
which is the form the walk's insertion move assumes.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from .words import Word, cyclic_reduce, free_reduce, inverse


class PresentationError(ValueError):
    """Raised for malformed or unsupported presentation input."""


@dataclass(frozen=True)
class GeneratorAlphabet:
    """The symmetric generating set: p generator symbols plus inverses."""

    names: tuple[str, ...]  # sorted lowercase symbols; generator i+1 <-> names[i]

    @property
    def p(self) -> int:
        return len(self.names)

    @property
    def letters(self) -> tuple[int, ...]:
        """All 2p signed letters."""
        return tuple(s * g for g in range(1, self.p + 1) for s in (1, -1))

    def letter_of_char(self, ch: str) -> int:
        low = ch.lower()
        if low not in self.names:
            raise PresentationError(f"unknown letter {ch!r}")
        g = self.names.index(low) + 1
        return g if ch.islower() else -g

    def char_of_letter(self, x: int) -> str:
        name = self.names[abs(x) - 1]
        return name if x > 0 else name.upper()

    def spell(self, word: Word) -> str:
        return "".join(self.char_of_letter(x) for x in word)


@dataclass(frozen=True)
class Relator:
    """A cyclically reduced relator plus the user relator it derives from."""

    word: Word
    origin: int

    def __len__(self) -> int:
        return len(self.word)


@dataclass(frozen=True)
class Presentation:
    alphabet: GeneratorAlphabet
    user_relators: tuple[Relator, ...]
    closed_relators: tuple[Relator, ...] = field(repr=False)
    parity_even: bool

    def render(self) -> str:
        """Canonical text form; ``parse_presentation`` round-trips it."""
        gens = " ".join(self.alphabet.names)
        rels = ", ".join(self.alphabet.spell(r.word) for r in self.user_relators)
        return f"gens: {gens} ; rels: {rels}"

    def digest(self) -> str:
        return hashlib.sha256(self.render().encode()).hexdigest()

    def max_relator_length(self) -> int:
        return max(len(r) for r in self.closed_relators)


def _close_relators(user: list[Word]) -> list[Relator]:
    closed: list[Relator] = []
    seen: set[Word] = set()
    for idx, rel in enumerate(user):
        for base in (rel, inverse(rel)):
            for shift in range(len(base)):
                rot = base[shift:] + base[:shift]
                if rot not in seen:
                    seen.add(rot)
                    closed.append(Relator(rot, idx))
    return closed


def _build(names: tuple[str, ...], user_words: list[Word]) -> Presentation:
    alphabet = GeneratorAlphabet(names)
    if not user_words:
        raise PresentationError(
            "presentation has no relators: it presents a free group, and the "
            "walk on trivial words would be frozen at the empty word"
        )
    reduced: list[Word] = []
    for i, w in enumerate(user_words):
        cw = cyclic_reduce(w)
        if not cw:
            raise PresentationError(f"relator {i + 1} is empty after free reduction")
        reduced.append(cw)
    return Presentation(
        alphabet=alphabet,
        user_relators=tuple(Relator(w, i) for i, w in enumerate(reduced)),
        closed_relators=tuple(_close_relators(reduced)),
        parity_even=all(len(w) % 2 == 0 for w in reduced),
    )


def parse_presentation(text: str) -> Presentation:
    """Parse the ``gens: ... ; rels: ...`` grammar into a :class:`Presentation`."""
    body = text.strip()
    if ";" not in body:
        raise PresentationError("expected ';' between the gens and rels sections")
    gens_part, _, rels_part = body.partition(";")
    gens_part = gens_part.strip()
    rels_part = rels_part.strip()
    if not gens_part.startswith("gens:"):
        raise PresentationError("presentation must start with 'gens:'")
    if not rels_part.startswith("rels:"):
        raise PresentationError("expected 'rels:' after ';'")

    names: list[str] = []
    for tok in gens_part[len("gens:"):].split():
        if len(tok) != 1 or not ("a" <= tok <= "z"):
            raise PresentationError(f"generator {tok!r} is not a single lowercase letter")
        if tok in names:
            raise PresentationError(f"duplicate generator {tok!r}")
        names.append(tok)
    if not names:
        raise PresentationError("no generators declared")
    alphabet = GeneratorAlphabet(tuple(sorted(names)))

    rel_src = rels_part[len("rels:"):]
    user_words: list[Word] = []
    for rel_no, chunk in enumerate(rel_src.split(",")):
        letters: list[int] = []
        for ch in chunk:
            if ch in " \t\n.":
                continue
            if not ch.isalpha():
                raise PresentationError(
                    f"relator {rel_no + 1}, position {len(letters) + 1}: "
                    f"invalid character {ch!r}"
                )
            try:
                letters.append(alphabet.letter_of_char(ch))
            except PresentationError as exc:
                raise PresentationError(
                    f"relator {rel_no + 1}, position {len(letters) + 1}: {exc}"
                ) from None
        if letters:
            user_words.append(free_reduce(letters))
        elif chunk.strip():
            user_words.append(())  # dots/whitespace only: reduces to empty, caught below
    return _build(alphabet.names, user_words)


_PRESETS = {
    "trivial_family": "a trivial-group family with one long relator (length 2n+1)",
    "bs": "solvable Baumslag-Solitar group BS(1,n)",
    "zk": "free abelian group Z^k (pairwise commutators)",
    "thompson_f": "R. Thompson's group F, standard two-generator presentation",
    "surface2": "fundamental group of the genus-2 surface",
    "braid3": "three-strand braid group",
}


def builtin_presentation(name: str, n: int | None = None) -> Presentation:
    """Return one of the named presentations used throughout the test corpus."""
    key = name.replace("-", "_").lower()
    if key not in _PRESETS:
        raise PresentationError(f"unknown preset {name!r}; choose from {sorted(_PRESETS)}")
    if key == "trivial_family":
        if n is None or n < 1:
            raise PresentationError("trivial_family requires a parameter n >= 1")
        return parse_presentation(f"gens: a b ; rels: abaBAB , {'a' * n}{'B' * (n + 1)}")
    if key == "bs":
        if n is None or n < 1:
            raise PresentationError("bs requires a parameter n >= 1 (the group BS(1,n))")
        return parse_presentation(f"gens: a t ; rels: taT{'A' * n}")
    if key == "zk":
        if n is None or n < 2:
            raise PresentationError(
                "zk requires k >= 2 (Z^1 is free on one generator and has no relators)"
            )
        if n > 26:
            raise PresentationError("zk supports at most 26 generators")
        names = [chr(ord("a") + i) for i in range(n)]
        rels = []
        for i in range(n):
            for j in range(i + 1, n):
                x, y = names[i], names[j]
                rels.append(f"{x}{y}{x.upper()}{y.upper()}")
        return parse_presentation(f"gens: {' '.join(names)} ; rels: {', '.join(rels)}")
    if n is not None:
        raise PresentationError(f"preset {name!r} takes no parameter")
    if key == "thompson_f":
        # the two commutators [ab^-1, a^-1 b a] and [ab^-1, a^-2 b a^2],
        # freely reduced lengths 10 and 14
        return parse_presentation("gens: a b ; rels: aB.Aba.bA.ABa , aB.AAbaa.bA.AABaa")
    if key == "surface2":
        return parse_presentation("gens: a b c d ; rels: abAB.cdCD")
    return parse_presentation("gens: a b ; rels: abaBAB")  # braid3
