"""Catalog of the 17 isospectral domain pairs.

Each catalog entry pairs two permutation representations of the same finite
group, given by three involutions acting on tile indices.  Base involutions
are transcribed in ``data/generators.txt`` in cycle notation; derived
generators (primed letters) are words in earlier ones and get expanded at
load time.
"""

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import BadGluing, DegreeMismatch, UnknownPair, UnknownSymbol


class Perm:
    """A permutation of {0..n-1}, stored as an image array.

    Composition is right-to-left: ``(p * q)(x) == p(q(x))``.
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        self.images = tuple(images)
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"not a bijection of 0..{n - 1}: {images}")
        self._hash = hash(self.images)

    @classmethod
    def identity(cls, n: int) -> "Perm":
        return cls(range(n))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> "Perm":
        """Parse disjoint-cycle notation like ``(0 12)(3 5)``.

        Points may be separated by spaces or commas; unmentioned points are
        fixed.  Repeated points are rejected.
        """
        images = list(range(degree))
        seen = set()
        body = text.strip()
        if body in ("", "()", "id"):
            return cls(images)
        for cyc in re.findall(r"\(([^()]*)\)", body):
            pts = [int(tok) for tok in re.split(r"[,\s]+", cyc.strip()) if tok]
            for x in pts:
                if x in seen:
                    raise ValueError(f"point {x} repeated in {text!r}")
                if not 0 <= x < degree:
                    raise ValueError(f"point {x} out of range for degree {degree}")
                seen.add(x)
            for i, x in enumerate(pts):
                images[x] = pts[(i + 1) % len(pts)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Perm") -> "Perm":
        if len(self.images) != len(other.images):
            raise DegreeMismatch(
                f"degree {len(self.images)} vs {len(other.images)}"
            )
        im = self.images
        return Perm(tuple(im[y] for y in other.images))

    def __invert__(self) -> "Perm":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Perm(inv)

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Perm({self.cycle_string()!r}, degree={self.degree})"

    def is_identity(self) -> bool:
        return all(i == x for x, i in enumerate(self.images))

    def is_involution(self) -> bool:
        return all(self.images[y] == x for x, y in enumerate(self.images))

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(x for x, y in enumerate(self.images) if x == y)

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        out, seen = [], set()
        for x in range(len(self.images)):
            if x in seen:
                continue
            cyc = [x]
            y = self.images[x]
            while y != x:
                cyc.append(y)
                y = self.images[y]
            seen.update(cyc)
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


@dataclass(frozen=True)
class ExampleSpec:
    """One catalog row: a pair of transitive triple-involution actions."""

    id: str
    degree: int
    gen_words: tuple[str, str, str]
    left_gens: tuple[Perm, Perm, Perm]
    right_gens: tuple[Perm, Perm, Perm]
    signature_G0: str
    signature_A0: str
    signature_B0: str
    crosscap_count: int
    group_name: str


# Rows: id, generator words, crosscaps, ambient signature, quotient
# signature(s), group label, new derived-letter definitions.
_ROWS = [
    ("7_1", "a,b,c", 23, "*444", "*424242", "L3(2)", ""),
    ("7_2", "a,b',c", 16, "*443", "*42423", "L3(2)", "a'=cac"),
    ("7_3", "a',b',c", 9, "*433", "*4233", "L3(2)", "b'=aba"),
    ("13_1", "d,e,f", 704, "*444", "*422422422", "L3(3)", ""),
    ("13_2", "d,e',f", 938, "*644", "*6622342242", "L3(3)", "e'=ded"),
    ("13_3", "d',e',f", 1172, "*664", "*62234263662", "L3(3)", "d'=fdf"),
    ("13_4", "d',e',f'", 938, "*663", "*633626362", "L3(3)", "f'=e'fe'"),
    ("13_5", "d',e'',f'", 470, "*633", "*663332", "L3(3)", "e''=d'e'd'"),
    ("13_6", "g,h,i", 1406, "*666", "*632663266326", "L3(3)", ""),
    ("13_7", "g,h',i", 938, "*663", "*632666233", "L3(3)", "h'=ghg"),
    ("13_8", "g',h',i", 704, "*643", "*63436222,*62633224", "L3(3)", "g'=igi"),
    ("13_9", "g',h',i'", 938, "*644", "*6262242243", "L3(3)", "i'=g'ig'"),
    ("15_1", "j,k,l", 3362, "*663", "*63362333222", "L4(2)", ""),
    ("15_2", "j,k,l'", 4202, "*664", "*6262234342242", "L4(2)", "l'=jlj"),
    ("15_3", "j',k,l'", 3362, "*644", "*62234424242,*62422243442", "L4(2)", "j'=kjk"),
    ("15_4", "j',k',l'", 2522, "*444", "*444222442", "L4(2)", "k'=l'kl'"),
    ("21_1", "p,q,r", 1682, "*633", "*63633332,*66333323", "L3(4)", ""),
]

_LETTER_RE = re.compile(r"[a-z]'*")


def split_word(word: str) -> list[str]:
    """Split a word like ``d'e''f`` into letters, primes attached."""
    letters = _LETTER_RE.findall(word)
    if "".join(letters) != word.replace(" ", ""):
        raise UnknownSymbol(f"cannot tokenize word {word!r}")
    return letters


def expand_word(word: str, base: dict[str, Perm]) -> Perm:
    """Compose the letters of ``word`` right-to-left over ``base``."""
    letters = split_word(word)
    if not letters:
        raise UnknownSymbol("empty word")
    try:
        perms = [base[s] for s in letters]
    except KeyError as exc:
        raise UnknownSymbol(f"letter {exc.args[0]!r} undefined in word {word!r}") from None
    out = perms[-1]
    for p in reversed(perms[:-1]):
        out = p * out
    return out


def _load_base_generators() -> dict[str, tuple[Perm, Perm]]:
    """Parse data/generators.txt into letter -> (point perm, line perm)."""
    text = resources.files("drumkit.data").joinpath("generators.txt").read_text()
    table: dict[str, tuple[Perm, Perm]] = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, _, body = line.partition("=")
        letter, degree = head.split()
        point_s, _, line_s = body.partition("/")
        pt = Perm.from_cycles(point_s, int(degree))
        ln = Perm.from_cycles(line_s, int(degree))
        for which, perm in (("point", pt), ("line", ln)):
            if not perm.is_involution():
                raise BadGluing(f"{letter} {which} action is not an involution")
        table[letter] = (pt, ln)
    return table


@lru_cache(maxsize=1)
def load_catalog() -> tuple[ExampleSpec, ...]:
    """All 17 pairs, with derived generators expanded.

    Primed letters are defined cumulatively across the whole table (a
    definition may appear one row before the generator list that first needs
    it), so all definitions are resolved before any row is expanded.
    """
    symbols: dict[str, tuple[Perm, Perm]] = dict(_load_base_generators())
    for row in _ROWS:
        defn = row[6]
        if defn:
            name, _, rhs = defn.partition("=")
            pt = expand_word(rhs, {s: v[0] for s, v in symbols.items()})
            ln = expand_word(rhs, {s: v[1] for s, v in symbols.items()})
            symbols[name] = (pt, ln)
    specs = []
    for pid, words, crosscaps, sig_g0, sig_ab, group, _defn in _ROWS:
        gen_words = tuple(words.split(","))
        try:
            triples = [symbols[w] for w in gen_words]
        except KeyError as exc:
            raise UnknownSymbol(f"row {pid}: letter {exc.args[0]!r} undefined") from None
        sigs = sig_ab.split(",")
        sig_a, sig_b = (sigs[0], sigs[0]) if len(sigs) == 1 else sigs
        specs.append(
            ExampleSpec(
                id=pid,
                degree=triples[0][0].degree,
                gen_words=gen_words,
                left_gens=tuple(t[0] for t in triples),
                right_gens=tuple(t[1] for t in triples),
                signature_G0=sig_g0,
                signature_A0=sig_a,
                signature_B0=sig_b,
                crosscap_count=crosscaps,
                group_name=group,
            )
        )
    return tuple(specs)


def get_pair(pair_id: str) -> ExampleSpec:
    """Look up one catalog entry by id, e.g. ``"7_1"``."""
    for spec in load_catalog():
        if spec.id == pair_id:
            return spec
    raise UnknownPair(f"no catalog pair {pair_id!r}")
