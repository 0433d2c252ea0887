"""Finite permutation-group machinery behind the isospectrality certificate.

Everything here is exhaustive: groups are enumerated by breadth-first closure
over their generators (the largest catalog group has 20160 elements), and the
orbifold Euler-characteristic bookkeeping is done in exact rationals.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .catalog import ExampleSpec, Perm
from .errors import (
    DegreeMismatch,
    GroupTooLarge,
    InvalidSignature,
    NotSameGroup,
)

DEFAULT_ELEMENT_CAP = 10**6


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...]
    elements: frozenset[Perm]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements


def generate_group(gens, cap: int = DEFAULT_ELEMENT_CAP) -> PermGroup:
    """Close ``gens`` under composition.

    In a finite group the semigroup closure already contains inverses and the
    identity, so plain breadth-first multiplication is enough.
    """
    gens = tuple(gens)
    if not gens:
        raise ValueError("need at least one generator")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise DegreeMismatch("generators act on different point sets")
    ident = Perm.identity(degree)
    elements = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for h in frontier:
            for g in gens:
                prod = g * h
                if prod not in elements:
                    elements.add(prod)
                    new.append(prod)
                    if len(elements) > cap:
                        raise GroupTooLarge(f"closure exceeded cap {cap}")
        frontier = new
    return PermGroup(degree=degree, generators=gens, elements=frozenset(elements))


@dataclass
class SunadaResult:
    """Outcome of the fixed-point-count comparison over a whole group."""

    ok: bool
    order: int
    degree: int
    witness: str | None = None
    witness_counts: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def _fixed_count(p: Perm) -> int:
    return sum(1 for x, y in enumerate(p.images) if x == y)


def sunada_check(left_gens, right_gens, cap: int = DEFAULT_ELEMENT_CAP) -> SunadaResult:
    """Certify that two triple-involution actions give isospectral quotients.

    The two generator triples are enumerated jointly: each abstract element is
    carried as a pair (action on the left points, action on the right points)
    together with one word that produces it.  The pairing extends to a group
    isomorphism iff no element acts as the identity on one side only; that is
    checked for free during the enumeration.  The certificate itself is that
    every element fixes equally many points in both actions, which for
    transitive actions is equivalent to the point stabilizers meeting every
    conjugacy class in equally many elements.
    """
    left_gens = tuple(left_gens)
    right_gens = tuple(right_gens)
    if len(left_gens) != len(right_gens):
        raise DegreeMismatch("generator triples have different lengths")
    degree = left_gens[0].degree
    if any(g.degree != degree for g in left_gens + right_gens):
        raise DegreeMismatch("all generators must share one degree")

    names = "abcdefghijklmnopqrstuvwxyz"
    ident = (Perm.identity(degree), Perm.identity(degree))
    seen: dict[tuple, str] = {(ident[0].images, ident[1].images): ""}
    left_to_right: dict[tuple, tuple] = {ident[0].images: ident[1].images}
    right_to_left: dict[tuple, tuple] = {ident[1].images: ident[0].images}
    frontier = [ident]
    bad: tuple[str, int, int] | None = None

    while frontier:
        new = []
        for hl, hr in frontier:
            word = seen[(hl.images, hr.images)]
            for idx, (gl, gr) in enumerate(zip(left_gens, right_gens)):
                pl, pr = gl * hl, gr * hr
                key = (pl.images, pr.images)
                if key in seen:
                    continue
                w = names[idx] + word
                seen[key] = w
                if len(seen) > cap:
                    raise GroupTooLarge(f"joint closure exceeded cap {cap}")
                prev = left_to_right.setdefault(pl.images, pr.images)
                if prev != pr.images:
                    raise NotSameGroup(
                        f"word {w!r} distinguishes the two actions", witness=w
                    )
                prev = right_to_left.setdefault(pr.images, pl.images)
                if prev != pl.images:
                    raise NotSameGroup(
                        f"word {w!r} distinguishes the two actions", witness=w
                    )
                if bad is None:
                    fl, fr = _fixed_count(pl), _fixed_count(pr)
                    if fl != fr:
                        bad = (w, fl, fr)
                new.append((pl, pr))
        frontier = new

    order = len(seen)
    if bad is not None:
        word, fl, fr = bad
        return SunadaResult(
            ok=False, order=order, degree=degree, witness=word, witness_counts=(fl, fr)
        )
    return SunadaResult(ok=True, order=order, degree=degree)


@dataclass(frozen=True)
class OrbifoldSignature:
    """Reflection-disk signature *p1..pk, or a k-fold cross-surface."""

    corner_orders: tuple[int, ...] = ()
    crosscaps: int | None = None

    @classmethod
    def parse(cls, text: str) -> "OrbifoldSignature":
        text = text.strip()
        if text.startswith("*"):
            digits = text[1:]
            if not digits.isdigit():
                raise InvalidSignature(f"bad reflection signature {text!r}")
            orders = tuple(int(ch) for ch in digits)
            if not orders or any(p < 2 for p in orders):
                raise InvalidSignature(f"corner orders must be >= 2: {text!r}")
            return cls(corner_orders=orders)
        if text.startswith("x^"):
            k = int(text[2:])
            if k < 1:
                raise InvalidSignature("crosscap count must be >= 1")
            return cls(crosscaps=k)
        raise InvalidSignature(f"unrecognized signature {text!r}")

    def __str__(self) -> str:
        if self.crosscaps is not None:
            return f"x^{self.crosscaps}"
        return "*" + "".join(str(p) for p in self.corner_orders)

    def canonical(self) -> tuple[int, ...]:
        """Least rotation of the corner cycle, over both reading directions."""
        if self.crosscaps is not None:
            raise InvalidSignature("cross-surfaces have no corner cycle")
        best = None
        for seq in (self.corner_orders, self.corner_orders[::-1]):
            for s in range(len(seq)):
                rot = seq[s:] + seq[:s]
                if best is None or rot < best:
                    best = rot
        return best

    def equivalent(self, other: "OrbifoldSignature") -> bool:
        if self.crosscaps is not None or other.crosscaps is not None:
            return self.crosscaps == other.crosscaps
        return self.canonical() == other.canonical()


def orbifold_euler_characteristic(sig: OrbifoldSignature | str) -> Fraction:
    """Exact orbifold Euler characteristic.

    Reflection disk *p1..pk: 1 - k/2 + sum(1/(2 pi)).  Cross-surface with k
    crosscaps: 2 - k.
    """
    if isinstance(sig, str):
        sig = OrbifoldSignature.parse(sig)
    if sig.crosscaps is not None:
        return Fraction(2 - sig.crosscaps)
    if not sig.corner_orders:
        raise InvalidSignature("empty signature")
    k = len(sig.corner_orders)
    return 1 - Fraction(k, 2) + sum(Fraction(1, 2 * p) for p in sig.corner_orders)


def check_crosscap_identity(spec: ExampleSpec, cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    """Exact bookkeeping tying group order, signatures and crosscap count.

    Requires |G| * chi(ambient) == 2 - crosscaps and
    degree * chi(ambient) == chi(left quotient) == chi(right quotient).
    """
    group = generate_group(spec.left_gens, cap=cap)
    chi_g0 = orbifold_euler_characteristic(spec.signature_G0)
    chi_a = orbifold_euler_characteristic(spec.signature_A0)
    chi_b = orbifold_euler_characteristic(spec.signature_B0)
    if group.order * chi_g0 != 2 - spec.crosscap_count:
        return False
    return spec.degree * chi_g0 == chi_a == chi_b


def kernel_is_nonorientable(gens, cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    """Whether the kernel surface group contains orientation-reversing words.

    Words of even length in reflection generators are the orientation
    preserving motions; they form the whole group exactly when no parity
    character exists, which is when the quotient surface is non-orientable.
    Any even word is a product of the pairwise generator products, so those
    products generate the even-word subgroup.
    """
    gens = tuple(gens)
    whole = generate_group(gens, cap=cap)
    pair_products = [gi * gj for gi in gens for gj in gens]
    even = generate_group(pair_products, cap=cap)
    return even.order == whole.order


def burnside_orbit_count(group: PermGroup) -> Fraction:
    """Number of orbits via the average fixed-point count."""
    total = sum(_fixed_count(p) for p in group.elements)
    return Fraction(total, group.order)


@dataclass
class PairCertificate:
    """JSON-friendly verification summary for one catalog pair."""

    pair: str
    order: int
    sunada: bool
    chi_checks: bool
    nonorientable: bool
    witness: str | None = None

    def as_dict(self) -> dict:
        out = {
            "pair": self.pair,
            "order": self.order,
            "sunada": self.sunada,
            "chi_checks": self.chi_checks,
            "nonorientable": self.nonorientable,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def certify_pair(spec: ExampleSpec, cap: int = DEFAULT_ELEMENT_CAP) -> PairCertificate:
    """Run the group-theoretic checks for one catalog entry."""
    res = sunada_check(spec.left_gens, spec.right_gens, cap=cap)
    return PairCertificate(
        pair=spec.id,
        order=res.order,
        sunada=res.ok,
        chi_checks=check_crosscap_identity(spec, cap=cap),
        nonorientable=kernel_is_nonorientable(spec.left_gens, cap=cap)
        and kernel_is_nonorientable(spec.right_gens, cap=cap),
        witness=res.witness,
    )
