"""Exact data model for pure Hodge types over totally real and CM field profiles.

A field profile records only the combinatorics of the archimedean embeddings:
an ordered list of labels together with the conjugation involution.  A Hodge
family attaches to every embedding a pure Hodge type (a multiset of ``(p, q)``
pairs of common weight) subject to the conjugation symmetry, plus an optional
diagonal sign at real places recording the eigenvalue of the infinite
Frobenius on the ``(w/2, w/2)`` component.  Everything is exact integer data;
no vector spaces or period numbers are ever materialised.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field


class HodgeDataError(ValueError):
    """Base class for structural errors in Hodge-side data."""


class PurityViolation(HodgeDataError):
    pass


class ConjugationAsymmetry(HodgeDataError):
    pass


class DiagSignMissing(HodgeDataError):
    pass


class DiagSignInconsistent(HodgeDataError):
    pass


class ComplexDiagonalPresent(HodgeDataError):
    pass


class InvalidPlace(HodgeDataError):
    pass


class ProfileMismatch(HodgeDataError):
    pass


@dataclass(frozen=True)
class FieldProfile:
    """Archimedean embedding combinatorics of a totally real or CM field.

    Embeddings are labelled ``tau0, tau1, ...``.  For a CM profile the
    conjugation pairs ``tau(2i) <-> tau(2i+1)`` and the even-indexed label is
    the designated representative of its complex place.  For a totally real
    profile conjugation is the identity and every embedding is its own place.
    """

    kind: str  # "real" | "cm"
    degree: int

    def __post_init__(self):
        if self.kind not in ("real", "cm"):
            raise ProfileMismatch(f"unknown profile kind {self.kind!r}")
        if self.degree < 1:
            raise ProfileMismatch("degree must be positive")
        if self.kind == "cm" and self.degree % 2:
            raise ProfileMismatch("CM profile needs even degree")

    @property
    def embeddings(self) -> tuple[str, ...]:
        return tuple(f"tau{i}" for i in range(self.degree))

    def conj(self, label: str) -> str:
        i = self._index(label)
        if self.kind == "real":
            return label
        return f"tau{i + 1 if i % 2 == 0 else i - 1}"

    def places(self) -> tuple[str, ...]:
        if self.kind == "real":
            return self.embeddings
        return tuple(f"tau{i}" for i in range(0, self.degree, 2))

    def place_of(self, label: str) -> str:
        i = self._index(label)
        if self.kind == "real":
            return label
        return f"tau{i - i % 2}"

    def is_complex_place(self, place: str) -> bool:
        self._index(place)
        return self.kind == "cm"

    def embeddings_of_place(self, place: str) -> tuple[str, ...]:
        if place not in self.places():
            raise InvalidPlace(f"{place!r} is not a place of this profile")
        if self.kind == "real":
            return (place,)
        return (place, self.conj(place))

    def _index(self, label: str) -> int:
        try:
            i = int(label.removeprefix("tau"))
        except ValueError:
            raise InvalidPlace(f"bad embedding label {label!r}") from None
        if not 0 <= i < self.degree:
            raise InvalidPlace(f"embedding {label!r} out of range")
        return i


@dataclass(frozen=True)
class HodgeType:
    """Multiset of ``(p, q)`` pairs of a single weight, sorted by ``p``."""

    weight: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(tuple(p) for p in self.pairs)))
        if not self.pairs:
            raise HodgeDataError("a Hodge type needs at least one pair")
        for p, q in self.pairs:
            if p + q != self.weight:
                raise PurityViolation(f"pair ({p},{q}) has p+q != {self.weight}")

    @property
    def rank(self) -> int:
        return len(self.pairs)

    @property
    def p_values(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    @property
    def q_values(self) -> tuple[int, ...]:
        return tuple(q for _, q in self.pairs)

    def is_regular(self) -> bool:
        return len(set(self.p_values)) == self.rank


def conjugate(ht: HodgeType) -> HodgeType:
    """Swap ``(p, q) -> (q, p)`` and re-sort; an involution."""
    return HodgeType(ht.weight, tuple((q, p) for p, q in ht.pairs))


def tensor(ha: HodgeType, hb: HodgeType) -> HodgeType:
    """Componentwise-sum multiset; weight adds, cardinality multiplies."""
    return HodgeType(
        ha.weight + hb.weight,
        tuple((pa + pb, qa + qb) for (pa, qa), (pb, qb) in itertools.product(ha.pairs, hb.pairs)),
    )


def tate_twist(ht: HodgeType, m: int) -> HodgeType:
    """Shift every pair by ``(-m, -m)``; weight drops by ``2m``."""
    return HodgeType(ht.weight - 2 * m, tuple((p - m, q - m) for p, q in ht.pairs))


@dataclass(frozen=True)
class FiltrationShape:
    """Jumps and multiplicities of a Hodge filtration at one place."""

    jumps: tuple[int, ...]
    mults: tuple[int, ...]

    def __post_init__(self):
        if len(self.jumps) != len(self.mults):
            raise HodgeDataError("jumps and mults must have equal length")
        if any(self.jumps[i] >= self.jumps[i + 1] for i in range(len(self.jumps) - 1)):
            raise HodgeDataError("jumps must be strictly increasing")
        if any(m < 1 for m in self.mults):
            raise HodgeDataError("multiplicities must be positive")

    @property
    def t(self) -> int:
        return len(self.jumps)

    @property
    def total(self) -> int:
        return sum(self.mults)

    def row_weights(self) -> tuple[int, ...]:
        """Each jump repeated by its multiplicity (weights of period-matrix rows)."""
        out: list[int] = []
        for j, m in zip(self.jumps, self.mults):
            out.extend([j] * m)
        return tuple(out)


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()


@dataclass(frozen=True)
class HodgeFamily:
    """A rank-``d`` weight-``w`` Hodge family over a field profile.

    ``types`` maps every embedding label to its Hodge type; ``diag_sign`` maps
    a real place to the sign (+1/-1) of the infinite Frobenius on the diagonal
    ``(w/2, w/2)`` component, and omits places without a diagonal.
    """

    profile: FieldProfile
    rank: int
    weight: int
    types: dict[str, HodgeType] = field(default_factory=dict)
    diag_sign: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "types", dict(self.types))
        object.__setattr__(self, "diag_sign", dict(self.diag_sign))

    def type_at(self, label: str) -> HodgeType:
        self.profile._index(label)
        return self.types[label]

    def diagonal_mult(self, label: str) -> int:
        if self.weight % 2:
            return 0
        half = self.weight // 2
        return sum(1 for p, q in self.types[label].pairs if p == q == half)


def validate_family(f: HodgeFamily) -> ValidationReport:
    """Check every structural invariant; report all violations found."""
    bad: list[Violation] = []
    for tau in f.profile.embeddings:
        ht = f.types.get(tau)
        if ht is None:
            bad.append(Violation("MissingType", tau, "no Hodge type at embedding"))
            continue
        if ht.weight != f.weight:
            bad.append(Violation("PurityViolation", tau, f"type weight {ht.weight} != {f.weight}"))
        for p, q in ht.pairs:
            if p + q != f.weight:
                bad.append(Violation("PurityViolation", tau, f"pair ({p},{q}) not of weight {f.weight}"))
        if ht.rank != f.rank:
            bad.append(Violation("RankMismatch", tau, f"type rank {ht.rank} != {f.rank}"))
    if bad:
        return ValidationReport(False, tuple(bad))

    for tau in f.profile.embeddings:
        rho_tau = f.profile.conj(tau)
        if f.types[rho_tau] != conjugate(f.types[tau]):
            bad.append(Violation("ConjugationAsymmetry", tau, f"types[{rho_tau}] != conjugate(types[{tau}])"))

    signs = set()
    for place in f.profile.places():
        if f.profile.is_complex_place(place):
            for tau in f.profile.embeddings_of_place(place):
                if f.diagonal_mult(tau):
                    bad.append(Violation("ComplexDiagonalPresent", tau, "diagonal (w/2,w/2) at complex place"))
            if place in f.diag_sign:
                bad.append(Violation("DiagSignInconsistent", place, "diag_sign given at complex place"))
            continue
        mult = f.diagonal_mult(place)
        sign = f.diag_sign.get(place)
        if mult and sign is None:
            bad.append(Violation("DiagSignMissing", place, "diagonal present but no sign"))
        if not mult and sign is not None:
            bad.append(Violation("DiagSignInconsistent", place, "sign given but no diagonal"))
        if sign is not None:
            if sign not in (1, -1):
                bad.append(Violation("DiagSignInconsistent", place, f"sign {sign!r} not in {{-1,+1}}"))
            signs.add(sign)
    if len(signs) > 1:
        bad.append(Violation("DiagSignInconsistent", "*", "real-place diagonal signs differ"))
    return ValidationReport(not bad, tuple(bad))


def _place_p_multiset(f: HodgeFamily, place: str) -> list[int]:
    """p-values of the direct-sum module at a place (both embeddings if complex)."""
    vals: list[int] = []
    for tau in f.profile.embeddings_of_place(place):
        vals.extend(f.types[tau].p_values)
    return sorted(vals)


def filtration_shape(f: HodgeFamily, place: str) -> FiltrationShape:
    """Hodge-filtration jumps at a place.

    At a real place these are the distinct p-values with multiplicities; at a
    complex place the filtration lives on the direct sum over the two
    conjugate embeddings, so the jump multiset is the union of both p-value
    lists and the total is ``2d``.
    """
    vals = _place_p_multiset(f, place)
    jumps = sorted(set(vals))
    return FiltrationShape(tuple(jumps), tuple(vals.count(j) for j in jumps))


def eigen_dims(f: HodgeFamily, place: str) -> tuple[int, int]:
    """Dimensions of the +/- eigenspaces of the infinite Frobenius at a place."""
    if f.profile.is_complex_place(place):
        return (f.rank, f.rank)
    ht = f.types[place]
    diag = f.diagonal_mult(place)
    off = (ht.rank - diag) // 2
    if diag == 0:
        return (off, off)
    sign = f.diag_sign.get(place)
    if sign is None:
        raise DiagSignMissing(f"diagonal present at {place} but diag_sign not set")
    if sign == 1:
        return (off + diag, off)
    return (off, off + diag)


def restrict_scalars(f: HodgeFamily, target: str) -> HodgeFamily:
    """Grothendieck restriction of scalars on the Hodge side.

    ``target="F+"`` (CM profiles only) takes the disjoint union of each
    conjugate pair of types, producing a rank-``2d`` family over the totally
    real profile whose embeddings are the places of ``f``.  ``target="Q"``
    unions every embedding into a single rank ``d*degree`` type over the
    degree-1 real profile.
    """
    if target in ("F+", "fplus"):
        if f.profile.kind != "cm":
            raise ProfileMismatch("restriction to F+ needs a CM profile")
        prof = FieldProfile("real", f.profile.degree // 2)
        types = {}
        for i, place in enumerate(f.profile.places()):
            pairs: list[tuple[int, int]] = []
            for tau in f.profile.embeddings_of_place(place):
                pairs.extend(f.types[tau].pairs)
            types[f"tau{i}"] = HodgeType(f.weight, tuple(pairs))
        return HodgeFamily(prof, 2 * f.rank, f.weight, types, {})
    if target == "Q":
        prof = FieldProfile("real", 1)
        pairs = []
        for tau in f.profile.embeddings:
            pairs.extend(f.types[tau].pairs)
        fam = HodgeFamily(prof, f.rank * f.profile.degree, f.weight, {"tau0": HodgeType(f.weight, tuple(pairs))}, {})
        if fam.diagonal_mult("tau0"):
            signs = set(f.diag_sign.values())
            if len(signs) != 1:
                raise DiagSignMissing("restriction to Q has a diagonal but source carries no unique sign")
            fam.diag_sign["tau0"] = signs.pop()
        return fam
    raise ProfileMismatch(f"unknown restriction target {target!r}")


def family_to_json(f: HodgeFamily) -> dict:
    out = {
        "profile": {"kind": f.profile.kind, "degree": f.profile.degree},
        "rank": f.rank,
        "weight": f.weight,
        "types": {tau: [list(p) for p in f.types[tau].pairs] for tau in sorted(f.types)},
        "diag_sign": {k: f.diag_sign[k] for k in sorted(f.diag_sign)},
    }
    return out


def family_from_json(data: dict) -> HodgeFamily:
    prof = FieldProfile(data["profile"]["kind"], data["profile"]["degree"])
    types = {tau: HodgeType(data["weight"], tuple(tuple(p) for p in pairs)) for tau, pairs in data["types"].items()}
    return HodgeFamily(prof, data["rank"], data["weight"], types, {k: int(v) for k, v in data.get("diag_sign", {}).items()})
