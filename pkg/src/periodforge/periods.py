"""Formal period calculus: monomials in period atoms modulo rewrite relations.

A period expression is an integer-exponent vector over formal atoms (the
free abelian group they generate); equality of expressions models equality
of periods up to nonzero algebraic factors.  Motive identifiers are opaque
strings; ``rho:`` and ``res:`` prefixes mark the conjugation twist and the
restriction of scalars to Q, both purely syntactic.

Sign tags are strings: ``+``/``-`` for concrete signs, or ``+e3``/``-e3``
for a sign carried symbolically (the signature attached to a rank-3
representation, say).  Flipping negates the leading character only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .hodge import HodgeFamily


class PeriodError(ValueError):
    pass


class MissingContext(PeriodError):
    pass


class TableMismatch(PeriodError):
    """Counting-formula factorization disagrees with the closed-form table."""


def flip_sign(sign: str) -> str:
    if sign.startswith("+"):
        return "-" + sign[1:]
    if sign.startswith("-"):
        return "+" + sign[1:]
    raise PeriodError(f"malformed sign tag {sign!r}")


def rho_twist(mid: str) -> str:
    """Conjugation twist on motive ids; an involution."""
    if mid.startswith("res:"):
        return "res:" + rho_twist(mid[4:])
    return mid[4:] if mid.startswith("rho:") else "rho:" + mid


@dataclass(frozen=True, order=True)
class PeriodAtom:
    kind: str
    mid: str = ""
    place: str = ""
    sign: str = ""
    beta: int = 0

    def text(self) -> str:
        if self.kind == "twopii":
            return "2pii"
        if self.kind == "delta":
            return f"delta[{self.mid}{',' + self.place if self.place else ''}]"
        if self.kind == "cpm":
            return f"cp[{self.mid},{self.place},{self.sign}]"
        if self.kind == "cbeta":
            return f"c{self.beta}[{self.mid},{self.place}]"
        if self.kind == "deligne_c":
            return f"C[{self.mid},{self.sign}]"
        if self.kind == "whittaker":
            return f"p[{self.mid},{self.sign}]"
        raise PeriodError(f"unknown atom kind {self.kind!r}")


TWO_PI_I = PeriodAtom("twopii")


def delta(mid: str, place: str = "") -> PeriodAtom:
    return PeriodAtom("delta", mid, place)


def cpm(mid: str, place: str, sign: str) -> PeriodAtom:
    return PeriodAtom("cpm", mid, place, sign)


def cbeta(mid: str, place: str, beta: int) -> PeriodAtom:
    if beta < 1:
        raise PeriodError("beta must be >= 1; beta = 0 is the delta atom")
    return PeriodAtom("cbeta", mid, place, beta=beta)


def deligne_c(mid: str, sign: str) -> PeriodAtom:
    return PeriodAtom("deligne_c", mid, sign=sign)


def whittaker(rep_id: str, eps: str) -> PeriodAtom:
    return PeriodAtom("whittaker", rep_id, sign=eps)


@dataclass(frozen=True)
class PeriodExpression:
    exps: tuple[tuple[PeriodAtom, int], ...] = ()

    def __post_init__(self):
        merged: dict[PeriodAtom, int] = {}
        for atom, e in self.exps:
            merged[atom] = merged.get(atom, 0) + e
        object.__setattr__(self, "exps", tuple(sorted((a, e) for a, e in merged.items() if e)))

    @staticmethod
    def one() -> PeriodExpression:
        return PeriodExpression()

    @staticmethod
    def of(atom: PeriodAtom, e: int = 1) -> PeriodExpression:
        return PeriodExpression(((atom, e),))

    def as_dict(self) -> dict[PeriodAtom, int]:
        return dict(self.exps)

    def exponent(self, atom: PeriodAtom) -> int:
        return dict(self.exps).get(atom, 0)

    def atoms(self) -> tuple[PeriodAtom, ...]:
        return tuple(a for a, _ in self.exps)

    def is_one(self) -> bool:
        return not self.exps

    def __mul__(self, other: PeriodExpression) -> PeriodExpression:
        return PeriodExpression(self.exps + other.exps)

    def __pow__(self, n: int) -> PeriodExpression:
        return PeriodExpression(tuple((a, e * n) for a, e in self.exps))

    def __truediv__(self, other: PeriodExpression) -> PeriodExpression:
        return self * other ** -1

    def text(self) -> str:
        if not self.exps:
            return "1"
        return " * ".join(f"{a.text()}^{e}" for a, e in sorted(self.exps, key=lambda ae: ae[0].text()))


def mul(*exprs: PeriodExpression) -> PeriodExpression:
    out = PeriodExpression.one()
    for e in exprs:
        out = out * e
    return out


def div(a: PeriodExpression, b: PeriodExpression) -> PeriodExpression:
    return a / b


def pow_(a: PeriodExpression, n: int) -> PeriodExpression:
    return a ** n


def product(atoms: Iterable[tuple[PeriodAtom, int]]) -> PeriodExpression:
    return PeriodExpression(tuple(atoms))


def _all_p_sum(f: HodgeFamily) -> int:
    return sum(p for tau in f.profile.embeddings for p in f.types[tau].p_values)


def simplify(expr: PeriodExpression, context: Mapping[str, HodgeFamily] | None = None, strict: bool = False) -> PeriodExpression:
    """Rewrite to canonical form.

    Rules: conjugation-twisted ids collapse to the untwisted id; ``c^-`` at a
    complex place collapses to ``c^+``; a Deligne atom of a restricted motive
    expands to the product of its per-place atoms; the determinant period of
    a restricted motive is a power of ``2*pi*i`` given by the negated p-sum.
    Context supplies the Hodge family for each base motive id; rules whose
    context is missing are skipped (or raise, when ``strict``).
    """
    ctx = dict(context or {})
    changed = True
    current = expr
    while changed:
        changed = False
        parts: list[tuple[PeriodAtom, int]] = []
        for atom, e in current.exps:
            base = atom.mid[4:] if atom.mid.startswith("res:") else atom.mid
            if "rho:" in atom.mid:
                atom = PeriodAtom(atom.kind, atom.mid.replace("rho:", ""), atom.place, atom.sign, atom.beta)
                changed = True
                base = atom.mid[4:] if atom.mid.startswith("res:") else atom.mid
            fam = ctx.get(base)
            if atom.kind == "cpm" and not atom.sign.startswith("+"):
                if fam is None:
                    if strict:
                        raise MissingContext(f"no family for motive {base!r}")
                elif fam.profile.is_complex_place(atom.place):
                    parts.append((cpm(atom.mid, atom.place, "+" + atom.sign[1:]), e))
                    changed = True
                    continue
            if atom.kind == "deligne_c" and atom.mid.startswith("res:"):
                if fam is None:
                    if strict:
                        raise MissingContext(f"no family for motive {base!r}")
                else:
                    for place in fam.profile.places():
                        parts.append((cpm(base, place, atom.sign), e))
                    changed = True
                    continue
            if atom.kind == "delta" and atom.mid.startswith("res:") and not atom.place:
                if fam is None:
                    if strict:
                        raise MissingContext(f"no family for motive {base!r}")
                else:
                    parts.append((TWO_PI_I, -e * _all_p_sum(fam)))
                    changed = True
                    continue
            parts.append((atom, e))
        current = PeriodExpression(tuple(parts))
    return current


def lambda_of(f: HodgeFamily) -> int:
    """Sum over embeddings of sum_i p_i * (d - i), p-values ascending."""
    total = 0
    for tau in f.profile.embeddings:
        ps = f.types[tau].p_values
        total += sum(p * (f.rank - i) for i, p in enumerate(ps, start=1))
    return total


def c_tilde(f: HodgeFamily, mid: str) -> PeriodExpression:
    """Product over embeddings and beta <= ceil(d/2 - 1) of the c_beta atoms.

    Atoms are stored per place, so a complex place carries exponent 2 (one
    per embedding of the place).
    """
    bmax = -((-f.rank) // 2) - 1  # ceil(d/2) - 1 == ceil(d/2 - 1)
    parts = []
    for tau in f.profile.embeddings:
        place = f.profile.place_of(tau)
        for beta in range(1, bmax + 1):
            parts.append((cbeta(mid, place, beta), 1))
    return PeriodExpression(tuple(parts))


def _closed_form_real(dn: int, sign: str, dm_cmp: int, dn_cmp: int, place: str, mid_m: str, mid_n: str) -> PeriodExpression:
    parts: list[tuple[PeriodAtom, int]] = []
    if dn % 2 == 0:
        for beta in range(1, dn // 2 + 1):
            parts.append((cbeta(mid_m, place, beta), 1))
        for beta in range(1, dn // 2):
            parts.append((cbeta(mid_n, place, beta), 1))
        parts.append((delta(mid_n, place), 1))
        s = sign if dm_cmp > 0 else flip_sign(sign)
        parts.append((cpm(mid_n, place, s), 1))
    else:
        for beta in range(1, (dn - 1) // 2 + 1):
            parts.append((cbeta(mid_m, place, beta), 1))
            parts.append((cbeta(mid_n, place, beta), 1))
        parts.append((delta(mid_n, place), 1))
        s = sign if dn_cmp > 0 else flip_sign(sign)
        parts.append((cpm(mid_m, place, s), 1))
    return PeriodExpression(tuple(parts))


def _closed_form_complex(dn: int, place: str, mid_m: str, mid_n: str) -> PeriodExpression:
    parts: list[tuple[PeriodAtom, int]] = []
    if dn % 2 == 0:
        for beta in range(1, dn // 2 + 1):
            parts.append((cbeta(mid_m, place, beta), 2))
        for beta in range(1, dn // 2):
            parts.append((cbeta(mid_n, place, beta), 2))
        parts.append((delta(mid_n, place), 2))
        parts.append((cpm(mid_n, place, "+"), 1))
        parts.append((cpm(mid_n, place, "-"), 1))
    else:
        for beta in range(1, (dn - 1) // 2 + 1):
            parts.append((cbeta(mid_m, place, beta), 2))
            parts.append((cbeta(mid_n, place, beta), 2))
        parts.append((delta(mid_n, place), 2))
        parts.append((cpm(mid_m, place, "+"), 1))
        parts.append((cpm(mid_m, place, "-"), 1))
    return PeriodExpression(tuple(parts))


def _decomposition_to_atoms(dec, mid: str, place: str) -> PeriodExpression:
    parts: list[tuple[PeriodAtom, int]] = []
    if dec.m_det:
        parts.append((delta(mid, place), dec.m_det))
    if dec.m_plus:
        parts.append((cpm(mid, place, "+"), dec.m_plus))
    if dec.m_minus:
        parts.append((cpm(mid, place, "-"), dec.m_minus))
    for b, e in dec.m_beta.items():
        parts.append((cbeta(mid, place, b), e))
    return PeriodExpression(tuple(parts))


def factorize_tensor_cpm(
    fm: HodgeFamily,
    fn: HodgeFamily,
    place: str,
    sign: str,
    mid_m: str = "M",
    mid_n: str = "N",
) -> PeriodExpression:
    """Factor the tensor Deligne period at one place into fundamental-period atoms.

    Runs the counting-formula pipeline (admissible types of the two factor
    polynomials, monomial decomposition, basis-to-atom map) and checks the
    result against the closed-form table for the case at hand; a mismatch is
    raised as ``TableMismatch`` rather than silently accepted.
    """
    from . import interlace as itl
    from .admissible import decompose, tensor_factor_types
    from .hodge import eigen_dims, filtration_shape

    itl._check_pair(fm, fn)
    if not (itl.is_place_regular(fm, place) and itl.is_place_regular(fn, place)):
        raise itl.NotRegular(f"direct-sum module not regular at {place}")
    q = itl.q_value(fm, fn, place)
    shape_m = filtration_shape(fm, place)
    shape_n = filtration_shape(fn, place)
    em = eigen_dims(fm, place)
    en = eigen_dims(fn, place)
    phi_p, phi_m, psi_p, psi_m = tensor_factor_types(shape_m, em, shape_n, en, q)
    phi, psi = (phi_p, psi_p) if sign.startswith("+") else (phi_m, psi_m)
    got = _decomposition_to_atoms(decompose(phi), mid_m, place) * _decomposition_to_atoms(decompose(psi), mid_n, place)
    dn = fn.rank
    if fm.profile.is_complex_place(place):
        want = _closed_form_complex(dn, place, mid_m, mid_n)
    else:
        dm_cmp = em[0] - em[1]
        dn_cmp = en[0] - en[1]
        want = _closed_form_real(dn, "+" if sign.startswith("+") else "-", dm_cmp, dn_cmp, place, mid_m, mid_n)
    ctx = {mid_m: fm, mid_n: fn}
    if simplify(got, ctx) != simplify(want, ctx):
        raise TableMismatch(
            f"counting pipeline gives {simplify(got, ctx).text()} but the closed form is {simplify(want, ctx).text()} at {place}"
        )
    return simplify(got, ctx)
