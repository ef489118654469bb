"""Interlace conditions, the q-threshold, and the tensor partition lemma.

All operations take two Hodge families of consecutive ranks (``rank(M) =
rank(N) + 1``) that are regular in the strong sense: at real places the
p-values are distinct, at complex places the p-values of the two conjugate
embeddings are pairwise distinct as a combined multiset.
"""

from __future__ import annotations

from dataclasses import dataclass

from .hodge import HodgeFamily, InvalidPlace, eigen_dims, filtration_shape


class InterlaceError(ValueError):
    pass


class RankMismatch(InterlaceError):
    pass


class NotRegular(InterlaceError):
    pass


class PreconditionFailed(InterlaceError):
    pass


def _check_pair(fm: HodgeFamily, fn: HodgeFamily) -> None:
    if fm.profile != fn.profile:
        raise RankMismatch("families live over different profiles")
    if fm.rank != fn.rank + 1:
        raise RankMismatch(f"need rank(M) = rank(N) + 1, got {fm.rank} and {fn.rank}")
    for tau in fm.profile.embeddings:
        if not fm.types[tau].is_regular() or not fn.types[tau].is_regular():
            raise NotRegular(f"non-regular Hodge type at {tau}")


def is_place_regular(f: HodgeFamily, place: str) -> bool:
    """Regularity of the direct-sum module at a place (all multiplicities 1)."""
    return all(m == 1 for m in filtration_shape(f, place).mults)


def _p_chain(pm: tuple[int, ...], pn: tuple[int, ...], q_shift: int) -> bool:
    """-p^M_{t+2-i} < p^N_i + Q <= -p^M_{t+1-i} for i = 1..t."""
    t = len(pn)
    for i in range(1, t + 1):
        if not (-pm[t + 1 - i] < pn[i - 1] + q_shift <= -pm[t - i]):
            return False
    return True


def _q_chain(qm: tuple[int, ...], qn: tuple[int, ...], q_shift: int) -> bool:
    """-q^M_i < q^N_{t+1-i} + Q <= -q^M_{i+1} for i = 1..t (q's ordered by p)."""
    t = len(qn)
    for i in range(1, t + 1):
        if not (-qm[i - 1] < qn[t - i] + q_shift <= -qm[i]):
            return False
    return True


def check_interlace(fm: HodgeFamily, fn: HodgeFamily, q_shift: int) -> bool:
    """Plain interlace at every embedding for the given integer ``Q``."""
    _check_pair(fm, fn)
    for tau in fm.profile.embeddings:
        tm, tn = fm.types[tau], fn.types[tau]
        if not _p_chain(tm.p_values, tn.p_values, q_shift):
            return False
        if not _q_chain(tm.q_values, tn.q_values, q_shift):
            return False
    return True


def check_strong_interlace(fm: HodgeFamily, fn: HodgeFamily, q_shift: int) -> bool:
    """Strong interlace: the p-chain for every conjugate-embedding combination.

    At real places this reduces to the plain condition; at complex places it
    quantifies both families' embeddings over the conjugate pair.
    """
    _check_pair(fm, fn)
    for place in fm.profile.places():
        for tau_m in fm.profile.embeddings_of_place(place):
            for tau_n in fn.profile.embeddings_of_place(place):
                if not _p_chain(fm.types[tau_m].p_values, fn.types[tau_n].p_values, q_shift):
                    return False
    return True


def strong_interlace_minmax(fm: HodgeFamily, fn: HodgeFamily, q_shift: int) -> bool:
    """The min/max form of the strong interlace inequalities, checked verbatim."""
    _check_pair(fm, fn)
    for tau in fm.profile.embeddings:
        pm, qm = fm.types[tau].p_values, fm.types[tau].q_values
        pn, qn = fn.types[tau].p_values, fn.types[tau].q_values
        t = len(pn)
        for i in range(1, t + 1):
            lo = -min(pm[t + 1 - i], qm[i - 1])
            hi = -max(pm[t - i], qm[i])
            if not (lo < min(pn[i - 1], qn[t - i]) + q_shift and max(pn[i - 1], qn[t - i]) + q_shift <= hi):
                return False
    return True


def _q_bound(fm: HodgeFamily, fn: HodgeFamily) -> int:
    vals = [abs(p) for tau in fm.profile.embeddings for p in fm.types[tau].p_values]
    vals += [abs(p) for tau in fn.profile.embeddings for p in fn.types[tau].p_values]
    return 2 * (max(vals) + 1)


def interlace_q_range(fm: HodgeFamily, fn: HodgeFamily, strong: bool = False) -> range:
    """All Q for which the (strong) interlace condition holds; a contiguous range."""
    check = check_strong_interlace if strong else check_interlace
    bound = _q_bound(fm, fn)
    good = [q for q in range(-bound, bound + 1) if check(fm, fn, q)]
    if not good:
        return range(0)
    lo, hi = good[0], good[-1]
    if len(good) != hi - lo + 1:
        raise InterlaceError("interlace Q-set is not contiguous")
    return range(lo, hi + 1)


@dataclass(frozen=True)
class InterlaceReport:
    holds: bool
    q_range: range
    per_place: dict[str, bool]


def _place_holds(fm: HodgeFamily, fn: HodgeFamily, place: str, q_shift: int, strong: bool) -> bool:
    ok = True
    for tau in fm.profile.embeddings_of_place(place):
        if strong:
            for tau_n in fn.profile.embeddings_of_place(place):
                ok = ok and _p_chain(fm.types[tau].p_values, fn.types[tau_n].p_values, q_shift)
        else:
            ok = ok and _p_chain(fm.types[tau].p_values, fn.types[tau].p_values, q_shift)
            ok = ok and _q_chain(fm.types[tau].q_values, fn.types[tau].q_values, q_shift)
    return ok


def interlace_report(fm: HodgeFamily, fn: HodgeFamily, strong: bool = False) -> InterlaceReport:
    rng = interlace_q_range(fm, fn, strong)
    bound = _q_bound(fm, fn)
    per_place = {
        place: any(_place_holds(fm, fn, place, q, strong) for q in range(-bound, bound + 1))
        for place in fm.profile.places()
    }
    return InterlaceReport(len(rng) > 0, rng, per_place)


def q_value(fm: HodgeFamily, fn: HodgeFamily, place: str) -> int:
    """min over i and conjugate embeddings of p^M_{t+2-i} + p^N_i at the place."""
    if len(interlace_q_range(fm, fn, strong=True)) == 0:
        raise PreconditionFailed("strong interlace holds for no Q")
    if place not in fm.profile.places():
        raise InvalidPlace(f"{place!r} is not a place")
    t = fn.rank
    cands = []
    for tau_m in fm.profile.embeddings_of_place(place):
        for tau_n in fn.profile.embeddings_of_place(place):
            pm = fm.types[tau_m].p_values
            pn = fn.types[tau_n].p_values
            cands.extend(pm[t + 1 - i] + pn[i - 1] for i in range(1, t + 1))
    return min(cands)


def tensor_hodge_multiset(fm: HodgeFamily, fn: HodgeFamily, place: str) -> list[tuple[int, int]]:
    """Hodge pairs of the tensor of the direct-sum modules at a place."""
    pairs = []
    for tau_m in fm.profile.embeddings_of_place(place):
        for tau_n in fn.profile.embeddings_of_place(place):
            for pm, qm in fm.types[tau_m].pairs:
                for pn, qn in fn.types[tau_n].pairs:
                    pairs.append((pm + pn, qm + qn))
    return sorted(pairs)


def partition_tensor(fm: HodgeFamily, fn: HodgeFamily, place: str) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Split the tensor Hodge multiset by first coordinate below/at-or-above q."""
    _check_pair(fm, fn)
    if not (is_place_regular(fm, place) and is_place_regular(fn, place)):
        raise NotRegular(f"direct-sum module not regular at {place}")
    q = q_value(fm, fn, place)
    pairs = tensor_hodge_multiset(fm, fn, place)
    below = [pq for pq in pairs if pq[0] < q]
    atabove = [pq for pq in pairs if pq[0] >= q]
    return below, atabove


@dataclass(frozen=True)
class FilResult:
    holds: bool
    q: int | None
    reason: str = ""


def fil_condition(fm: HodgeFamily, fn: HodgeFamily, place: str) -> FilResult:
    """Whether the tensor involution is single-signed on the diagonal component.

    Under the strong interlace condition the diagonal is empty and the
    threshold is the q-value.  Otherwise the diagonal is inspected directly:
    at complex places any diagonal pair is swapped by the involution (mixed
    signs, so the condition fails); at real places only diagonal-times-
    diagonal contributions are fixed, with sign the product of the two
    families' diagonal signs.
    """
    try:
        if len(interlace_q_range(fm, fn, strong=True)) > 0:
            return FilResult(True, q_value(fm, fn, place))
    except (RankMismatch, NotRegular):
        pass
    w_tensor = fm.weight + fn.weight
    pairs = tensor_hodge_multiset(fm, fn, place)
    diag = [pq for pq in pairs if pq[0] == pq[1]]
    if not diag:
        return FilResult(True, _threshold(pairs, fm, fn, place), "diagonal trivial")
    if fm.profile.is_complex_place(place):
        return FilResult(False, None, "diagonal swapped at complex place")
    half = w_tensor // 2 if w_tensor % 2 == 0 else None
    signs = set()
    mixed = 0
    for pm, qm in fm.types[place].pairs:
        for pn, qn in fn.types[place].pairs:
            if pm + pn != qm + qn:
                continue
            if pm == qm and pn == qn:
                sm = fm.diag_sign.get(place)
                sn = fn.diag_sign.get(place)
                if sm is None or sn is None:
                    return FilResult(False, None, "diagonal sign data missing")
                signs.add(sm * sn)
            else:
                mixed += 1
    if mixed:
        signs.update({1, -1})
    if len(signs) > 1:
        return FilResult(False, None, "both signs occur on the diagonal")
    return FilResult(True, _threshold(pairs, fm, fn, place), "single-signed diagonal")


def _threshold(pairs: list[tuple[int, int]], fm: HodgeFamily, fn: HodgeFamily, place: str) -> int | None:
    """Largest q with #{first coords >= q} equal to half the multiset, if any."""
    n = len(pairs)
    firsts = sorted(p for p, _ in pairs)
    target = n // 2
    qs = [q for q in range(firsts[0], firsts[-1] + 2) if sum(1 for p in firsts if p >= q) == target]
    return max(qs) if qs else None
