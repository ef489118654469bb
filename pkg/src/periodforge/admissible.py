"""Admissible invariant-polynomial types and their monomial decomposition.

An admissible type ``{(a_1,...,a_t); (k+, k-)}`` lives over a *shape*: a
partition ``s_1 + ... + s_t`` of ``d`` together with an eigenspace split
``d = d+ + d-`` landing on partition boundaries (``s_1+...+s_{t+-} = d+-``).
The generators are the types of the determinant, the corner minors ``f+``
and ``f-``, and the ``f_beta`` family; every admissible type is a unique
non-negative monomial in them.

Two degeneracies of the generator list matter in practice and are handled
here once and for all:

* if a split is trivial on one side (``d- = 0``), the corresponding corner
  minor is the constant polynomial and is dropped as a generator;
* if ``t+ = t- = t/2``, the type of ``f_{t/2}`` coincides with the type of
  the product ``f+ * f-`` (and hence the two polynomials agree up to a
  constant), so ``f_{t/2}`` is dropped and its type decomposes as
  ``f+ + f-``.  This is exactly the configuration arising at complex places
  of regular families.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class AdmissibleError(ValueError):
    pass


class ShapeError(AdmissibleError):
    pass


class BetaOutOfRange(AdmissibleError):
    pass


class NotAdmissible(AdmissibleError):
    pass


class NoDecomposition(AdmissibleError):
    """The integer system has no non-negative solution (a reportable finding)."""


def _split_index(s: tuple[int, ...], d_part: int) -> int:
    """Number of leading blocks summing to ``d_part``; raises if none does."""
    if d_part == 0:
        return 0
    acc = 0
    for i, si in enumerate(s):
        acc += si
        if acc == d_part:
            return i + 1
        if acc > d_part:
            break
    raise ShapeError(f"split {d_part} does not land on a boundary of {s}")


@dataclass(frozen=True)
class AdmissibleType:
    """Type datum ``{(a_1..a_t); (k+, k-)}`` over the shape ``(s, split)``."""

    s: tuple[int, ...]
    split: tuple[int, int]
    a: tuple[int, ...]
    k: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "split", tuple(self.split))
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "k", tuple(self.k))
        if any(si < 1 for si in self.s):
            raise ShapeError("partition blocks must be positive")
        if len(self.a) != len(self.s):
            raise ShapeError("a-vector length must equal the number of blocks")
        if sum(self.split) != sum(self.s):
            raise ShapeError("split must partition the total")
        if min(self.split) < 0:
            raise ShapeError("split parts must be non-negative")
        # both boundary indices must exist (t+- = 0 allowed for a trivial side)
        _split_index(self.s, self.split[0])
        _split_index(self.s, self.split[1])

    @property
    def t(self) -> int:
        return len(self.s)

    @property
    def t_plus(self) -> int:
        return _split_index(self.s, self.split[0])

    @property
    def t_minus(self) -> int:
        return _split_index(self.s, self.split[1])

    def with_components(self, a: tuple[int, ...], k: tuple[int, int]) -> AdmissibleType:
        return AdmissibleType(self.s, self.split, tuple(a), tuple(k))

    def to_json(self) -> dict:
        return {"s": list(self.s), "split": list(self.split), "a": list(self.a), "k": list(self.k)}

    @staticmethod
    def from_json(data: dict) -> AdmissibleType:
        return AdmissibleType(tuple(data["s"]), tuple(data["split"]), tuple(data["a"]), tuple(data["k"]))


def is_admissible(ty: AdmissibleType) -> tuple[bool, str | None]:
    """Check the five defining conditions; return (ok, first-violated label).

    Out-of-range indices make an inequality vacuous.  Condition (d) compares
    ``min(k)`` against the entry *after* the longer split prefix; the
    generator list itself (``f_beta`` with ``beta = min(t+,t-)``) forces this
    reading.
    """
    a, (kp, km) = ty.a, ty.k
    t, tp, tm = ty.t, ty.t_plus, ty.t_minus
    if any(x < 0 for x in a) or kp < 0 or km < 0:
        return False, "domain"
    if any(a[i] < a[i + 1] for i in range(t - 1)):
        return False, "a"
    for i in range(1, min(tp, tm) + 1):
        if a[i - 1] + a[t - i] != kp + km:
            return False, "b"
    if tp >= 1 and a[tp - 1] < kp:
        return False, "c"
    if tp + 1 <= t and km < a[tp]:
        return False, "c"
    lo, hi = min(tp, tm), max(tp, tm)
    if lo >= 1 and a[lo - 1] < max(kp, km):
        return False, "d"
    if hi + 1 <= t and min(kp, km) < a[hi]:
        return False, "d"
    if tp > tm and any(a[i] != kp for i in range(tm, tp)):
        return False, "e"
    if tm > tp and any(a[i] != km for i in range(tp, tm)):
        return False, "e"
    return True, None


def basis_type(kind: str, s: tuple[int, ...], split: tuple[int, int], beta: int | None = None) -> AdmissibleType:
    """Construct the type of a generator polynomial on the given shape."""
    s = tuple(s)
    t = len(s)
    tp = _split_index(s, split[0])
    tm = _split_index(s, split[1])
    if kind == "det":
        return AdmissibleType(s, split, (1,) * t, (1, 1))
    if kind == "f_plus":
        return AdmissibleType(s, split, (1,) * tp + (0,) * (t - tp), (1, 0))
    if kind == "f_minus":
        return AdmissibleType(s, split, (1,) * tm + (0,) * (t - tm), (0, 1))
    if kind == "f_beta":
        if beta is None or not 1 <= beta <= min(tp, tm):
            raise BetaOutOfRange(f"beta={beta} not in [1, {min(tp, tm)}]")
        return AdmissibleType(s, split, (2,) * beta + (1,) * (t - 2 * beta) + (0,) * beta, (1, 1))
    raise AdmissibleError(f"unknown basis kind {kind!r}")


@dataclass(frozen=True)
class BasisDecomposition:
    m_det: int
    m_plus: int
    m_minus: int
    m_beta: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "m_beta", {b: e for b, e in sorted(self.m_beta.items()) if e})

    def exponents(self) -> dict[str, int]:
        out = {}
        if self.m_det:
            out["det"] = self.m_det
        if self.m_plus:
            out["f_plus"] = self.m_plus
        if self.m_minus:
            out["f_minus"] = self.m_minus
        for b, e in self.m_beta.items():
            out[f"f_{b}"] = e
        return out


def generators(s: tuple[int, ...], split: tuple[int, int]) -> list[tuple[str, int | None, AdmissibleType]]:
    """Reduced generator list for a shape (degenerate members dropped)."""
    s = tuple(s)
    t = len(s)
    tp = _split_index(s, split[0])
    tm = _split_index(s, split[1])
    gens: list[tuple[str, int | None, AdmissibleType]] = []
    bmax = min(tp, tm)
    for beta in range(bmax, 0, -1):
        if 2 * beta == t and tp == tm == beta:
            continue  # f_{t/2} == f+ * f- on an equal split
        gens.append(("f_beta", beta, basis_type("f_beta", s, split, beta)))
    if tp >= 1:
        gens.append(("f_plus", None, basis_type("f_plus", s, split)))
    if tm >= 1:
        gens.append(("f_minus", None, basis_type("f_minus", s, split)))
    gens.append(("det", None, basis_type("det", s, split)))
    return gens


def _solve(ty: AdmissibleType, limit: int, cap: int) -> list[dict]:
    """All exponent vectors (up to ``cap``) with entries <= ``limit`` recomposing ``ty``."""
    gens = generators(ty.s, ty.split)
    sols: list[dict] = []

    def rec(idx: int, rest_a: tuple[int, ...], rest_k: tuple[int, int], acc: dict) -> None:
        if len(sols) >= cap:
            return
        if idx == len(gens):
            if not any(rest_a) and not any(rest_k):
                sols.append(dict(acc))
            return
        kind, beta, g = gens[idx]
        top = limit
        for i, ai in enumerate(g.a):
            if ai:
                top = min(top, rest_a[i] // ai)
        for j in (0, 1):
            if g.k[j]:
                top = min(top, rest_k[j] // g.k[j])
        key = kind if beta is None else f"f_{beta}"
        for e in range(top, -1, -1):
            na = tuple(rest_a[i] - e * g.a[i] for i in range(len(rest_a)))
            nk = (rest_k[0] - e * g.k[0], rest_k[1] - e * g.k[1])
            if e:
                acc[key] = e
            rec(idx + 1, na, nk, acc)
            acc.pop(key, None)
            if len(sols) >= cap:
                return

    rec(0, ty.a, ty.k, {})
    return sols


def decompose(ty: AdmissibleType) -> BasisDecomposition:
    """Unique monomial decomposition of an admissible type.

    Raises ``NotAdmissible`` on inadmissible input and ``NoDecomposition``
    when the integer system is unsolvable.
    """
    ok, label = is_admissible(ty)
    if not ok:
        raise NotAdmissible(f"condition ({label}) fails for {ty.a}; {ty.k}")
    limit = max(list(ty.a) + [ty.k[0] + ty.k[1], 0])
    sols = _solve(ty, limit, cap=1)
    if not sols:
        raise NoDecomposition(f"no non-negative decomposition for {ty.a}; {ty.k} on shape {ty.s}/{ty.split}")
    sol = sols[0]
    return BasisDecomposition(
        m_det=sol.get("det", 0),
        m_plus=sol.get("f_plus", 0),
        m_minus=sol.get("f_minus", 0),
        m_beta={b: sol[f"f_{b}"] for b in range(1, len(ty.s) + 1) if f"f_{b}" in sol},
    )


def recompose(ty_shape: AdmissibleType, dec: BasisDecomposition) -> AdmissibleType:
    """Componentwise sum of generators weighted by the decomposition exponents."""
    t = ty_shape.t
    a = [0] * t
    k = [0, 0]

    def add(g: AdmissibleType, e: int) -> None:
        for i in range(t):
            a[i] += e * g.a[i]
        k[0] += e * g.k[0]
        k[1] += e * g.k[1]

    if dec.m_det:
        add(basis_type("det", ty_shape.s, ty_shape.split), dec.m_det)
    if dec.m_plus:
        add(basis_type("f_plus", ty_shape.s, ty_shape.split), dec.m_plus)
    if dec.m_minus:
        add(basis_type("f_minus", ty_shape.s, ty_shape.split), dec.m_minus)
    for b, e in dec.m_beta.items():
        add(basis_type("f_beta", ty_shape.s, ty_shape.split, b), e)
    return ty_shape.with_components(tuple(a), (k[0], k[1]))


def all_solutions(ty: AdmissibleType, limit: int | None = None, cap: int = 2) -> list[dict]:
    """Brute-force oracle: every exponent vector (entries <= limit) recomposing ``ty``."""
    if limit is None:
        limit = max(list(ty.a) + [ty.k[0] + ty.k[1], 0])
    return _solve(ty, limit, cap)


def tensor_factor_types(
    shape_m,
    eigen_m: tuple[int, int],
    shape_n,
    eigen_n: tuple[int, int],
    q: int,
    m_jump_weights: tuple[int, ...] | None = None,
    n_jump_weights: tuple[int, ...] | None = None,
) -> tuple[AdmissibleType, AdmissibleType, AdmissibleType, AdmissibleType]:
    """Types of the four tensor-factor polynomials ``(phi+, phi-, psi+, psi-)``.

    ``a_mu`` counts the rows of the other factor's period matrix whose jump
    weight added to this factor's ``mu``-th jump stays below ``q``; the
    ``k``/``l`` pairs are the eigenspace dimensions of the opposite factor
    (swapped between the two signs).  Both q-thresholds coincide under the
    strong interlace condition, so the plus/minus a-vectors agree.
    """
    if m_jump_weights is None:
        m_jump_weights = shape_m.row_weights()
    if n_jump_weights is None:
        n_jump_weights = shape_n.row_weights()
    a = tuple(sum(1 for w in n_jump_weights if j + w < q) for j in shape_m.jumps)
    b = tuple(sum(1 for w in m_jump_weights if j + w < q) for j in shape_n.jumps)
    dnp, dnm = eigen_n
    dmp, dmm = eigen_m
    phi_plus = AdmissibleType(shape_m.mults, eigen_m, a, (dnp, dnm))
    phi_minus = AdmissibleType(shape_m.mults, eigen_m, a, (dnm, dnp))
    psi_plus = AdmissibleType(shape_n.mults, eigen_n, b, (dmp, dmm))
    psi_minus = AdmissibleType(shape_n.mults, eigen_n, b, (dmm, dmp))
    return phi_plus, phi_minus, psi_plus, psi_minus
