"""Generators for the built-in families and their independent fusion oracles.

Three sources of data:

* ``pointed_cyclic(n, a, k0)``: graded lines over Z/nZ (n odd) with braiding
  parameter zeta = zeta_n^a and pivot parameter xi = zeta^k0.  Nondegenerate
  exactly when zeta has order n; degenerate instances are valid test inputs.

* ``taft_double(d)``: the slightly degenerate category on d(d-1) simples
  M_{l,p} (1 <= l < d, p mod d) with closed-form S-matrix and twists; the
  fermion is M_{d-1,1}.  ``taft_fusion`` decomposes tensor products through
  the translation/recursion rules and is the oracle the S-matrix route is
  checked against.

* ``sl2_q16_counterexample()``: the rank-4 datum (and its rank-2 restriction)
  whose central invertible has dimension +1 and twist -1; the restriction
  must fail the S/T relations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np

from .cyclotomic import CycNum, root_of_unity
from .datum import KIND_BOLD, KIND_FULL, RawDatum
from .fusion import FusionTensor
from .matrix import CycMatrix


class FamilySpecError(ValueError):
    """A family spec string could not be parsed or has invalid parameters."""


@dataclass(frozen=True)
class FamilyInstance:
    name: str
    raw: RawDatum
    fusion_oracle: Optional[FusionTensor] = None
    reps: Optional[tuple[int, ...]] = None      # representative indices for the reduction
    normalizer: Optional[CycNum] = None          # exact c with c^2 = D * dim_r(unit_bar)


# ---------------------------------------------------------------------------
# pointed cyclic family
# ---------------------------------------------------------------------------

def pointed_cyclic(n: int, a: int = 1, k0: int = 0) -> RawDatum:
    """Graded-lines datum on Z/nZ: S[k,l] = xi^(k+l) zeta^(2kl), theta_k =
    xi^k zeta^(k^2), dim_r(delta_k) = xi^k, duality k -> -k."""
    if n < 3 or n % 2 == 0:
        raise FamilySpecError(f"the pointed family needs an odd n >= 3, got {n}")
    z = root_of_unity(n)
    entries = [z ** ((a * (k0 * (k + l) + 2 * k * l)) % n) for k in range(n) for l in range(n)]
    s = CycMatrix(n, n, entries)
    twists = tuple(z ** ((a * (k0 * k + k * k)) % n) for k in range(n))
    return RawDatum(
        labels=tuple(f"d{k}" for k in range(n)),
        unit=0,
        s_matrix=s,
        twists=twists,
        kind=KIND_FULL,
        duality=tuple((-k) % n for k in range(n)),
    )


def pointed_fusion_tensor(n: int) -> FusionTensor:
    """The group law of Z/nZ as a fusion tensor."""
    t = np.zeros((n, n, n), dtype=np.int64)
    for k in range(n):
        for l in range(n):
            t[k, l, (k + l) % n] = 1
    return FusionTensor(tuple(f"d{k}" for k in range(n)), t, 0,
                        tuple((-k) % n for k in range(n)))


# ---------------------------------------------------------------------------
# Taft double family
# ---------------------------------------------------------------------------

class TaftLabel(NamedTuple):
    l: int
    p: int

    def __str__(self):
        return f"({self.l},{self.p})"


def taft_labels(d: int) -> list[TaftLabel]:
    return [TaftLabel(l, p) for l in range(1, d) for p in range(d)]


def taft_label_index(d: int, x: TaftLabel) -> int:
    return (x.l - 1) * d + x.p


def parse_taft_label(d: int, text: str) -> TaftLabel:
    body = text.strip().lstrip("(").rstrip(")")
    try:
        l, p = (int(v) for v in body.split(","))
    except ValueError as exc:
        raise FamilySpecError(f"cannot parse label {text!r}") from exc
    if not (1 <= l <= d - 1 and 0 <= p < d):
        raise FamilySpecError(f"label {text!r} is out of range for d={d}")
    return TaftLabel(l, p)


def taft_dual(d: int, x: TaftLabel) -> TaftLabel:
    return TaftLabel(x.l, (1 - x.l - x.p) % d)


def taft_epsilon_action(d: int, x: TaftLabel) -> TaftLabel:
    """Tensoring with the fermion: (l, p) -> (d - l, l + p)."""
    return TaftLabel(d - x.l, (x.l + x.p) % d)


def taft_double(d: int) -> RawDatum:
    """Full datum on the d(d-1) labels (l, p), lexicographically ordered.

    S[(l,p),(l',p')] = zeta/(1-zeta) * zeta^-(ll'+lp'+pl'+2pp') (1-zeta^(ll'))
    with zeta the canonical primitive d-th root.  The twist convention is
    pinned by consistency with this S: theta_(l,p) = zeta^(-p(l+p)) is the
    choice under which balancing, the S/T cubes and the Gauss-sum laws all
    hold exactly (the opposite exponent pairs with the conjugate braiding).
    Galois-conjugate variants are one entrywise ``galois`` call away.
    """
    if d < 2:
        raise FamilySpecError(f"the Taft family needs d >= 2, got {d}")
    z = root_of_unity(d)
    pref = z / (CycNum.from_rational(1) - z)
    labels = taft_labels(d)
    entries = []
    for (l, p) in labels:
        for (lp, pp) in labels:
            e = (-(l * lp + l * pp + p * lp + 2 * p * pp)) % d
            entries.append(pref * z ** e * (CycNum.from_rational(1) - z ** ((l * lp) % d)))
    s = CycMatrix(d * (d - 1), d * (d - 1), entries)
    twists = tuple(z ** ((-p * (l + p)) % d) for (l, p) in labels)
    duality = tuple(taft_label_index(d, taft_dual(d, x)) for x in labels)
    return RawDatum(
        labels=tuple(str(x) for x in labels),
        unit=0,
        s_matrix=s,
        twists=twists,
        kind=KIND_FULL,
        duality=duality,
    )


@lru_cache(maxsize=None)
def _mul_l0(d: int, l: int, lp: int, q: int) -> tuple:
    """M_{l,0} (x) M_{l',q} as a sorted tuple of ((l, p), multiplicity)."""
    if l == 1:
        return (((lp, q), 1),)
    if l == 2:
        if lp == 1:
            return (((2, q), 1),)
        if lp == d - 1:
            return (((d - 2, (q + 1) % d), 1),)
        return tuple(sorted((((lp + 1, q), 1), ((lp - 1, (q + 1) % d), 1))))
    # M_{l,0} = M_{2,0} (x) M_{l-1,0} - M_{l-2,1} in the fusion ring
    acc: Counter = Counter()
    for (a, b), m in _mul_l0(d, l - 1, lp, q):
        for lab, m2 in _mul_l0(d, 2, a, b):
            acc[lab] += m * m2
    for lab, m in _mul_l0(d, l - 2, lp, (q + 1) % d):
        acc[lab] -= m
        if acc[lab] < 0:
            raise AssertionError(f"negative multiplicity at {lab} in d={d}")
    out = tuple(sorted((lab, m) for lab, m in acc.items() if m))
    if any(not 1 <= lab[0] <= d - 1 for lab, _ in out):
        raise AssertionError(f"killed label appeared in d={d}")
    return out


def taft_fusion(d: int, x: TaftLabel, y: TaftLabel) -> Counter:
    """Exact decomposition of M_x (x) M_y as a multiset of labels."""
    x, y = TaftLabel(*x), TaftLabel(*y)
    for lab in (x, y):
        if not (1 <= lab.l <= d - 1 and 0 <= lab.p < d):
            raise ValueError(f"label {lab} is out of range for d={d}")
    return Counter({TaftLabel(*lab): m
                    for lab, m in _mul_l0(d, x.l, y.l, (x.p + y.p) % d)})


def taft_fusion_tensor(d: int) -> FusionTensor:
    labels = taft_labels(d)
    n = len(labels)
    t = np.zeros((n, n, n), dtype=np.int64)
    for i, x in enumerate(labels):
        for j, y in enumerate(labels):
            for lab, m in taft_fusion(d, x, y).items():
                t[i, j, taft_label_index(d, lab)] = m
    duality = tuple(taft_label_index(d, taft_dual(d, x)) for x in labels)
    return FusionTensor(tuple(str(x) for x in labels), t, 0, duality)


def taft_J(d: int) -> list[TaftLabel]:
    """Representatives of the fermion orbits: 0 <= p < l + p < d, lex order."""
    return [x for x in taft_labels(d) if 0 <= x.p < x.l + x.p < d]


def taft_J_indices(d: int) -> tuple[int, ...]:
    return tuple(taft_label_index(d, x) for x in taft_J(d))


def taft_sdim(d: int) -> CycNum:
    """-zeta d^2 / (1-zeta)^2, the representative-set sum of squared norms."""
    z = root_of_unity(d)
    one_minus = CycNum.from_rational(1) - z
    return -(z * d * d) / (one_minus * one_minus)


def taft_normalizer(d: int) -> CycNum:
    """c = d*zeta/(zeta-1); satisfies c^2 = sdim * dim_r(unit_bar) exactly.

    The opposite sign squares to the same value; this branch reproduces the
    closed-form normalized matrix of :func:`taft_normalized_S`.
    """
    z = root_of_unity(d)
    c = (z * d) / (z - CycNum.from_rational(1))
    u = -z  # dim_r of the bar of the unit, M_{d-1,0}
    assert c * c == taft_sdim(d) * u
    return c


def taft_normalized_S(d: int) -> CycMatrix:
    """Closed form zeta^-(ll'+lp'+pl'+2pp') (zeta^(ll')-1)/d on the
    representative set."""
    z = root_of_unity(d)
    reps = taft_J(d)
    entries = []
    for (l, p) in reps:
        for (lp, pp) in reps:
            e = (-(l * lp + l * pp + p * lp + 2 * p * pp)) % d
            entries.append(z ** e * (z ** ((l * lp) % d) - CycNum.from_rational(1))
                           / CycNum.from_rational(d))
    return CycMatrix(len(reps), len(reps), entries)


# ---------------------------------------------------------------------------
# the q16 counterexample
# ---------------------------------------------------------------------------

def sl2_q16_counterexample() -> tuple[RawDatum, RawDatum]:
    """The rank-4 datum with central invertible of dimension +1, twist -1,
    and its representative-indexed restriction (which fails the S/T cube)."""
    q = root_of_unity(16)
    one = CycNum.from_rational(1)
    br = q ** 2 + one + q ** 14          # [3] = q^-2 + 1 + q^2
    i = q ** 4
    full_s = CycMatrix.from_rows([
        [one, br, br, one],
        [br, -one, -one, br],
        [br, -one, -one, br],
        [one, br, br, one],
    ])
    # printed T-matrix diag(1, -i, i, -1) is diag(theta^-1)
    full_twists = (one, i, -i, -one)
    full = RawDatum(
        labels=("V0", "V2", "V4", "V6"),
        unit=0,
        s_matrix=full_s,
        twists=full_twists,
        kind=KIND_FULL,
        duality=(0, 1, 2, 3),
    )
    bold_s = CycMatrix.from_rows([[one, br], [br, -one]])
    bold = RawDatum(
        labels=("V0", "V2"),
        unit=0,
        s_matrix=bold_s,
        twists=(one, i),
        kind=KIND_BOLD,
        duality=(0, 1),
        duality_signs=(1, 1),
    )
    return full, bold


# ---------------------------------------------------------------------------
# family spec strings
# ---------------------------------------------------------------------------

def from_spec(spec: str) -> FamilyInstance:
    """Parse a family spec string: ``taft:d=5``, ``pointed:n=7,a=1,k0=2``,
    ``counterexample:sl2q16`` (or ``counterexample:sl2q16,part=full``)."""
    name, _, body = spec.partition(":")
    name = name.strip().lower()
    args: dict[str, str] = {}
    flags: list[str] = []
    if body:
        for tok in body.split(","):
            tok = tok.strip()
            if not tok:
                continue
            if "=" in tok:
                k, _, v = tok.partition("=")
                args[k.strip()] = v.strip()
            else:
                flags.append(tok)

    def intarg(key: str, default: Optional[int] = None) -> int:
        if key not in args:
            if default is None:
                raise FamilySpecError(f"family {name!r} needs {key}=...")
            return default
        try:
            return int(args[key])
        except ValueError as exc:
            raise FamilySpecError(f"{key}={args[key]!r} is not an integer") from exc

    if name == "taft":
        d = intarg("d")
        if d < 2:
            raise FamilySpecError(f"taft needs d >= 2, got {d}")
        return FamilyInstance(
            name=f"taft:d={d}",
            raw=taft_double(d),
            fusion_oracle=taft_fusion_tensor(d),
            reps=taft_J_indices(d),
            normalizer=taft_normalizer(d),
        )
    if name == "pointed":
        n = intarg("n")
        a = intarg("a", 1)
        k0 = intarg("k0", 0)
        return FamilyInstance(
            name=f"pointed:n={n},a={a},k0={k0}",
            raw=pointed_cyclic(n, a, k0),
            fusion_oracle=pointed_fusion_tensor(n),
        )
    if name == "counterexample":
        if flags != ["sl2q16"] and "sl2q16" not in flags:
            raise FamilySpecError("the only counterexample is counterexample:sl2q16")
        full, bold = sl2_q16_counterexample()
        part = args.get("part", "bold")
        if part not in ("bold", "full"):
            raise FamilySpecError(f"part must be bold or full, got {part!r}")
        return FamilyInstance(
            name=f"counterexample:sl2q16,part={part}",
            raw=bold if part == "bold" else full,
        )
    raise FamilySpecError(f"unknown family {name!r} (expected taft, pointed or counterexample)")
