"""Exact identity checks and the normalized-datum axiom suite.

Every check returns a :class:`CheckResult` with an exact witness on failure
(indices plus the offending values); nothing here rounds or approximates.
Checks that need derived data (dimensions, bar involution, Gauss sums)
operate on a :class:`~modkit.datum.World`.

Square-root-free policy: unnormalized matrices are verified through squared
identities (S S^dag = D*u' Id, (ST)^3 = tau^- S^2, anomaly^2 a root of
unity).  These are equivalent to the unitary/scalar statements about
S / (sqrt(u) sqrt(D)) because the root-of-unity factor sqrt(u) has exact
modulus one: sqrt(u) * conj(sqrt(u)) = 1 whenever u is a root of unity.  The
equivalence keeps the whole pipeline inside Q(zeta_N).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Optional, Union

import numpy as np

from .cyclotomic import CycNum, is_root_of_unity, is_totally_positive
from .datum import (KIND_FULL, MODE_NONDEGENERATE, ModularDatum, RawDatum, World,
                    bold_world, nondegenerate_world)
from .matrix import CycMatrix
from .verlinde import verlinde_fusion

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""
    witness: Optional[dict] = None
    ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status != FAIL


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, result: CheckResult) -> CheckResult:
        self.checks.append(result)
        return result

    def run(self, name: str, fn: Callable[[], tuple]) -> CheckResult:
        t0 = time.perf_counter()
        ok, detail, witness = fn()
        ms = (time.perf_counter() - t0) * 1000.0
        return self.add(CheckResult(name, PASS if ok else FAIL, detail, witness, ms))

    def skip(self, name: str, detail: str = "") -> CheckResult:
        return self.add(CheckResult(name, SKIPPED, detail))

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == FAIL]


def _as_world(x: Union[World, RawDatum]) -> World:
    if isinstance(x, World):
        return x
    return nondegenerate_world(x) if x.kind == KIND_FULL else bold_world(x)


def _first_diff(a: CycMatrix, b: CycMatrix) -> Optional[dict]:
    for i in range(a.rows):
        for j in range(a.cols):
            if a[i, j] != b[i, j]:
                return {"at": (i, j), "lhs": a[i, j], "rhs": b[i, j]}
    return None


# ---------------------------------------------------------------------------
# raw-world checks
# ---------------------------------------------------------------------------

def check_raw_unitarity(raw: Union[World, RawDatum], scale: CycNum) -> tuple[bool, Optional[dict]]:
    """S * conj(S)^T == scale * Id, exactly."""
    w = _as_world(raw)
    lhs = w.s @ w.s.conj_transpose()
    rhs = CycMatrix.identity(w.size).scale(scale)
    return (diff := _first_diff(lhs, rhs)) is None, diff


class GaussSums(NamedTuple):
    tau_plus: CycNum
    tau_minus: CycNum
    product: CycNum
    expected: CycNum
    ok: bool


def gauss_sums(raw: Union[World, RawDatum]) -> GaussSums:
    """Twist-weighted sums of squared norms; product compared with the
    world's (super)dimension."""
    w = _as_world(raw)
    product = w.tau_plus * w.tau_minus
    return GaussSums(w.tau_plus, w.tau_minus, product, w.global_dim, product == w.global_dim)


def check_twist_laws(raw: Union[World, RawDatum]) -> list[CheckResult]:
    w = _as_world(raw)
    rep = VerificationReport()

    def dual_dim():
        for x in range(w.size):
            if w.twists[w.duality[x]] * w.dim_r[x] != w.twists[x] * w.dim_l[x]:
                return False, "", {"at": x, "label": w.labels[x]}
        return True, "", None

    def bar_law():
        tb = w.twists[w.unit_bar]
        for x in range(w.size):
            if w.twists[w.bar[x]] != w.twists[x] * tb:
                return False, "", {"at": x, "label": w.labels[x]}
        return True, "", None

    def unit_bar_law():
        tb = w.twists[w.unit_bar]
        return tb == 1, f"twist(unit_bar) = {tb}", None if tb == 1 else {"value": tb}

    def tau_plus_rows():
        for y in range(w.size):
            acc = CycNum.from_rational(0)
            for x in range(w.size):
                acc = acc + w.twists[x] * w.dim_l[x] * w.s[x, y]
            want = w.twists[y].inv() * w.dim_r[y] * w.tau_plus
            if acc != want:
                return False, "", {"at": y, "lhs": acc, "rhs": want}
        return True, "", None

    def tau_minus_rows():
        tb = w.twists[w.unit_bar]
        for y in range(w.size):
            acc = CycNum.from_rational(0)
            for x in range(w.size):
                acc = acc + w.twists[x].inv() * w.dim_r[x] * w.s[x, y]
            want = tb * w.twists[y] * w.dim_r[y] * w.tau_minus
            if acc != want:
                return False, "", {"at": y, "lhs": acc, "rhs": want}
        return True, "", None

    rep.run("twist_dual_dim", dual_dim)
    rep.run("twist_bar", bar_law)
    rep.run("twist_unit_bar", unit_bar_law)
    rep.run("twist_tau_plus_rows", tau_plus_rows)
    rep.run("twist_tau_minus_rows", tau_minus_rows)
    return rep.checks


def check_sl2_relations(raw: Union[World, RawDatum], mode: Optional[str] = None) -> list[CheckResult]:
    """(ST)^3 = tau^- S^2, S^4 = (D u)^2 Id, (S T^-1)^3 = tau^+ D u^2 Id and
    S^2 = D u E with E a signed permutation matching bar; T = diag(theta^-1)."""
    w = _as_world(raw)
    rep = VerificationReport()
    d_u = w.global_dim * w.dim_unit_bar

    def st_cubed():
        lhs = (w.s @ w.t_matrix).power(3)
        rhs = (w.s @ w.s).scale(w.tau_minus)
        return (diff := _first_diff(lhs, rhs)) is None, "(S T)^3 = tau_minus * S^2", diff

    def s_fourth():
        lhs = w.s.power(4)
        rhs = CycMatrix.identity(w.size).scale(d_u * d_u)
        return (diff := _first_diff(lhs, rhs)) is None, "S^4 = (D u)^2 Id", diff

    def st_inv_cubed():
        t_inv = CycMatrix.diagonal(list(w.twists))
        lhs = (w.s @ t_inv).power(3)
        rhs = CycMatrix.identity(w.size).scale(w.tau_plus * w.global_dim
                                               * w.dim_unit_bar * w.dim_unit_bar)
        return (diff := _first_diff(lhs, rhs)) is None, "(S T^-1)^3 = tau_plus D u^2 Id", diff

    def squared_signed_perm():
        sp = w.e_matrix().is_signed_permutation()
        if sp is None:
            return False, "S^2 / (D u) is not a signed permutation", {"matrix": "S^2/(D u)"}
        if sp.perm != w.bar:
            return False, "signed permutation does not match bar", {"perm": sp.perm, "bar": w.bar}
        if w.mode == MODE_NONDEGENERATE and any(s != 1 for s in sp.signs):
            return False, "nondegenerate E must have all signs +1", {"signs": sp.signs}
        return True, f"signs {sp.signs}", None

    rep.run("sl2_st_cubed", st_cubed)
    rep.run("sl2_s_fourth", s_fourth)
    rep.run("sl2_st_inv_cubed", st_inv_cubed)
    rep.run("sl2_s_squared_signed_perm", squared_signed_perm)
    return rep.checks


def check_vafa(raw: Union[World, RawDatum]) -> list[CheckResult]:
    """Every twist is a root of unity, and so is the squared anomaly
    tau_plus^2 * u / D (nondegenerate) resp. tau_plus^2 * u^2 / D (bold)."""
    w = _as_world(raw)
    rep = VerificationReport()

    def twists_ru():
        for x, t in enumerate(w.twists):
            if is_root_of_unity(t) is None:
                return False, "", {"at": x, "label": w.labels[x], "value": t}
        return True, "", None

    def anomaly_ru():
        u = w.dim_unit_bar
        xi_sq = w.tau_plus * w.tau_plus * u
        if w.mode != MODE_NONDEGENERATE:
            xi_sq = xi_sq * u
        xi_sq = xi_sq / w.global_dim
        wit = is_root_of_unity(xi_sq)
        if wit is None:
            return False, "", {"anomaly_squared": xi_sq}
        return True, f"anomaly^2 has order {wit.order}", None

    rep.run("vafa_twists", twists_ru)
    rep.run("vafa_anomaly", anomaly_ru)
    return rep.checks


def check_balancing(raw: Union[World, RawDatum], tensor: np.ndarray) -> CheckResult:
    """theta_X theta_Y S[X,Y] == sum_Z N_{X,Y}^Z dim_r(Z) theta_Z at every pair.

    ``tensor`` holds the structure constants indexed like the world's labels
    (the quotient constants, in the bold case).
    """
    w = _as_world(raw)
    rep = VerificationReport()

    def balance():
        weights = [w.dim_r[z] * w.twists[z] for z in range(w.size)]
        for x in range(w.size):
            for y in range(w.size):
                rhs = CycNum.from_rational(0)
                for z in range(w.size):
                    m = int(tensor[x, y, z])
                    if m:
                        rhs = rhs + m * weights[z]
                lhs = w.twists[x] * w.twists[y] * w.s[x, y]
                if lhs != rhs:
                    return False, "", {"at": (x, y), "lhs": lhs, "rhs": rhs}
        return True, "", None

    return rep.run("balancing", balance)


def check_total_positivity(raw: Union[World, RawDatum], precision_bits: int = 256) -> CheckResult:
    """Each squared norm |X|^2 = dim_r(X) dim_l(X) is totally positive
    (rigorous interval check at the given precision)."""
    w = _as_world(raw)
    rep = VerificationReport()

    def positive():
        for x, q in enumerate(w.sqnorm):
            if not is_totally_positive(q, precision_bits):
                return False, "", {"at": x, "label": w.labels[x], "value": q}
        return True, "", None

    return rep.run("sqnorm_totally_positive", positive)


# ---------------------------------------------------------------------------
# normalized datum: the axiom suite
# ---------------------------------------------------------------------------

AXIOM_CHECKS = (
    "unit_row_nonzero",
    "s_symmetric",
    "s_unitary",
    "s_fourth_identity",
    "st_cubed_scalar",
    "s_squared_t_commute",
    "verlinde_integrality",
)


def check_axioms(datum: ModularDatum) -> VerificationReport:
    """Run the defining checks of a modular datum, all exact.

    The checks, in order: the unit row of S has no zero; S is symmetric; S is
    unitary; S^4 = Id; (ST)^3 is a scalar matrix (the scalar is reported); S^2
    commutes with T; the Verlinde coefficients are integers (all natural:
    N-modular; some negative: Z-modular).  Failures carry exact witnesses.
    """
    rep = VerificationReport()
    s = datum.s_matrix
    n = datum.size
    t = CycMatrix.diagonal(list(datum.t_diag))

    def unit_row():
        for j in range(n):
            if s[datum.unit, j].is_zero():
                return False, "", {"at": j, "label": datum.labels[j]}
        return True, "", None

    unit_ok = rep.run("unit_row_nonzero", unit_row).ok

    rep.run("s_symmetric", lambda: (
        (diff := _first_diff(s, s.transpose())) is None, "", diff))

    rep.run("s_unitary", lambda: (
        (diff := _first_diff(s @ s.conj_transpose(), CycMatrix.identity(n))) is None, "", diff))

    rep.run("s_fourth_identity", lambda: (
        (diff := _first_diff(s.power(4), CycMatrix.identity(n))) is None, "", diff))

    def st_cubed_scalar():
        m = (s @ t).power(3)
        lam = m.is_scalar_multiple_of_identity()
        if lam is None:
            wit = _first_diff(m, CycMatrix.identity(n).scale(m[0, 0]))
            return False, "(ST)^3 is not a scalar matrix", wit
        return True, f"lambda = {lam}", None

    rep.run("st_cubed_scalar", st_cubed_scalar)

    rep.run("s_squared_t_commute", lambda: (
        (diff := _first_diff((s @ s) @ t, t @ (s @ s))) is None, "", diff))

    if not unit_ok:
        rep.skip("verlinde_integrality", "unit row has zeros")
        return rep

    def verlinde():
        tensor, irep = verlinde_fusion(datum)
        if not irep.integral:
            x, y, z, v = irep.non_integral[0]
            return False, "non-integral coefficient", {"at": (x, y, z), "value": v}
        if not irep.duality_ok:
            return False, "coefficients do not define a duality involution", None
        cls = "N-modular" if irep.nonnegative else "Z-modular"
        extra = ""
        if not irep.nonnegative:
            extra = f", {irep.negative_count} negative entries (first {irep.first_negative})"
        return True, f"class {cls}{extra}", None

    rep.run("verlinde_integrality", verlinde)
    return rep
