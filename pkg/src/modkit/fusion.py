"""Integer fusion tensors N_{i,j}^k with unit and duality data."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np


@dataclass(frozen=True)
class FusionTensor:
    labels: tuple[str, ...]
    table: np.ndarray            # int64, table[i, j, k] = N_{i,j}^k
    unit: int
    duality: tuple[int, ...]

    def __post_init__(self):
        n = len(self.labels)
        if self.table.shape != (n, n, n):
            raise ValueError(f"tensor shape {self.table.shape} does not match {n} labels")

    def multiplicity(self, i: int, j: int, k: int) -> int:
        return int(self.table[i, j, k])

    def product(self, i: int, j: int) -> dict[int, int]:
        """Decomposition of i (x) j as {label index: multiplicity}."""
        row = self.table[i, j]
        return {int(k): int(m) for k, m in enumerate(row) if m}

    # ---------- invariants ----------

    def unit_law_holds(self) -> bool:
        n = len(self.labels)
        eye = np.eye(n, dtype=self.table.dtype)
        return bool(np.array_equal(self.table[self.unit], eye)
                    and np.array_equal(self.table[:, self.unit, :], eye))

    def duality_law_holds(self) -> bool:
        n = len(self.labels)
        want = np.zeros((n, n), dtype=self.table.dtype)
        for i, d in enumerate(self.duality):
            want[i, d] = 1
        return bool(np.array_equal(self.table[:, :, self.unit], want))

    def is_associative(self) -> bool:
        # sum_m N_{ij}^m N_{mk}^l == sum_m N_{jk}^m N_{im}^l for all i,j,k,l
        t = self.table
        lhs = np.einsum("ijm,mkl->ijkl", t, t)
        rhs = np.einsum("jkm,iml->ijkl", t, t)
        return bool(np.array_equal(lhs, rhs))

    def validate(self) -> list[str]:
        problems = []
        if not self.unit_law_holds():
            problems.append("unit law fails")
        if not self.duality_law_holds():
            problems.append("duality law fails")
        if not self.is_associative():
            problems.append("associativity fails")
        return problems


def derive_duality(table: np.ndarray, unit: int) -> Optional[tuple[int, ...]]:
    """Read the duality involution off N_{i,j}^unit; None when it is not one.

    Quotient (integer) tensors carry -1 there when the dual of a
    representative lies in the other orbit, so the entry is allowed to be
    +-1; plain fusion tensors have +1 throughout.
    """
    n = table.shape[0]
    out = []
    for i in range(n):
        hits = [j for j in range(n) if table[i, j, unit]]
        if len(hits) != 1 or abs(table[i, hits[0], unit]) != 1:
            return None
        out.append(hits[0])
    if sorted(out) != list(range(n)):
        return None
    return tuple(out)


def quotient_constants(fusion: FusionTensor, eps: int, sign: int,
                       reps: Optional[Sequence[int]] = None) -> tuple[np.ndarray, tuple[int, ...]]:
    """Structure constants N_{X,Y}^Z + sign * N_{X,Y}^{eps (x) Z} on representatives.

    ``eps`` must be an invertible label whose tensoring permutes the labels
    without fixed points; ``reps`` picks one label per orbit (defaults to the
    first of each orbit in label order, with the unit's orbit represented by
    the unit).  Returns the quotient tensor together with the representative
    index list it is indexed by.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    act = epsilon_action_from_fusion(fusion, eps)
    if reps is None:
        reps = canonical_reps(act, fusion.unit)
    else:
        reps = list(reps)
        seen = set()
        for r in reps:
            seen.add(r)
            seen.add(act[r])
        if fusion.unit not in reps or len(reps) * 2 != len(fusion.labels) or \
                len(seen) != len(fusion.labels):
            raise ValueError("reps must pick one label per orbit and contain the unit")
    k = len(reps)
    out = np.zeros((k, k, k), dtype=np.int64)
    t = fusion.table
    for a, x in enumerate(reps):
        for b, y in enumerate(reps):
            for c, z in enumerate(reps):
                out[a, b, c] = t[x, y, z] + sign * t[x, y, act[z]]
    return out, tuple(reps)


def epsilon_action_from_fusion(fusion: FusionTensor, eps: int) -> tuple[int, ...]:
    """The label permutation X -> eps (x) X, read off the fusion tensor."""
    n = len(fusion.labels)
    act = []
    for x in range(n):
        hits = [z for z in range(n) if fusion.table[eps, x, z]]
        if len(hits) != 1 or fusion.table[eps, x, hits[0]] != 1:
            raise ValueError(f"label {fusion.labels[eps]} does not tensor invertibly")
        act.append(hits[0])
    return tuple(act)


def canonical_reps(act: Sequence[int], unit: int) -> list[int]:
    """First label of each orbit of the involution, with the unit forced in."""
    reps, seen = [], set()
    for i in range(len(act)):
        if i not in seen:
            reps.append(i)
            seen.add(i)
            seen.add(act[i])
    if unit not in reps:
        reps[reps.index(act[unit])] = unit
    return reps
