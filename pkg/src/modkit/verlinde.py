"""Exact Verlinde-style fusion coefficients.

Two routes compute structure constants from an S-matrix:

* :func:`verlinde_raw` works on an unnormalized world (full nondegenerate or
  bold): N_{X,Y}^Z = sign(Z)/(D*u) * sum_W S_{W,X} S_{W,Y} S_{W,Zbar} / dim_r(W),
  where D is the (super)dimension, u = dim_r(unit_bar) and sign(Z) is read
  off the signed permutation S^2/(D*u).  No square roots appear.

* :func:`verlinde_fusion` works on a normalized datum:
  N_{i,j}^k = sum_l S_{i,l} S_{j,l} conj(S_{k,l}) / S_{unit,l}.

Integrality (and signs) of the output is a classification outcome, reported,
never an exception.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .cyclotomic import CycNum
from .datum import ModularDatum, World
from .fusion import FusionTensor, derive_duality
from .kernel import impl as _K


@dataclass
class IntegralityReport:
    integral: bool = True
    nonnegative: bool = True
    duality_ok: bool = True
    entries: int = 0
    negative_count: int = 0
    first_negative: Optional[tuple[int, int, int, int]] = None
    non_integral: list = field(default_factory=list)  # up to 5 witnesses (x, y, z, value)

    @property
    def classifies_as(self) -> str:
        if not self.integral or not self.duality_ok:
            return "fail"
        return "natural" if self.nonnegative else "integer"


def _triple_sum(a_rows, c_cols, scale_inv: CycNum, signs, conductor: int, k: int):
    """vals[(x,y,z)] = sign(z) * scale_inv * sum_w a_rows[w][x] a_rows[w][y] c_cols[z][w].

    Exact; symmetric in (x, y), so only x <= y is produced.
    """
    tab = _K.table(conductor)
    dot = _K.dot
    nw = len(a_rows)
    col_nums = [[c.num for c in col] for col in c_cols]
    col_dens = [[c.den for c in col] for col in c_cols]
    out = {}
    for x in range(k):
        ax = [a_rows[w][x] for w in range(nw)]
        for y in range(x, k):
            prod = [ax[w] * a_rows[w][y] for w in range(nw)]
            p_nums = [p.num for p in prod]
            p_dens = [p.den for p in prod]
            for z in range(k):
                num, den = dot(p_nums, p_dens, col_nums[z], col_dens[z], tab)
                val = CycNum._make(conductor, num, den) * scale_inv
                if signs[z] < 0:
                    val = -val
                out[(x, y, z)] = val
    return out


def _collect(vals, k: int) -> tuple[Optional[np.ndarray], IntegralityReport]:
    rep = IntegralityReport(entries=k * k * k)
    tensor = np.zeros((k, k, k), dtype=np.int64)
    for (x, y, z), v in vals.items():
        if not v.is_integer():
            rep.integral = False
            if len(rep.non_integral) < 5:
                rep.non_integral.append((x, y, z, v))
            continue
        m = int(v.as_rational())
        tensor[x, y, z] = m
        tensor[y, x, z] = m
        if m < 0:
            rep.nonnegative = False
            rep.negative_count += 1 if x == y else 2
            if rep.first_negative is None:
                rep.first_negative = (x, y, z, m)
    if not rep.integral:
        return None, rep
    return tensor, rep


def verlinde_raw(world: World) -> tuple[Optional[np.ndarray], IntegralityReport]:
    """Structure constants of a raw world, indexed like its labels."""
    k = world.size
    sp = world.e_matrix().is_signed_permutation()
    signs = sp.signs if sp is not None and sp.perm == world.bar else (1,) * k
    s_rows = [world.s.row(w) for w in range(k)]
    inv_dim = [d.inv() for d in world.dim_r]
    c_cols = [[s_rows[w][world.bar[z]] * inv_dim[w] for w in range(k)] for z in range(k)]
    scale_inv = (world.global_dim * world.dim_unit_bar).inv()
    vals = _triple_sum(s_rows, c_cols, scale_inv, signs, world.s.conductor, k)
    return _collect(vals, k)


def signed_verlinde(sldeg) -> tuple[Optional[np.ndarray], IntegralityReport]:
    """Quotient structure constants of a slightly degenerate reduction."""
    return verlinde_raw(sldeg.world())


def verlinde_fusion(datum: ModularDatum) -> tuple[Optional[FusionTensor], IntegralityReport]:
    """Structure constants of a normalized datum, with duality read off the tensor."""
    k = datum.size
    s = datum.s_matrix
    unit_row = s.row(datum.unit)
    if any(e.is_zero() for e in unit_row):
        bad = next(i for i, e in enumerate(unit_row) if e.is_zero())
        raise ZeroDivisionError(f"unit row vanishes at {datum.labels[bad]}")
    inv_unit = [e.inv() for e in unit_row]
    # the summation index is the column index l: hand the core the rows of S^T
    a_rows = [s.col(l) for l in range(k)]
    c_cols = [[s[z, l].conj() * inv_unit[l] for l in range(k)] for z in range(k)]
    one = CycNum.from_rational(1)
    vals = _triple_sum(a_rows, c_cols, one, (1,) * k, s.conductor, k)
    tensor, rep = _collect(vals, k)
    if tensor is None:
        return None, rep
    duality = derive_duality(tensor, datum.unit)
    if duality is None:
        rep.duality_ok = False
        return None, rep
    return FusionTensor(datum.labels, tensor, datum.unit, duality), rep
