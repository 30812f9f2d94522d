# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of :mod:`modkit._kernel`.

Same call signatures and semantics.  Works on C int64 arithmetic and falls
back, per call, to the pure-Python backend whenever a coefficient could
overflow; results are therefore always exact.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free
from libc.stdint cimport int64_t

from . import _kernel as _py

BACKEND = "c"

divisors = _py.divisors
euler_phi = _py.euler_phi
cyclotomic_int_coeffs = _py.cyclotomic_int_coeffs
ConductorTable = _py.ConductorTable
table = _py.table
power_vector = _py.power_vector
normalize = _py.normalize

DEF MAXPHI = 64
cdef double SAFE = 2.0e18   # below 2^63 with ample margin


cdef class _CTab:
    cdef int phi
    cdef int nrows
    cdef int64_t max_row
    cdef int64_t* rows
    cdef bint usable

    def __dealloc__(self):
        if self.rows != NULL:
            PyMem_Free(self.rows)


cdef dict _ctabs = {}


cdef _CTab _get_ctab(tab):
    cdef _CTab ct = _ctabs.get(tab.n)
    cdef int i, j, phi, nrows
    if ct is not None:
        return ct
    ct = _CTab()
    phi = tab.phi
    nrows = len(tab.rows)
    ct.phi = phi
    ct.nrows = nrows
    ct.max_row = tab.max_row if tab.max_row < 2 ** 40 else 0
    ct.usable = phi <= MAXPHI and ct.max_row > 0
    ct.rows = NULL
    if ct.usable and nrows:
        ct.rows = <int64_t*> PyMem_Malloc(phi * nrows * sizeof(int64_t))
        try:
            for i in range(nrows):
                row = tab.rows[i]
                for j in range(phi):
                    ct.rows[i * phi + j] = row[j]
        except OverflowError:
            ct.usable = False
    _ctabs[tab.n] = ct
    return ct


cdef int64_t _gcd(int64_t a, int64_t b) noexcept:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _load(object seq, int64_t* dst, int64_t* maxabs) except -1:
    # returns length; raises OverflowError when an entry does not fit
    cdef int n = len(seq)
    cdef int i
    cdef int64_t v, m = 0
    if n > MAXPHI:
        raise OverflowError
    for i in range(n):
        v = seq[i]
        dst[i] = v
        if v < 0:
            v = -v
        if v > m:
            m = v
    maxabs[0] = m
    return n


cdef _pack(int64_t* num, int phi, int64_t den):
    # normalize in C, hand back python objects
    cdef int64_t g = 0
    cdef int i
    for i in range(phi):
        if num[i]:
            g = _gcd(g, num[i])
    if g == 0:
        return (0,) * phi, 1
    g = _gcd(g, den)
    if g > 1:
        for i in range(phi):
            num[i] //= g
        den //= g
    return tuple([num[i] for i in range(phi)]), den


cdef bint _mul_into(int64_t* a, int64_t ma, int64_t* b, int64_t mb,
                    int64_t* out, _CTab ct) noexcept:
    # out := a*b mod Phi; False when the magnitude gate fails
    cdef int phi = ct.phi
    cdef int i, j, k
    cdef int64_t conv[2 * MAXPHI]
    cdef int64_t ck
    cdef const int64_t* row
    if (<double> ma) * (<double> mb) * phi * (1.0 + phi * <double> ct.max_row) > SAFE:
        return False
    for i in range(2 * phi - 1):
        conv[i] = 0
    for i in range(phi):
        if a[i]:
            for j in range(phi):
                if b[j]:
                    conv[i + j] += a[i] * b[j]
    for i in range(phi):
        out[i] = conv[i]
    for k in range(phi, 2 * phi - 1):
        ck = conv[k]
        if ck:
            row = ct.rows + (k - phi) * phi
            for i in range(phi):
                if row[i]:
                    out[i] += ck * row[i]
    return True


def mul(num_a, den_a, num_b, den_b, tab):
    cdef _CTab ct = _get_ctab(tab)
    cdef int64_t a[MAXPHI]
    cdef int64_t b[MAXPHI]
    cdef int64_t out[MAXPHI]
    cdef int64_t ma, mb, da, db
    if not ct.usable:
        return _py.mul(num_a, den_a, num_b, den_b, tab)
    try:
        _load(num_a, a, &ma)
        _load(num_b, b, &mb)
        da = den_a
        db = den_b
    except OverflowError:
        return _py.mul(num_a, den_a, num_b, den_b, tab)
    if (<double> da) * (<double> db) > SAFE:
        return _py.mul(num_a, den_a, num_b, den_b, tab)
    if not _mul_into(a, ma, b, mb, out, ct):
        return _py.mul(num_a, den_a, num_b, den_b, tab)
    return _pack(out, ct.phi, da * db)


def add(num_a, den_a, num_b, den_b):
    cdef int64_t a[MAXPHI]
    cdef int64_t b[MAXPHI]
    cdef int64_t ma, mb, da, db, g, fa, fb
    cdef int n, i
    try:
        n = _load(num_a, a, &ma)
        _load(num_b, b, &mb)
        da = den_a
        db = den_b
    except OverflowError:
        return _py.add(num_a, den_a, num_b, den_b)
    g = _gcd(da, db)
    fa = db // g
    fb = da // g
    if ((<double> ma) * fa + (<double> mb) * fb > SAFE
            or (<double> da) * fa > SAFE):
        return _py.add(num_a, den_a, num_b, den_b)
    for i in range(n):
        a[i] = a[i] * fa + b[i] * fb
    return _pack(a, n, da * fa)


def scale(num, den, p, q):
    cdef int64_t a[MAXPHI]
    cdef int64_t ma, cp, cq, d
    cdef int n, i
    try:
        n = _load(num, a, &ma)
        cp = p
        cq = q
        d = den
    except OverflowError:
        return _py.scale(num, den, p, q)
    cdef int64_t ap = cp if cp >= 0 else -cp
    if (<double> ma) * ap > SAFE or (<double> d) * (cq if cq >= 0 else -cq) > SAFE:
        return _py.scale(num, den, p, q)
    for i in range(n):
        a[i] = a[i] * cp
    return _pack(a, n, d * cq)


def dot(nums_a, dens_a, nums_b, dens_b, tab):
    cdef _CTab ct = _get_ctab(tab)
    if not ct.usable:
        return _py.dot(nums_a, dens_a, nums_b, dens_b, tab)
    cdef int phi = ct.phi
    cdef int nterms = len(nums_a)
    cdef int64_t a[MAXPHI]
    cdef int64_t b[MAXPHI]
    cdef int64_t term[MAXPHI]
    cdef int64_t acc[MAXPHI]
    cdef int64_t ma, mb, da, db, tden, acc_den, acc_max, term_max
    cdef int64_t g, fa, fb
    cdef int i, t
    for i in range(phi):
        acc[i] = 0
    acc_den = 1
    acc_max = 0
    for t in range(nterms):
        try:
            _load(nums_a[t], a, &ma)
            _load(nums_b[t], b, &mb)
            da = dens_a[t]
            db = dens_b[t]
        except OverflowError:
            return _py.dot(nums_a, dens_a, nums_b, dens_b, tab)
        if (<double> da) * (<double> db) > SAFE:
            return _py.dot(nums_a, dens_a, nums_b, dens_b, tab)
        if not _mul_into(a, ma, b, mb, term, ct):
            return _py.dot(nums_a, dens_a, nums_b, dens_b, tab)
        term_max = 0
        for i in range(phi):
            g = term[i] if term[i] >= 0 else -term[i]
            if g > term_max:
                term_max = g
        tden = da * db
        if tden == acc_den:
            if (<double> acc_max) + term_max > SAFE:
                return _py.dot(nums_a, dens_a, nums_b, dens_b, tab)
            for i in range(phi):
                acc[i] += term[i]
        else:
            g = _gcd(acc_den, tden)
            fa = tden // g
            fb = acc_den // g
            if ((<double> acc_max) * fa + (<double> term_max) * fb > SAFE
                    or (<double> acc_den) * fa > SAFE):
                return _py.dot(nums_a, dens_a, nums_b, dens_b, tab)
            for i in range(phi):
                acc[i] = acc[i] * fa + term[i] * fb
            acc_den *= fa
        acc_max = 0
        for i in range(phi):
            g = acc[i] if acc[i] >= 0 else -acc[i]
            if g > acc_max:
                acc_max = g
    return _pack(acc, phi, acc_den)
