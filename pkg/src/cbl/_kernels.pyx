# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled polynomial term kernels; same contract as ``_kernels_py``."""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem, PyDict_DelItem, PyDict_Next
from cpython.object cimport PyObject

cdef enum:
    _BITS = 8

BITS = _BITS
MASK = (1 << _BITS) - 1

cdef object ZERO = 0


cpdef dict add_terms(dict a, dict b):
    cdef dict out
    cdef Py_ssize_t pos = 0
    cdef PyObject *pk
    cdef PyObject *pv
    cdef PyObject *cur
    cdef object s
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    while PyDict_Next(b, &pos, &pk, &pv):
        cur = PyDict_GetItem(out, <object>pk)
        if cur is NULL:
            PyDict_SetItem(out, <object>pk, <object>pv)
        else:
            s = <object>cur + <object>pv
            if s:
                PyDict_SetItem(out, <object>pk, s)
            else:
                PyDict_DelItem(out, <object>pk)
    return out


cpdef dict sub_terms(dict a, dict b):
    cdef dict out = a.copy()
    cdef Py_ssize_t pos = 0
    cdef PyObject *pk
    cdef PyObject *pv
    cdef PyObject *cur
    cdef object s
    while PyDict_Next(b, &pos, &pk, &pv):
        cur = PyDict_GetItem(out, <object>pk)
        if cur is NULL:
            PyDict_SetItem(out, <object>pk, -(<object>pv))
        else:
            s = <object>cur - <object>pv
            if s:
                PyDict_SetItem(out, <object>pk, s)
            else:
                PyDict_DelItem(out, <object>pk)
    return out


cpdef dict scale_terms(dict a, object c):
    cdef dict out = {}
    cdef Py_ssize_t pos = 0
    cdef PyObject *pk
    cdef PyObject *pv
    if not c:
        return out
    while PyDict_Next(a, &pos, &pk, &pv):
        PyDict_SetItem(out, <object>pk, <object>pv * c)
    return out


cpdef dict mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef list kb, cb
    cdef Py_ssize_t nb, j
    cdef Py_ssize_t pos = 0
    cdef PyObject *pk
    cdef PyObject *pv
    cdef PyObject *cur
    cdef object k, ka, ca, prod
    if len(a) < len(b):
        a, b = b, a
    kb = list(b.keys())
    cb = list(b.values())
    nb = len(kb)
    while PyDict_Next(a, &pos, &pk, &pv):
        ka = <object>pk
        ca = <object>pv
        for j in range(nb):
            k = ka + kb[j]
            prod = ca * cb[j]
            cur = PyDict_GetItem(out, k)
            if cur is NULL:
                PyDict_SetItem(out, k, prod)
            else:
                PyDict_SetItem(out, k, <object>cur + prod)
    return {k: v for k, v in out.items() if v}


cpdef dict partial_terms(dict a, int i):
    cdef dict out = {}
    cdef Py_ssize_t pos = 0
    cdef PyObject *pk
    cdef PyObject *pv
    cdef int shift = _BITS * i
    cdef object unit = (<object>1) << shift
    cdef object k
    cdef long e
    while PyDict_Next(a, &pos, &pk, &pv):
        k = <object>pk
        e = (k >> shift) & ((1 << _BITS) - 1)
        if e:
            PyDict_SetItem(out, k - unit, <object>pv * e)
    return out


cpdef dict axpy_terms(dict acc, object c, dict a):
    """In place: ``acc += c * a``; returns ``acc``."""
    cdef Py_ssize_t pos = 0
    cdef PyObject *pk
    cdef PyObject *pv
    cdef PyObject *cur
    cdef object s
    while PyDict_Next(a, &pos, &pk, &pv):
        cur = PyDict_GetItem(acc, <object>pk)
        if cur is NULL:
            s = c * <object>pv
            if s:
                PyDict_SetItem(acc, <object>pk, s)
        else:
            s = <object>cur + c * <object>pv
            if s:
                PyDict_SetItem(acc, <object>pk, s)
            else:
                PyDict_DelItem(acc, <object>pk)
    return acc
