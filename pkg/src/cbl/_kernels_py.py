"""Pure-Python polynomial term kernels.

A term map is a ``dict`` from a packed exponent key to a nonzero rational
coefficient (``int`` or ``fractions.Fraction``).  Exponents are packed
``BITS`` bits per variable, least significant bits for the first variable,
so multiplying monomials is integer addition of keys.
"""

BITS = 8
MASK = (1 << BITS) - 1


def add_terms(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    get = out.get
    for k, c in b.items():
        s = get(k, 0) + c
        if s:
            out[k] = s
        else:
            del out[k]
    return out


def sub_terms(a, b):
    out = dict(a)
    get = out.get
    for k, c in b.items():
        s = get(k, 0) - c
        if s:
            out[k] = s
        else:
            del out[k]
    return out


def scale_terms(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def mul_terms(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    bitems = list(b.items())
    for ka, ca in a.items():
        for kb, cb in bitems:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def partial_terms(a, i):
    shift = BITS * i
    unit = 1 << shift
    out = {}
    for k, c in a.items():
        e = (k >> shift) & MASK
        if e:
            out[k - unit] = c * e
    return out


def axpy_terms(acc, c, a):
    """In place: ``acc += c * a``; returns ``acc``."""
    get = acc.get
    for k, v in a.items():
        s = get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc
