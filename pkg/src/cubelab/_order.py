"""Canonical ordering of opaque vertex ids.

Vertex ids coming from different generators mix ints, strings and nested
tuples, which Python refuses to compare directly.  ``canon`` maps any of
them to a key with a total order so that every set-valued output can be
emitted deterministically.
"""


def canon(v):
    if isinstance(v, bool):
        return (0, int(v))
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, (tuple, list)):
        return (2, tuple(canon(x) for x in v))
    if isinstance(v, frozenset):
        return (3, tuple(sorted(canon(x) for x in v)))
    return (4, repr(v))


def sort_canon(items):
    return sorted(items, key=canon)
