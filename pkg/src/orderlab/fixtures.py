"""Named example posets used across tests, scripts, and the CLI.

Parametric names accept both spellings "chain3" and "chain(3)".
"""

import re
import string

from .posets import make_poset


def chain(k):
    """Total order on k letters."""
    labels = _letters(k)
    return make_poset(labels, list(zip(labels, labels[1:])), name="chain%d" % k)


def antichain(k):
    labels = _letters(k)
    return make_poset(labels, [], name="antichain%d" % k)


def diamond():
    return make_poset(
        ["a", "b", "c", "d"],
        [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
        name="diamond",
    )


def vee():
    """One bottom, two incomparable tops."""
    return make_poset(["a", "b", "c"], [("a", "b"), ("a", "c")], name="vee")


def lam():
    """Two incomparable bottoms, one top."""
    return make_poset(["a", "b", "c"], [("a", "c"), ("b", "c")], name="lambda")


def zigzag_prefix(k):
    """Levels 0..k of the two-column crisscross order.

    Each level {a_h, b_h} is an antichain and everything at a lower level
    sits below everything at a higher level, so the maximal chains pick one
    column letter per level.
    """
    if k < 0:
        raise ValueError("level index must be nonnegative")
    elements = []
    for h in range(k + 1):
        elements += ["a%d" % h, "b%d" % h]
    rel = []
    for h in range(k):
        for x in ("a%d" % h, "b%d" % h):
            for y in ("a%d" % (h + 1), "b%d" % (h + 1)):
                rel.append((x, y))
    return make_poset(elements, rel, name="zigzag_prefix%d" % k)


def ladder(k):
    """Two parallel k-step rails with rungs a_i below b_i."""
    if k < 1:
        raise ValueError("a ladder needs at least one rung")
    elements = ["a%d" % i for i in range(k)] + ["b%d" % i for i in range(k)]
    rel = []
    for i in range(k - 1):
        rel.append(("a%d" % i, "a%d" % (i + 1)))
        rel.append(("b%d" % i, "b%d" % (i + 1)))
    for i in range(k):
        rel.append(("a%d" % i, "b%d" % i))
    return make_poset(elements, rel, name="ladder%d" % k)


def _letters(k):
    if k < 0:
        raise ValueError("size must be nonnegative")
    if k > 26:
        raise ValueError("letter-labelled fixtures cap at 26 elements")
    return list(string.ascii_lowercase[:k])


PARAMETRIC = {
    "chain": chain,
    "antichain": antichain,
    "zigzag_prefix": zigzag_prefix,
    "ladder": ladder,
}

PLAIN = {
    "diamond": diamond,
    "vee": vee,
    "v": vee,
    "lambda": lam,
}

_NAME_RE = re.compile(r"^([a-z_]+)(?:\((\d+)\)|(\d+))?$")


def fixture(name):
    """Resolve a catalog name like 'chain3', 'chain(3)', or 'diamond'."""
    m = _NAME_RE.match(name.strip().lower())
    if not m:
        raise KeyError("unrecognized fixture name %r" % (name,))
    stem, num_paren, num_bare = m.groups()
    num = num_paren or num_bare
    if stem in PLAIN:
        if num is not None:
            raise KeyError("fixture %r takes no parameter" % (stem,))
        return PLAIN[stem]()
    if stem in PARAMETRIC:
        if num is None:
            raise KeyError("fixture %r needs a size, e.g. %s3" % (stem, stem))
        return PARAMETRIC[stem](int(num))
    raise KeyError("unknown fixture %r" % (name,))


def fixture_names():
    """Catalog listing with the parametric ones shown schematically."""
    out = ["%s(k)" % s for s in sorted(PARAMETRIC)]
    out += sorted(k for k in PLAIN if k not in ("v",))
    return sorted(out)
