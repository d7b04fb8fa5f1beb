"""JSON and DOT input/output.

All formats are UTF-8 JSON objects.  A poset is {"name", "elements", "le"}
where "le" lists generating pairs (covering pairs when emitted by this
module); the loader computes the reflexive transitive closure.  A morphism
is {"from": <poset>, "to": <poset>, "map": {src: dst}}.  A group element is
{"poset": <poset>, "coeffs": {label: int}}.  A matrix is
{"space": {"poset": <poset>, "n": N[, "mod": p]}, "entries": [[row, col,
"num/den"], ...]} over the canonical point enumeration of the space.

Loaders raise SchemaError naming the offending field; emitters produce
byte-stable output (sorted keys, sorted entry lists).
"""

import json
from fractions import Fraction

from . import hahn
from .errors import CycleError, SchemaError, UnknownLabel
from .maps import PosetMap
from .posets import Poset, lower_sets, make_poset
from .truncation import SparseMat, TruncationSpace


# ---------------------------------------------------------------------------
# posets


def poset_to_dict(P):
    return {
        "name": P.name,
        "elements": list(P.elements),
        "le": [list(pair) for pair in P.covers()],
    }


def load_poset_dict(d, where="poset"):
    if not isinstance(d, dict):
        raise SchemaError("%s: expected an object, got %s" % (where, type(d).__name__))
    if "elements" not in d:
        raise SchemaError("%s: missing field 'elements'" % where)
    elements = d["elements"]
    if not isinstance(elements, list) or not all(
        isinstance(e, str) for e in elements
    ):
        raise SchemaError("%s: 'elements' must be a list of strings" % where)
    rel = d.get("le", [])
    if not isinstance(rel, list):
        raise SchemaError("%s: 'le' must be a list of pairs" % where)
    pairs = []
    for k, item in enumerate(rel):
        if (
            not isinstance(item, (list, tuple))
            or len(item) != 2
            or not all(isinstance(x, str) for x in item)
        ):
            raise SchemaError(
                "%s: 'le' entry %d is not a pair of labels" % (where, k)
            )
        pairs.append((item[0], item[1]))
    name = d.get("name", "")
    if not isinstance(name, str):
        raise SchemaError("%s: 'name' must be a string" % where)
    try:
        return make_poset(elements, pairs, name=name)
    except CycleError as e:
        raise SchemaError("%s: %s" % (where, e))
    except UnknownLabel as e:
        raise SchemaError("%s: %s" % (where, e))
    except ValueError as e:
        raise SchemaError("%s: %s" % (where, e))


def load_poset(path):
    return load_poset_dict(_read_json(path), where=str(path))


def dump_poset(P):
    return _dumps(poset_to_dict(P))


# ---------------------------------------------------------------------------
# morphisms


def morphism_to_dict(f):
    return {
        "from": poset_to_dict(f.source),
        "to": poset_to_dict(f.target),
        "map": {k: f.mapping[k] for k in f.source.elements},
    }


def load_morphism_dict(d, where="morphism"):
    if not isinstance(d, dict):
        raise SchemaError("%s: expected an object" % where)
    for field in ("from", "to", "map"):
        if field not in d:
            raise SchemaError("%s: missing field '%s'" % (where, field))
    source = load_poset_dict(d["from"], where="%s.from" % where)
    target = load_poset_dict(d["to"], where="%s.to" % where)
    mapping = d["map"]
    if not isinstance(mapping, dict):
        raise SchemaError("%s: 'map' must be an object" % where)
    try:
        return PosetMap(source, target, mapping)
    except UnknownLabel as e:
        raise SchemaError("%s: %s" % (where, e))


def load_morphism(path):
    return load_morphism_dict(_read_json(path), where=str(path))


def dump_morphism(f):
    return _dumps(morphism_to_dict(f))


# ---------------------------------------------------------------------------
# group elements


def hahn_to_dict(x):
    return {"poset": poset_to_dict(x.parent), "coeffs": x.as_dict()}


def load_hahn_dict(d, where="element"):
    if not isinstance(d, dict):
        raise SchemaError("%s: expected an object" % where)
    if "poset" not in d or "coeffs" not in d:
        raise SchemaError("%s: needs fields 'poset' and 'coeffs'" % where)
    P = load_poset_dict(d["poset"], where="%s.poset" % where)
    coeffs = d["coeffs"]
    if not isinstance(coeffs, dict) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in coeffs.values()
    ):
        raise SchemaError("%s: 'coeffs' must map labels to integers" % where)
    try:
        return hahn.element(P, coeffs)
    except UnknownLabel as e:
        raise SchemaError("%s: %s" % (where, e))


def dump_hahn(x):
    return _dumps(hahn_to_dict(x))


# ---------------------------------------------------------------------------
# matrices


def matrix_to_dict(m):
    space = m.space
    default = TruncationSpace(space.poset, space.n)
    if space != default:
        raise SchemaError(
            "only matrices over the canonical space of a poset are dumpable"
        )
    head = {"poset": poset_to_dict(space.poset), "n": space.n}
    if m.mod is not None:
        head["mod"] = m.mod
    entries = [
        [r, c, _value_str(v)] for (r, c), v in sorted(m.entries.items())
    ]
    return {"space": head, "entries": entries}


def load_matrix_dict(d, where="matrix"):
    if not isinstance(d, dict) or "space" not in d or "entries" not in d:
        raise SchemaError("%s: needs fields 'space' and 'entries'" % where)
    head = d["space"]
    if not isinstance(head, dict) or "poset" not in head or "n" not in head:
        raise SchemaError("%s: 'space' needs fields 'poset' and 'n'" % where)
    P = load_poset_dict(head["poset"], where="%s.space.poset" % where)
    n = head["n"]
    if not isinstance(n, int) or n < 2:
        raise SchemaError("%s: 'n' must be an integer depth of at least 2" % where)
    mod = head.get("mod")
    if mod is not None and (not isinstance(mod, int) or mod < 2):
        raise SchemaError("%s: 'mod' must be an integer of at least 2" % where)
    space = TruncationSpace(P, n)
    entries = {}
    for k, item in enumerate(d["entries"]):
        if not isinstance(item, (list, tuple)) or len(item) != 3:
            raise SchemaError("%s: entry %d is not a [row, col, value] triple"
                              % (where, k))
        r, c, v = item
        if not isinstance(r, int) or not isinstance(c, int):
            raise SchemaError("%s: entry %d has non-integer indices" % (where, k))
        if not 0 <= r < len(space) or not 0 <= c < len(space):
            raise SchemaError(
                "%s: entry %d indexes outside the %d-point space"
                % (where, k, len(space))
            )
        try:
            entries[(r, c)] = _value_parse(v, mod)
        except (ValueError, ZeroDivisionError):
            raise SchemaError("%s: entry %d has a bad value %r" % (where, k, v))
    return SparseMat(space, entries, mod=mod)


def dump_matrix(m):
    return _dumps(matrix_to_dict(m))


def _value_str(v):
    return str(v)


def _value_parse(s, mod):
    if isinstance(s, int) and not isinstance(s, bool):
        return s if mod is None else s % mod
    if not isinstance(s, str):
        raise ValueError("expected a value string")
    if mod is not None:
        return int(s) % mod
    return Fraction(s)


# ---------------------------------------------------------------------------
# DOT


def emit_dot(P, graph_name="poset"):
    """Hasse diagram: one arrow per covering pair, bottoms at the bottom."""
    lines = ["digraph %s {" % _dot_id(graph_name or "poset"), "  rankdir=BT;"]
    for e in P.elements:
        lines.append('  "%s";' % e)
    for a, b in P.covers():
        lines.append('  "%s" -> "%s";' % (a, b))
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_ideal_lattice_dot(P, graph_name="ideals"):
    """Inclusion diagram of all lower sets; edges are covering inclusions."""
    sets = [frozenset(L.members) for L in lower_sets(P)]
    sets.sort(key=lambda s: (len(s), tuple(sorted(s))))
    label = lambda s: "{%s}" % ",".join(sorted(s))
    lines = ["digraph %s {" % _dot_id(graph_name), "  rankdir=BT;"]
    for s in sets:
        lines.append('  "%s";' % label(s))
    for a in sets:
        for b in sets:
            if a < b and len(b - a) == 1:
                lines.append('  "%s" -> "%s";' % (label(a), label(b)))
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_id(name):
    return "".join(ch if ch.isalnum() or ch == "_" else "_" for ch in name) or "g"


# ---------------------------------------------------------------------------
# shared plumbing


def _read_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SchemaError("%s: file not found" % (path,))
    except json.JSONDecodeError as e:
        raise SchemaError(
            "%s: invalid JSON at line %d column %d: %s"
            % (path, e.lineno, e.colno, e.msg)
        )


def _dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
