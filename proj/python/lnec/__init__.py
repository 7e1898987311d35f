"""Linear network error-correction codes: construction, analysis, decoding.

Networks, fields and codes are plain dicts in the same JSON layout the
`lnec` command-line tool reads and writes.
"""

import json

from . import _lnec
from ._lnec import (
    DimensionError,
    FieldTooSmall,
    Infeasible,
    InvalidInput,
    InvariantViolation,
    SizeGuardExceeded,
    __version__,
)


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def field(p, m=1, modulus=None):
    spec = {"p": p, "m": m}
    if modulus is not None:
        spec["modulus"] = list(modulus)
    return spec


def _field(f):
    if isinstance(f, int):
        return field(f)
    return f


def field_op(f, a, b, op):
    """add, sub, mul or div; division by zero returns None."""
    return _lnec.field_op(_text(_field(f)), a, b, op)


def mat_rank(f, rows):
    return _lnec.mat_rank(_text(_field(f)), [list(r) for r in rows])


def topo_order(network):
    return _lnec.topo_order(_text(network))


def min_cut(network, nodes):
    if isinstance(nodes, str):
        nodes = [nodes]
    return _lnec.min_cut(_text(network), list(nodes))


def pattern_rank(network, rho, node):
    return _lnec.pattern_rank(_text(network), list(rho), node)


def construct(network, kind, f, method="det", seed=None, collections=(), extended=False):
    """Returns {"code", "warnings", "realized_bound", "path_families"}."""
    out = _lnec.construct(_text(network), kind, _text(_field(f)), method, seed,
                          [list(c) for c in collections], extended)
    return json.loads(out)


def random_code(network, f, seed):
    return json.loads(_lnec.random_code(_text(network), _text(_field(f)), seed))


def analyze(network, code, targets=(), collections=(), channel_sets=(), max_weight=None):
    out = _lnec.analyze(_text(network), _text(code), list(targets),
                        [list(c) for c in collections], [list(x) for x in channel_sets], max_weight)
    return json.loads(out)


def transmit(network, code, node, message, errors=None):
    """Symbols received at `node`; `errors` maps channel ids to error values."""
    return _lnec.transmit(_text(network), _text(code), node, list(message), dict(errors or {}))


def decode(network, code, node, received):
    return json.loads(_lnec.decode(_text(network), _text(code), node, list(received)))


def bounds(network, rate=None):
    return json.loads(_lnec.bounds(_text(network), rate))
