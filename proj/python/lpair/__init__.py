"""Exact recognition, classification and construction of Leonard pairs.

Matrices are passed as ``{"field": "Q", "rows": [[...], ...]}`` dicts or as
plain nested lists together with ``field=``; entries may be ints or strings
such as ``"3/2"``, ``"1+2*s"`` (``s`` = sqrt m). Parameter arrays are dicts
with keys ``field, d, theta, theta_star, varphi, phi``. Every field element
comes back as a string.
"""

import json

from . import _core
from ._core import FieldError

__all__ = [
    "FieldError",
    "char_poly",
    "construct_bidiagonal",
    "construct_tridiagonal",
    "example_section2",
    "extract_parameter_array",
    "find_g",
    "fingerprint",
    "fit_askey_wilson",
    "is_leonard_pair",
    "lattice_pair",
    "poly_characterization",
    "run_cli",
    "sl2_pair",
    "uq_pair",
    "validate",
    "verify",
]


def _matrix(m, field):
    if isinstance(m, dict):
        doc = dict(m)
        if field is not None:
            doc["field"] = field
    else:
        doc = {"field": field or "Q", "rows": [[str(x) for x in row] for row in m]}
    return json.dumps(doc)


def _array(pa):
    doc = {k: ([str(x) for x in v] if isinstance(v, (list, tuple)) else v) for k, v in pa.items()}
    return json.dumps(doc)


def _load(text):
    return None if text is None else json.loads(text)


def _pair(text):
    doc = json.loads(text)
    return doc["a"], doc["astar"]


def verify(a, a_star, field=None):
    """Full verification report for the pair (A, A*)."""
    return _load(_core.verify(_matrix(a, field), _matrix(a_star, field)))


def is_leonard_pair(a, a_star, field=None):
    return _core.is_leonard_pair(_matrix(a, field), _matrix(a_star, field))


def extract_parameter_array(a, a_star, field=None):
    """Parameter array of the canonical Leonard system, or None."""
    return _load(_core.extract_parameter_array(_matrix(a, field), _matrix(a_star, field)))


def fit_askey_wilson(a, a_star, field=None, beta=None):
    """Askey-Wilson coefficients, or None when the relations have no solution."""
    return _load(_core.fit_askey_wilson(_matrix(a, field), _matrix(a_star, field),
                                        None if beta is None else str(beta)))


def char_poly(m, field=None):
    """Coefficients, constant term first."""
    return _load(_core.char_poly(_matrix(m, field)))


def validate(pa):
    return _load(_core.validate(_array(pa)))


def construct_bidiagonal(pa):
    return _pair(_core.construct_bidiagonal(_array(pa)))


def construct_tridiagonal(pa, split="unit"):
    return _pair(_core.construct_tridiagonal(_array(pa), split))


def find_g(pa):
    return _load(_core.find_g(_array(pa)))


def poly_characterization(pa):
    return _core.poly_characterization(_array(pa))


def fingerprint(pa):
    return _load(_core.fingerprint(_array(pa)))


def example_section2(field="Q"):
    return _pair(_core.example_section2(field))


def sl2_pair(d):
    """A = h, A* = e + f on the irreducible module of dimension d + 1."""
    return _pair(_core.sl2_pair(d))


def uq_pair(q, epsilon, d, alpha, beta, field="Q"):
    return _load(_core.uq_pair(field, str(q), epsilon, d, str(alpha), str(beta)))


def lattice_pair(n, q, alpha=1, beta=5):
    """Pair on the subspace lattice of GF(q)^n with its irreducible components."""
    return _load(_core.lattice_pair(n, q, str(alpha), str(beta)))


def run_cli(args):
    """Runs the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
