"""Lubin-Tate formal groups, (phi_q, Gamma) operators and lattice modules."""

import json

from ._lt import InputError, PrecisionError
from . import _lt

__all__ = ["InputError", "PrecisionError", "formal_group", "verify", "module"]


def formal_group(p, h, prec=12, wmax=12):
    """Formal-group table ([p], S, log, exp, Q_k, sample [a]) as a dict."""
    return json.loads(_lt.formal_group(p, h, prec, wmax))


def verify(suite="all", p=2, h=1, prec=12, wmax=12, level=0, seed=1, samples=5, jobs=1):
    """Runs a verification suite; returns (report, exit_code)."""
    text, code = _lt.verify(suite, p, h, prec, wmax, level, seed, samples, jobs)
    return json.loads(text), code


def module(spec, action="build", level=0, jobs=1):
    """Builds M(D) for a module spec (dict or JSON text); returns (report, exit_code).

    action is "build", "stability" or "roundtrip"; exit codes follow the
    command-line tool (0 pass, 1 fail, 3 uncertifiable).
    """
    if not isinstance(spec, str):
        spec = json.dumps(spec)
    text, code = _lt.module(spec, action, level, jobs)
    return json.loads(text), code
