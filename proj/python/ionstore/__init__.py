"""Heralded photon-to-ion polarization storage in 40Ca+ (854 nm in, 393 nm herald out).

Schemes are given as a catalog name ("a".."e"), a scheme record (dict), or a path
to a scheme JSON file. Angles are in degrees. S1/2 state vectors are ordered
(m = -1/2, m = +1/2).
"""

import json
import os
from fractions import Fraction

from . import _core
from ._core import DomainError, ParseError, __version__, catalog_version

__all__ = [
    "DomainError",
    "ParseError",
    "catalog",
    "cgc",
    "efficiency",
    "larmor_period",
    "map_input",
    "optimize",
    "run_cli",
    "sweep",
    "transfer_matrices",
    "verify",
]


def _scheme(scheme):
    if isinstance(scheme, dict):
        return json.dumps(scheme)
    if isinstance(scheme, os.PathLike):
        return os.fspath(scheme)
    return scheme


def cgc(j1, m1, j2, m2, j, m):
    """<j1 m1; j2 m2 | j m>; arguments may be floats, ints, Fractions or "3/2" strings."""
    args = [float(Fraction(x)) if isinstance(x, str) else float(x) for x in (j1, m1, j2, m2, j, m)]
    return _core.cgc(*args)


def catalog():
    return json.loads(_core.catalog_json())


def transfer_matrices(scheme):
    """2x2 complex matrices (rows m_S = +1/2, -1/2; columns H, V), one per herald."""
    return _core.transfer_matrices(_scheme(scheme))


def efficiency(scheme):
    return _core.efficiency(_scheme(scheme))


def verify(scheme, tol_eff=1e-4, tol_fid=1e-4, validity_tol=1e-9):
    return _core.verify(_scheme(scheme), tol_eff, tol_fid, validity_tol)


def map_input(scheme, polarization):
    """Per-herald stored state for one input ("H", "V", "R", "L" or "theta,phi")."""
    return _core.map_input(_scheme(scheme), polarization)


def _psi_d(psi_d):
    if psi_d in ("single", "pair"):
        return psi_d, ""
    if isinstance(psi_d, str):
        key, _, value = psi_d.partition("=")
        twice = int(Fraction(value) * 2) if value else None
        if key == "m" and twice is not None:
            return "fixed", json.dumps([[twice, 1.0, 0.0]])
        if key == "pair" and twice is not None and twice > 0:
            return "fixed", json.dumps([[-twice, 1.0, 0.0], [twice, 1.0, 0.0]])
        raise ValueError(f"psi_d must be single, pair, m=<m>, pair=<m> or a list, got {psi_d!r}")
    # [[2m, re, im], ...] as in scheme records
    return "fixed", json.dumps([list(map(float, e)) for e in psi_d])


def optimize(psi_d="single", alpha_range=(0.0, 180.0), alpha_prime_range=(0.0, 180.0),
             lock_alpha=False, feasibility_tol=1e-9, seed=0, threads=1):
    family, record = _psi_d(psi_d)
    return _core.optimize(family, record, tuple(alpha_range), tuple(alpha_prime_range),
                          lock_alpha, float(feasibility_tol), int(seed), int(threads))


def sweep(scheme, param, lo, hi, steps=41):
    return _core.sweep(_scheme(scheme), param, float(lo), float(hi), int(steps))


def larmor_period(b_field_tesla):
    """S1/2 Larmor period in seconds."""
    return _core.larmor_period(b_field_tesla)


def run_cli(*args):
    """Runs the command-line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
