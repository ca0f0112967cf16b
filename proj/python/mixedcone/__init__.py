"""Exact mixed volumes, mixed area measures, touching spaces, criticality,
pruning and support computations for rational polytopes.

Thin JSON-level wrapper around the C++ extension. Polytopes are dicts
``{"dim": n, "vertices": [["p/q", ...], ...]}``; eps-parametrized families use
coefficient arrays (lowest degree first) in place of the rational strings.
Directions are strings of comma-separated rationals, e.g. ``"0,1"``.
"""

import json as _json

from _mixedcone import (  # noqa: F401
    DomainError,
)
import _mixedcone as _core

__all__ = [
    "DomainError",
    "mixed_volume",
    "volume_oracle",
    "mixed_area_measure",
    "afi_gap",
    "touching_space",
    "cusp",
    "classify",
    "switching",
    "certify_extreme",
    "supp_membership",
    "prune_witness",
    "reduction_check",
    "run_law",
]


def _dir(u):
    if isinstance(u, str):
        return u
    return ",".join(str(x) for x in u)


def mixed_volume(tuple_of_polytopes):
    """Mixed volume of an n-tuple in R^n, as a rational string."""
    return _core.mixed_volume(_json.dumps(tuple_of_polytopes))


def volume_oracle(tuple_of_polytopes):
    """Finite-difference volume oracle; equals mixed_volume exactly."""
    return _core.volume_oracle(_json.dumps(tuple_of_polytopes))


def mixed_area_measure(tuple_of_polytopes):
    """Atomic mixed area measure of an (n-1)-tuple."""
    return _json.loads(_core.mixed_area_measure(_json.dumps(tuple_of_polytopes)))


def afi_gap(k, l, rest=()):
    return _json.loads(
        _core.afi_gap(_json.dumps(k), _json.dumps(l), _json.dumps(list(rest)))
    )


def touching_space(polytope, u):
    return _json.loads(_core.touching_space(_json.dumps(polytope), _dir(u)))


def cusp(polytope, u):
    return _json.loads(_core.cusp(_json.dumps(polytope), _dir(u)))


def classify(ambient, subspaces):
    doc = {"ambient": ambient, "subspaces": subspaces}
    return _json.loads(_core.classify(_json.dumps(doc)))


def switching(t, r, u):
    return _json.loads(_core.switching(_json.dumps({"T": t, "R": r}), _dir(u)))


def certify_extreme(measures, u):
    return _json.loads(_core.certify_extreme(_json.dumps(measures), _dir(u)))


def supp_membership(measures, u):
    return _json.loads(_core.supp_membership(_json.dumps(measures), _dir(u)))


def prune_witness(family, u):
    return _json.loads(_core.prune_witness(_json.dumps(family), _dir(u)))


def reduction_check(tuple_of_polytopes, k, e_basis):
    doc = {"tuple": tuple_of_polytopes, "k": k, "E": e_basis}
    return _json.loads(_core.reduction_check(_json.dumps(doc)))


def run_law(name, seed=0):
    """Run a named property suite; see the CLI `check` command."""
    return _json.loads(_core.run_law(name, seed))
