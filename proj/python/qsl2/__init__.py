"""Python bindings for the qsl2 numerical core."""

import json

from ._core import (
    Color,
    ConfigError,
    DiagramError,
    DomainError,
    Error,
    ParseError,
    Rep,
    RootData,
    act_K,
    build_rep,
    dual_rep,
    intertwiner_space,
    make_root_data,
    qdim,
    qint,
    qtrace,
    sprime,
    sprime_formula,
)
from . import _core


def _complex(pair):
    return complex(pair[0], pair[1])


def invariant(text, ref=None, cut=None, m=None, l=None, theta="theta1", rho=True, coupons=None, tol=1e-9):
    """Evaluate a tangle-DSL document. `coupons` may be a dict or a JSON string."""
    if isinstance(coupons, dict):
        coupons = json.dumps(coupons)
    out = json.loads(_core._invariant_json(text, ref, cut, m, l, theta, rho, coupons, tol))
    for key in ("invariant", "tangle_scalar", "sprime_vu", "sprime_uv"):
        out[key] = _complex(out[key])
    return out


def run_checks(m=1, l=3, tol=1e-9, theta="theta1", rho=True, seed=1):
    return json.loads(_core._run_checks_json(m, l, tol, theta, rho, seed))
