"""Orbit hulls, convex polynomials, and convex-cyclicity criteria.

The heavy lifting lives in the compiled ``_core`` module; this package adds
small helpers for assembling operator specs from plain python data.
"""

import json as _json

from ._core import (  # noqa: F401
    ConvexPolynomial,
    Operator,
    OracleMissError,
    OverflowGuardError,
    ToolkitError,
    __version__,
    adjoint_point_spectrum,
    best_convex_approximation,
    brute_force_simplex_oracle,
    cesaro_mean,
    classify_operator,
    compute_orbit,
    conjugate_confinement_witness,
    density_probe,
    diagonal_classifier,
    direct_sum_pm,
    disk_touching_polynomial,
    epsilon_greedy_approximation,
    epsilon_greedy_mock,
    family_probe,
    hahn_banach_probe,
    is_m_isometry,
    m_isometry_defect,
    make_convex,
    misometry_seminorm_estimate,
    necessary_conditions_report,
    operator_norm,
    parse_convex_polynomial,
    pkc,
    pkc_identity_residual,
    poly_power,
    preset_names,
    range_density_defect,
    resolve_preset,
    run_experiment_json,
    scale_operator,
    set_S_membership,
    simplex_least_squares,
    substitute_monomial,
)


def _pair(z):
    z = complex(z)
    return [z.real, z.imag]


def diagonal(entries):
    """Spec dict for a diagonal operator."""
    return {"type": "diagonal", "entries": [_pair(z) for z in entries]}


def dense(rows):
    return {"type": "dense", "rows": [[_pair(z) for z in row] for row in rows]}


def identity(dim):
    return {"type": "identity", "dim": dim}


def backward_shift(weights, dim):
    return {"type": "backward_shift", "weights": list(weights), "dim": dim}


def forward_shift(weights, dim):
    return {"type": "forward_shift", "weights": list(weights), "dim": dim}


def op_sum(*terms):
    """Spec dict for sum(coeff_k * spec_k); terms are (coeff, spec) pairs."""
    return {
        "type": "sum",
        "terms": [{"coeff": _pair(c), "spec": s} for c, s in terms],
    }


def direct_sum(*parts):
    return {"type": "direct_sum", "parts": list(parts)}


def scale(factor, inner):
    return {"type": "scale", "factor": _pair(factor), "spec": inner}


def negate(inner):
    return {"type": "negate", "spec": inner}


def build(spec):
    """Materialize an Operator from a spec dict (or JSON string)."""
    if isinstance(spec, str):
        return Operator.from_spec(spec)
    return Operator.from_spec(_json.dumps(spec))


def run_experiment(config):
    """Run a batch experiment from a config dict; returns the report dict."""
    return _json.loads(run_experiment_json(_json.dumps(config)))
