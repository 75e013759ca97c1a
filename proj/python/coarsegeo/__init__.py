"""Controlled products and finite-scale boundaries on metric spaces.

Thin convenience layer over the compiled core: spaces and products are
built from the same JSON specs the CLI consumes, and every analysis
returns plain dicts/lists.
"""

import json as _json

from . import _core
from ._core import (  # noqa: F401
    DomainError,
    Product,
    Space,
    SpecError,
    __version__,
    check_cp4,
    delta,
    extract_cp_envelopes,
    gromov_product,
    trivial_product,
    vn_related,
)


def _text(obj):
    return obj if isinstance(obj, str) else _json.dumps(obj)


def build_space(spec):
    """Build a metric space from a space-spec dict (or JSON string)."""
    return _core.build_space(_text(spec))


def build_product(descriptor, space):
    """Build a product oracle from a descriptor dict (or JSON string)."""
    return _core.build_product(_text(descriptor), space)


def sample(space, spec):
    return _core.sample(space, _text(spec))


def annulus_sample(space, r_in, r_out, spec):
    return _core.annulus_sample(space, r_in, r_out, _text(spec))


def shadow_cells(product, r_in, r_out, n, spec):
    return _core.shadow_cells(product, r_in, r_out, n, _text(spec))


def refinement_profile(product, radius_ladder, n_ladder, spec):
    return _core.refinement_profile(product, radius_ladder, n_ladder,
                                    _text(spec))


def coarse_equivalence_check(p, q, spec, truncation=(), keys=()):
    return _core.coarse_equivalence_check(p, q, _text(spec),
                                          list(truncation), list(keys))


def variation_profiles(function_spec, product, points, q_ladder, r_ladder,
                       b_ladder):
    return _core.variation_profiles(_text(function_spec), product,
                                    list(points), list(q_ladder),
                                    list(r_ladder), list(b_ladder))


def run(config):
    """Run a CLI-style config; returns (exit_code, report dict)."""
    return _core.run_config(_text(config))
