"""Instance caps shared by every module.

Caps guard against accidental blow-ups; they are plain module-level values so
experiments can raise them (``gridcover.config.CAPS.max_points = ...``).
"""

from dataclasses import dataclass


class CapExceeded(ValueError):
    """The instance is larger than a configured cap."""


@dataclass
class Caps:
    max_points: int = 10**6
    max_dim: int = 8
    # orthoconvex enumeration: box side in grid points
    ortho_enum_unbounded: int = 7
    ortho_enum_bounded: int = 12
    # orthoconvex dynamic-programming predicate: box side in grid points
    ortho_dp_side: int = 40
    line_candidates: int = 2000
    circle_candidates: int = 60
    generic_candidates: int = 20
    fixed_shape_offsets: int = 16
    max_period: int = 12
    freedom_universe: int = 2000


CAPS = Caps()
