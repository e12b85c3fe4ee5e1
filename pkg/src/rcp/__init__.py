"""Range closest-pair queries for translates of a fixed shape."""
from .candidates import (CandidatePair, CandidateSet, cowedge_candidates, halfplane_candidates,
                         short_candidates, wedge_candidates)
from .cowedge_rcp import CoWedgeRcp
from .geometry import (CoWedge, Disc, GeometryError, Halfplane, PointPair, PolygonWithHoles,
                       Wedge)
from .oracle import RangePredicate, closest_pair_brute, rcp_answer
from .point_location import Locator
from .polygon_rcp import PolygonRcp
from .smooth_rcp import SmoothRcp, compute_tau
from .wedge_rcp import WedgeRcp

__all__ = [
    "CandidatePair", "CandidateSet", "CoWedge", "CoWedgeRcp", "Disc", "GeometryError", "Halfplane",
    "Locator", "PointPair", "PolygonRcp", "PolygonWithHoles", "RangePredicate", "SmoothRcp", "Wedge",
    "WedgeRcp", "closest_pair_brute", "compute_tau", "cowedge_candidates", "halfplane_candidates",
    "rcp_answer", "short_candidates", "wedge_candidates",
]
