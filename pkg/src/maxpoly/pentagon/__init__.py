from .area import PentagonSolution, area_A, best_area, dA_dx, pentagon_caps, pentagon_points, tight_pairs, x0_of_r
from .capped import CapMatrix, maximize_capped_polygon
from .cases import TAGS, WOODALL_EDGES, CaseEAngles, DiameterGraphCase, case_e_area, case_e_scan, case_max

__all__ = [
    "TAGS",
    "WOODALL_EDGES",
    "CapMatrix",
    "CaseEAngles",
    "DiameterGraphCase",
    "PentagonSolution",
    "area_A",
    "best_area",
    "case_e_area",
    "case_e_scan",
    "case_max",
    "dA_dx",
    "maximize_capped_polygon",
    "pentagon_caps",
    "pentagon_points",
    "tight_pairs",
    "x0_of_r",
]
