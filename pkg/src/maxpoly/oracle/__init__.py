from .config import SearchConfig, SearchResult
from .projection import ProjectionReport, project_to_bisector, verify_projection_monotonicity
from .search import independent_violation, search_max_area_polygon, search_max_volume_3d

__all__ = [
    "ProjectionReport",
    "SearchConfig",
    "SearchResult",
    "independent_violation",
    "project_to_bisector",
    "search_max_area_polygon",
    "search_max_volume_3d",
    "verify_projection_monotonicity",
]
