"""Queue layouts of planar 3-trees."""

from .engine import five_queue_layout
from .graph_core import (
    SimpleGraph,
    StackedTriangulation,
    build_from_stellations,
    goldner_harary,
    random_3tree,
    recognize,
)
from .verify import (
    LinearOrder,
    PatternCertificate,
    QueueLayout,
    assign_min_queues,
    exact_queue_number,
    find_twist_or_necklace,
    is_valid_queue_layout,
    max_rainbow,
)

__all__ = [
    "SimpleGraph",
    "StackedTriangulation",
    "build_from_stellations",
    "goldner_harary",
    "random_3tree",
    "recognize",
    "five_queue_layout",
    "LinearOrder",
    "PatternCertificate",
    "QueueLayout",
    "assign_min_queues",
    "exact_queue_number",
    "find_twist_or_necklace",
    "is_valid_queue_layout",
    "max_rainbow",
]
