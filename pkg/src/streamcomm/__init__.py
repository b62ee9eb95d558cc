"""Community detection on edge streams with an incremental two-level Louvain."""

from .densopt import DensityReport, adc, community_density, optimize_density
from .dynlouvain import AffectedSet, DynamicLouvain, StepReport
from .exceptions import (
    ConfigError,
    EmptyInputError,
    MissingEdgeError,
    OutOfOrderError,
    ParseError,
    StreamCommError,
    UndefinedModularityError,
    UnknownCommunityError,
    UnknownVertexError,
    WeightError,
)
from .gen import GenConfig, GroundTruthTimeline, generate
from .graph import DynGraph
from .louvain import Partition, aggregate, louvain_full, modularity, move_gain, one_level
from .metrics import Stopwatch, partition_similarity, stability
from .runner import ALGORITHMS, RunConfig, RunResult, process, run
from .streamio import parse_stream, write_stream
from .temporal import (
    Action,
    EdgeEvent,
    SnapshotSequence,
    TimeOrderedGraph,
    Window,
    WindowKind,
    WindowMode,
    WindowPolicy,
    expand_time_ordered,
    temporal_shortest_path,
)

__version__ = "0.1.0"
