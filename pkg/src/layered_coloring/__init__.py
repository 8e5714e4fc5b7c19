"""Clustered 3-colouring of graphs with bounded layered treewidth and bounded degree."""
from .bounds import Bounds, compute_bounds, measured_bounds
from .cluster2 import TreePartition, parity_two_color, rootmost_assignment, tree_partition, two_color_clustered
from .enlarge import AugmentResult, LinkageEntry, LinkageFamily, augment, measure_overlap
from .families import FamilySpec, generate_family, random_ktree_subgraph
from .graph import (
    Coloring,
    Graph,
    Layering,
    LayeredTreeDecomposition,
    TreeDecomposition,
    connected_components,
    layered_width,
    restrict_td,
    validate_layering,
    validate_td,
)
from .oracles import exact_three_color, exact_two_color, hex_check
from .pipeline import PipelineConfig, PipelineReport, split_layers, three_color
from .planar import RotationSystem, planar_ltd

__version__ = "0.1.0"
