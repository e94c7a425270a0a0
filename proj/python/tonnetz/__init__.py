"""Persistent homology fingerprints of music on the Tonnetz torus."""

from ._core import (
    Dendrogram,
    DiagramFeatures,
    Merge,
    MidiError,
    Note,
    PersistenceDiagram,
    ProperPoint,
    __version__,
    bottleneck_distance,
    build_tonnetz,
    connected_components,
    deform,
    diagram_features,
    diagrams,
    distance_matrix,
    freq_to_pitch,
    h0_oracle,
    hierarchical_cluster,
    induced_subcomplex,
    parse_midi,
    pitch_class,
    point_distance,
    profile,
    randomize,
    segment,
    transpose,
)

__all__ = [
    "Dendrogram",
    "DiagramFeatures",
    "Merge",
    "MidiError",
    "Note",
    "PersistenceDiagram",
    "ProperPoint",
    "__version__",
    "bottleneck_distance",
    "build_tonnetz",
    "connected_components",
    "deform",
    "diagram_features",
    "diagrams",
    "distance_matrix",
    "freq_to_pitch",
    "h0_oracle",
    "hierarchical_cluster",
    "induced_subcomplex",
    "parse_midi",
    "pitch_class",
    "point_distance",
    "profile",
    "randomize",
    "segment",
    "transpose",
]
