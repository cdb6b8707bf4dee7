//! Digital topology in the plane: c_u-adjacency, digital convexity, constructive
//! c2-retractions of Z² onto convex disks and their unions, and an exhaustive
//! decision procedure for the approximate fixed point property of finite
//! images.

pub mod afpp;
pub mod catalog;
pub mod convexity;
pub mod image;
pub mod lines;
pub mod retraction;

pub use afpp::{
    compose_through_retraction, count_continuous_self_maps, search_afpp_violation, search_fixed_point_free,
    verify_no_approx_fixed_point, AfppCertificate, ComposeError, FppCertificate, SearchError, SearchStats,
    DEFAULT_BUDGET,
};
pub use convexity::{
    decompose_disk, hull_vertices, interior_angle, is_convex, ClosedCurve, ConvexityReport, DiskError, DiskReport,
    Edge, NotConvexReason,
};
pub use image::{
    adjacent, adjacent_or_equal, adjacent_tuples, is_continuous, AdjacencyKind, DigitalImage, ImageError, Point,
    SelfMap, Symmetry, Window,
};
pub use lines::{
    classify_segment, closed_side, is_separation_line, sandwich_lines, separation_candidates, separation_line,
    DigitalLine, HalfPlane, LineError, Orientation, Segment, SegmentError, SegmentShape, SeparationError, Side,
};
pub use retraction::{
    build_anchored_retraction, build_axis_retraction, build_edge_union_retraction, build_parallel_retraction,
    build_slanted_retraction, build_wedge_retraction, check_wedge, unique_nearest, verify_restriction,
    verify_retraction, verify_retraction_with, AxisScheme, FaceAnchor, FiniteRetraction, GluedScheme, PointMap,
    Retraction, RetractionError, Scheme, SlantedScheme, Slope, TableScheme, VerificationReport, VerifyOptions,
    Violation, WedgeError, WedgeInfo,
};
