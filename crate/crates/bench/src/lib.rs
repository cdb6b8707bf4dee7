//! Benchmark inputs shared by the criterion targets.

use dplane_core::catalog::{make_annulus, make_diamond_disk, make_rectangle, make_ring};
use dplane_core::DigitalImage;

/// Images for the AFPP search, from propagation-only proofs to real branching.
pub fn afpp_inputs() -> Vec<(&'static str, DigitalImage)> {
    vec![
        ("square4", make_rectangle(0, 4, 0, 4).expect("nonempty")),
        ("diamond-disk3", make_diamond_disk(3)),
        ("ring8", make_ring()),
        ("annulus", make_annulus().x),
    ]
}

/// Convex disks of growing size for recognition and retraction checks.
pub fn disks() -> Vec<(&'static str, DigitalImage)> {
    vec![
        ("square6", make_rectangle(0, 6, 0, 6).expect("nonempty")),
        ("diamond-disk4", make_diamond_disk(4)),
        ("square12", make_rectangle(0, 12, 0, 12).expect("nonempty")),
    ]
}
