//! Poset associahedra: proper tubings, face counts and face lattices, and the
//! flip bijection showing that the f-vector depends only on the
//! comparability graph.
//!
//! ```
//! use poset_assoc::{complete_graded, f_vector, Composition};
//!
//! let p = complete_graded(&"2,1,2".parse::<Composition>().unwrap()).unwrap();
//! assert_eq!(f_vector(&p).unwrap().counts(), &[24, 36, 14, 1]);
//! ```

pub mod catalog;
pub mod cli;
pub mod comparability;
pub mod error;
pub mod face_lattice;
pub mod flip_map;
pub mod invariance;
pub mod poset;
pub mod set;
pub mod tubing;

pub use comparability::{
    autonomous_subsets, comparability_graph, flip_sequence, graphs_isomorphic, ComparabilityGraph,
    FlipSearchFailure, FlipSequence,
};
pub use error::{Error, Result};
pub use face_lattice::{
    face_lattice, face_product_decomposition, lattices_equivalent, permutohedron_f_vector,
    permutohedron_lattice, two_face_census, FaceLattice, PolygonCensus,
};
pub use flip_map::{
    classify_tubes, decompose, flip_tubing, is_weakly_increasing, reconstruct, Decomposition,
    TubeClassification,
};
pub use poset::{complete_graded, parse_poset, Composition, Poset};
pub use set::ElementSet;
pub use tubing::{
    enumerate_tubes, enumerate_tubings, f_vector, h_vector, is_proper_tube, is_proper_tubing,
    maximal_tubings, tube_digraph, FVector, Tube, Tubing,
};
