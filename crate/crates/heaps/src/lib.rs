//! Exact combinatorics of heaps of pieces over graph dependency relations.
//!
//! Vertices of a simple graph act as basic pieces whose dependency relation
//! is adjacency plus reflexivity. The crate provides the canonical
//! (Cartier–Foata) level representation of heaps, lexicographic normal
//! forms, racks and layer factorisations with their sign-reversing involution,
//! the bijection between acyclic orientations and multilinear heaps, and the
//! chromatic-polynomial identities these support — each cross-validated
//! against independent brute-force oracles (deletion–contraction, exhaustive
//! colourings, orientations and set partitions).
//!
//! Everything is exact integer arithmetic; enumerations are bounded by
//! explicit size guards that error instead of truncating.
//!
//! ```
//! use heaps::chromatic::chromatic_via_racks;
//! use heaps::{Graph, Heap, Limits, Rack};
//!
//! let g = Graph::path(4)?;
//! let h = Heap::from_word(&g, &[0, 1, 3, 2, 1])?;
//! assert_eq!(h.to_string(), "[0 3][1][2][1]");
//! assert_eq!(h.lex_normal_form(), vec![0, 1, 3, 2, 1]);
//!
//! let rack = Rack::lexicographic(&h)?;
//! assert_eq!(rack.involute(), rack);
//!
//! let limits = Limits::default();
//! let chi = chromatic_via_racks(&g, &limits)?;
//! assert_eq!(chi, g.chromatic_oracle(&limits)?);
//! # Ok::<(), heaps::Error>(())
//! ```

pub mod chromatic;
pub mod error;
pub mod graph;
pub mod heap;
pub mod orient;
pub mod poly;
pub mod rack;
pub mod verify;

pub use error::{Error, ParseError, Result};
pub use graph::{parse_edge_list, Graph, Limits, VertexOrder};
pub use heap::{enumerate_multilinear_heaps, Heap, Occurrence};
pub use orient::Orientation;
pub use poly::IntPolynomial;
pub use rack::{LayerFactorisation, Rack, TransferPiece};
