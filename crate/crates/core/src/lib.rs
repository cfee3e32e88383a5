//! Exact queue layouts of small and structurally restricted graphs.
//!
//! An h-queue layout is a vertex order together with an assignment of every
//! edge to one of h queues such that no two independent edges of one queue
//! nest. This crate provides:
//!
//! * [`layout`]: nesting, maximum rainbows, optimal queue assignment for a
//!   fixed order, validation, JSON and SVG output;
//! * [`params`]: exact treedepth decompositions and minimum vertex covers;
//! * [`td_kernel`]: 1-queue recognition by pruning equivalent components of a
//!   treedepth decomposition, with constructive lifting of layouts;
//! * [`vc_kernel`]: queue number by trimming vertices of equal type relative
//!   to a vertex cover, binary searching the number of queues;
//! * [`oracle`]: brute-force ground truth over all vertex orders.

pub mod error;
pub mod graph;
pub mod layout;
pub mod oracle;
pub mod params;
pub mod svg;
pub mod td_kernel;
pub mod vc_kernel;

pub use error::{GraphError, KernelError, LayoutError, OracleError, ParamError, ParseError, VcError};
pub use graph::{parse_graph, Edge, Graph, VertexSet};
pub use layout::{LinearLayout, Rainbow, Validation, Violation};
