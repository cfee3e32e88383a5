//! 1-queue recognition for graphs of bounded treedepth.
//!
//! A decomposition vertex with many interchangeable components below it can
//! lose one of them without changing the answer. Pruning bottom-up leaves a
//! kernel that is searched exhaustively; a layout of the kernel is then
//! grown back into one of the input by re-inserting the pruned components
//! in reverse order.

mod extend;
mod prune;
mod search;
mod signature;
mod thresholds;

pub use extend::{
    blocks_of, classify_pair, d_sequence, extend_layout, find_delimiting_pair, insert_blocks, order_classes, Block,
    DSequence, PairKind, Placed, Tag,
};
pub use prune::{kernelize_1queue, kernelize_with, prune_once, Pruning, Removal, TdKernel};
pub use search::find_1queue_order;
pub use signature::{decompose_at, AnchoredComponent, Canonical, Canonicalizer, ComponentSignature, DEFAULT_CANON_CAP};
pub use thresholds::{thresholds_eval, Threshold, Thresholds, MAX_EXACT_BITS};

use crate::error::{GraphError, KernelError};
use crate::graph::Graph;
use crate::layout::{validate_layout, LinearLayout};

pub const DEFAULT_KERNEL_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdDecision {
    pub kernel: TdKernel,
    /// A 1-queue layout of the input, or `None` if there is none.
    pub layout: Option<LinearLayout>,
    /// Whether the layout was obtained by searching the input directly
    /// because a pruned component could not be re-inserted.
    pub fallback: bool,
}

impl TdDecision {
    pub fn is_yes(&self) -> bool {
        self.layout.is_some()
    }
}

/// Decides whether a connected graph has a 1-queue layout, searching a
/// kernel of at most `cap` vertices.
pub fn decide_1queue_td(g: &Graph, thresholds: &Thresholds, cap: usize) -> Result<TdDecision, KernelError> {
    let comps = g.connected_components().len();
    if comps > 1 {
        return Err(GraphError::Disconnected(comps).into());
    }
    let mut canon = Canonicalizer::default();
    let kernel = kernelize_1queue(g, thresholds, &mut canon)?;
    if kernel.graph.n() > cap {
        return Err(KernelError::KernelTooLarge { size: kernel.graph.n(), cap });
    }
    let Some(order) = find_1queue_order(&kernel.graph) else {
        return Ok(TdDecision { kernel, layout: None, fallback: false });
    };
    let mut layout = LinearLayout::single_queue(g, order.iter().map(|&v| kernel.origin[v]).collect());
    let mut fallback = false;
    for r in kernel.removals.iter().rev() {
        match extend_layout(g, &layout, &r.path, &r.class, &r.removed, &mut canon) {
            Ok(next) => layout = next,
            Err(KernelError::StructureAbsent(_)) => {
                fallback = true;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if fallback {
        let order = find_1queue_order(g).ok_or_else(|| {
            KernelError::Internal("kernel has a 1-queue layout but the input has none; the thresholds are unsound here".into())
        })?;
        layout = LinearLayout::single_queue(g, order);
    }
    if !validate_layout(g, &layout)?.is_valid() {
        return Err(KernelError::Internal("lifted layout is invalid".into()));
    }
    Ok(TdDecision { kernel, layout: Some(layout), fallback })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::params::TreedepthDecomposition;

    #[test]
    fn known_decisions() {
        let exact = Thresholds::Exact;
        assert!(!decide_1queue_td(&complete_bipartite(3, 3), &exact, DEFAULT_KERNEL_CAP).unwrap().is_yes());
        assert!(decide_1queue_td(&cycle(4), &exact, DEFAULT_KERNEL_CAP).unwrap().is_yes());
        assert!(decide_1queue_td(&path(8), &exact, DEFAULT_KERNEL_CAP).unwrap().is_yes());
        assert_eq!(
            decide_1queue_td(&path(13), &exact, DEFAULT_KERNEL_CAP),
            Err(KernelError::KernelTooLarge { size: 13, cap: 12 })
        );
        assert!(matches!(
            decide_1queue_td(&Graph::from_edges(4, [(0, 1), (2, 3)]), &exact, DEFAULT_KERNEL_CAP),
            Err(KernelError::Graph(GraphError::Disconnected(2)))
        ));
    }

    #[test]
    fn broom_lifts_back() {
        let g = broom(50);
        let d = decide_1queue_td(&g, &Thresholds::synthetic(5), DEFAULT_KERNEL_CAP).unwrap();
        assert_eq!(d.kernel.graph.n(), 5);
        assert!(!d.fallback);
        assert_eq!(d.layout.unwrap().order().len(), 52);
    }

    /// Root 1 with child 2; below 2 hang C1 = path 4-3-5 (3 sees 2),
    /// C2 = edge 6-7 (6 sees 1, 7 sees 2) and C3 = {8} (sees 2). Vertex 9
    /// sees only 1 and is not below 2.
    fn hanging_components() -> (Graph, TreedepthDecomposition) {
        let labels: Vec<String> = (1..=9).map(|v| v.to_string()).collect();
        let e = |a: usize, b: usize| (a - 1, b - 1);
        let g = Graph::with_labels(labels, [e(1, 2), e(2, 3), e(3, 4), e(3, 5), e(6, 1), e(6, 7), e(7, 2), e(2, 8), e(1, 9)]);
        let p = |v: usize| Some(v - 1);
        let td = TreedepthDecomposition::from_parents(vec![None, p(1), p(2), p(3), p(3), p(2), p(6), p(2), p(1)]).unwrap();
        (g, td)
    }

    #[test]
    fn three_components_hang_below_two() {
        let (g, td) = hanging_components();
        assert!(td.is_valid_for(&g));
        let (comps, m) = decompose_at(&g, &td, 1);
        let sets: Vec<Vec<&str>> = comps.iter().map(|c| c.vertices.iter().map(|v| g.label(v)).collect()).collect();
        assert_eq!(sets, vec![vec!["3", "4", "5"], vec!["6", "7"], vec!["8"]]);
        assert_eq!(m, 3);
        assert_eq!(td.height(), 4);
    }
}
