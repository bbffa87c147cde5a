use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use crate::graph::NodeId;

/// Order in which nodes above the push threshold are processed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QueuePolicy {
    /// First in, first out. A queued node is never queued twice.
    #[default]
    Fifo,
    /// Largest key first, ties to the smaller node id.
    MaxFirst,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Keyed {
    key: f64,
    node: NodeId,
}

impl Eq for Keyed {}

impl Ord for Keyed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key.total_cmp(&other.key).then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Keyed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone)]
pub(crate) enum WorkQueue {
    Fifo { queue: VecDeque<NodeId>, queued: Vec<bool> },
    // lazy deletion: stale entries are skipped when popped
    MaxFirst { heap: BinaryHeap<Keyed> },
}

impl WorkQueue {
    pub(crate) fn new(policy: QueuePolicy, n: usize) -> Self {
        match policy {
            QueuePolicy::Fifo => WorkQueue::Fifo { queue: VecDeque::new(), queued: vec![false; n] },
            QueuePolicy::MaxFirst => WorkQueue::MaxFirst { heap: BinaryHeap::new() },
        }
    }

    /// Registers that `node` now has key `key`, which exceeds the threshold.
    pub(crate) fn offer(&mut self, node: NodeId, key: f64) {
        match self {
            WorkQueue::Fifo { queue, queued } => {
                if !queued[node as usize] {
                    queued[node as usize] = true;
                    queue.push_back(node);
                }
            }
            WorkQueue::MaxFirst { heap } => heap.push(Keyed { key, node }),
        }
    }

    /// Next node to push. `current_key` reports a node's live key so stale heap
    /// entries can be discarded.
    pub(crate) fn pop(&mut self, current_key: impl Fn(NodeId) -> f64) -> Option<NodeId> {
        match self {
            WorkQueue::Fifo { queue, queued } => {
                let node = queue.pop_front()?;
                queued[node as usize] = false;
                Some(node)
            }
            WorkQueue::MaxFirst { heap } => {
                while let Some(Keyed { key, node }) = heap.pop() {
                    if current_key(node) == key {
                        return Some(node);
                    }
                }
                None
            }
        }
    }

    pub(crate) fn len(&self) -> usize {
        match self {
            WorkQueue::Fifo { queue, .. } => queue.len(),
            WorkQueue::MaxFirst { heap } => heap.len(),
        }
    }
}
