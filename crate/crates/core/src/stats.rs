use std::ops::AddAssign;
use std::time::Duration;

use serde_json::json;

/// Operation counters for one query (or an aggregate of several).
///
/// `edge_touches` charges one unit per in-adjacency (or out-adjacency) entry
/// a push examines, which is the quantity the cost bounds are stated in.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub push_count: u64,
    pub edge_touches: u64,
    pub wall_time: Duration,
}

impl QueryStats {
    /// JSON form. Wall time is machine dependent, so it is only emitted on request
    /// to keep output files reproducible.
    pub fn to_json(&self, with_wall_time: bool) -> serde_json::Value {
        let mut v = json!({
            "push_count": self.push_count,
            "edge_touches": self.edge_touches,
        });
        if with_wall_time {
            v["wall_ms"] = json!(self.wall_time.as_secs_f64() * 1e3);
        }
        v
    }
}

impl AddAssign for QueryStats {
    fn add_assign(&mut self, rhs: Self) {
        self.push_count += rhs.push_count;
        self.edge_touches += rhs.edge_touches;
        self.wall_time += rhs.wall_time;
    }
}
