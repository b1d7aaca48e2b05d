//! Logical work/depth accounting in the fork-join PRAM cost model.
//!
//! Work is the operation count with every parallel loop run sequentially;
//! depth adds sequential costs and, for each parallel loop, the maximum cost
//! of a single iteration. A primitive operation is one edge relaxation, one
//! min-plus inner term, or one comparison in a selection step. Loop control is
//! not counted.
//!
//! The meter is independent of how many threads actually ran: tasks return
//! their [`Cost`] and the region folds them with `+` and `max`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Work and depth of a computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Cost {
    pub work: u64,
    pub depth: u64,
}

impl Cost {
    pub const ZERO: Cost = Cost { work: 0, depth: 0 };

    pub fn new(work: u64, depth: u64) -> Self {
        Cost { work, depth }
    }

    /// `self` followed by `other`.
    pub fn then(self, other: Cost) -> Cost {
        Cost {
            work: self.work + other.work,
            depth: self.depth + other.depth,
        }
    }

    /// `self` alongside `other`.
    pub fn alongside(self, other: Cost) -> Cost {
        Cost {
            work: self.work + other.work,
            depth: self.depth.max(other.depth),
        }
    }

    /// Folds the iterations of one parallel foreach loop.
    pub fn parallel<I: IntoIterator<Item = Cost>>(iterations: I) -> Cost {
        iterations.into_iter().fold(Cost::ZERO, Cost::alongside)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CostKind {
    Measured,
    Modeled,
}

/// One accounting scope. `work`/`depth` include all children; the
/// `modeled_*` fields give the share that came from modeled entries.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Phase {
    pub name: String,
    pub kind: CostKind,
    pub work: u64,
    pub depth: u64,
    pub modeled_work: u64,
    pub modeled_depth: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<Phase>,
}

impl Phase {
    fn open(name: &str) -> Self {
        Phase {
            name: name.to_string(),
            kind: CostKind::Measured,
            work: 0,
            depth: 0,
            modeled_work: 0,
            modeled_depth: 0,
            children: Vec::new(),
        }
    }

    fn absorb(&mut self, child: Phase) {
        self.work += child.work;
        self.depth += child.depth;
        self.modeled_work += child.modeled_work;
        self.modeled_depth += child.modeled_depth;
        self.children.push(child);
    }

    pub fn cost(&self) -> Cost {
        Cost::new(self.work, self.depth)
    }
}

/// Final accounting: top-level phases run one after another.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WorkDepthReport {
    pub total_work: u64,
    pub total_depth: u64,
    pub measured_work: u64,
    pub measured_depth: u64,
    pub phases: Vec<Phase>,
}

impl WorkDepthReport {
    pub fn total(&self) -> Cost {
        Cost::new(self.total_work, self.total_depth)
    }

    /// Totals with all modeled entries removed.
    pub fn measured(&self) -> Cost {
        Cost::new(self.measured_work, self.measured_depth)
    }
}

/// Accumulates costs into a tree of named phases.
#[derive(Clone, Debug)]
pub struct Meter {
    stack: Vec<Phase>,
}

impl Default for Meter {
    fn default() -> Self {
        Self::new()
    }
}

impl Meter {
    pub fn new() -> Self {
        Meter {
            stack: vec![Phase::open("")],
        }
    }

    pub fn enter_phase(&mut self, name: &str) {
        self.stack.push(Phase::open(name));
    }

    pub fn exit_phase(&mut self) -> Result<()> {
        if self.stack.len() < 2 {
            return Err(Error::UnbalancedPhase("exit without matching enter".into()));
        }
        let child = self.stack.pop().unwrap();
        self.top().absorb(child);
        Ok(())
    }

    /// Runs `body` inside a named phase.
    pub fn phase<T>(&mut self, name: &str, body: impl FnOnce(&mut Meter) -> T) -> T {
        self.enter_phase(name);
        let out = body(self);
        self.exit_phase().expect("phase opened above");
        out
    }

    /// Adds a sequential cost to the current phase.
    pub fn charge(&mut self, cost: Cost) {
        let top = self.top();
        top.work += cost.work;
        top.depth += cost.depth;
    }

    /// Records one parallel foreach loop: work adds, depth takes the max.
    pub fn parallel_region<I: IntoIterator<Item = Cost>>(&mut self, iterations: I) {
        self.charge(Cost::parallel(iterations));
    }

    /// Adds an entry whose cost comes from a formula rather than from
    /// counting the operations that ran.
    pub fn record_modeled(&mut self, name: &str, work: u64, depth: u64) {
        let top = self.top();
        top.work += work;
        top.depth += depth;
        top.modeled_work += work;
        top.modeled_depth += depth;
        top.children.push(Phase {
            name: name.to_string(),
            kind: CostKind::Modeled,
            work,
            depth,
            modeled_work: work,
            modeled_depth: depth,
            children: Vec::new(),
        });
    }

    /// Cost accumulated so far, open phases included.
    pub fn current(&self) -> Cost {
        self.stack.iter().fold(Cost::ZERO, |acc, p| acc.then(p.cost()))
    }

    pub fn report(&self) -> Result<WorkDepthReport> {
        if self.stack.len() != 1 {
            let open: Vec<&str> = self.stack[1..].iter().map(|p| p.name.as_str()).collect();
            return Err(Error::UnbalancedPhase(format!("still open: {}", open.join(", "))));
        }
        let root = &self.stack[0];
        Ok(WorkDepthReport {
            total_work: root.work,
            total_depth: root.depth,
            measured_work: root.work - root.modeled_work,
            measured_depth: root.depth - root.modeled_depth,
            phases: root.children.clone(),
        })
    }

    fn top(&mut self) -> &mut Phase {
        self.stack.last_mut().expect("root phase is never popped")
    }
}

/// `ceil(log2(x))`, with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(x: usize) -> u64 {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as u64
    }
}
