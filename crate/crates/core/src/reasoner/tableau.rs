//! Completion-forest search for a model of one concept under a set of
//! internalised clauses.
//!
//! Deterministic rules (conjunction, value restriction, unit propagation on
//! disjunctions) run to saturation before anything else. Disjunctions are then
//! split at the earliest unblocked node, and only when no split is left are
//! existential restrictions expanded. Splits are semantic (the second branch
//! adds the negated disjunct) and failures jump back to the deepest split the
//! clash depends on.

use std::collections::{HashMap, VecDeque};

use smallvec::SmallVec;

use super::store::{Id, Node, Store, BOT, TOP};

/// Split levels a fact depends on, sorted ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DepSet(SmallVec<[u32; 4]>);

impl DepSet {
    fn single(level: u32) -> Self {
        DepSet(SmallVec::from_slice(&[level]))
    }

    fn union(&self, other: &DepSet) -> DepSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        DepSet(out)
    }

    fn contains(&self, level: u32) -> bool {
        self.0.binary_search(&level).is_ok()
    }

    fn without(&self, level: u32) -> DepSet {
        DepSet(self.0.iter().copied().filter(|&l| l != level).collect())
    }
}

struct TNode {
    parent: Option<usize>,
    role: u32,
    /// Deps of the existential restriction that created the node.
    origin: DepSet,
    order: Vec<Id>,
    label: HashMap<Id, DepSet>,
    children: Vec<usize>,
}

enum Undo {
    Label(usize),
    Node,
}

struct Split {
    level: u32,
    trail: usize,
    node: usize,
    disjunct: Id,
    deps: DepSet,
}

pub enum Outcome {
    Sat(Completion),
    Unsat,
    Timeout,
}

/// The unblocked part of a clash-free completion: per node its atoms and its
/// role successors, with edges into blocked nodes redirected to the blocker.
pub struct Completion {
    pub atoms: Vec<Vec<u32>>,
    pub edges: Vec<(u32, usize, usize)>,
}

pub struct Tableau<'a> {
    store: &'a Store,
    clauses: &'a [Id],
    nodes: Vec<TNode>,
    trail: Vec<Undo>,
    agenda: VecDeque<(usize, Id)>,
    splits: Vec<Split>,
    pub work: u64,
    budget: u64,
}

impl<'a> Tableau<'a> {
    pub fn new(store: &'a Store, clauses: &'a [Id], budget: u64) -> Self {
        Tableau {
            store,
            clauses,
            nodes: Vec::new(),
            trail: Vec::new(),
            agenda: VecDeque::new(),
            splits: Vec::new(),
            work: 0,
            budget,
        }
    }

    pub fn run(mut self, root: Id) -> (Outcome, u64) {
        let outcome = self.search(root);
        (outcome, self.work)
    }

    fn search(&mut self, root: Id) -> Outcome {
        let mut pending = self.new_node(None, 0, DepSet::default(), root);
        loop {
            if pending.is_ok() {
                pending = self.propagate();
            }
            if let Err(clash) = pending {
                match self.backjump(clash) {
                    Some(next) => {
                        pending = next;
                        continue;
                    }
                    None => return Outcome::Unsat,
                }
            }
            if self.work > self.budget {
                return Outcome::Timeout;
            }
            let blocked = self.blocking();
            if let Some((node, or, deps)) = self.choose_split(&blocked) {
                self.work += 1;
                let level = self.splits.len() as u32 + 1;
                let disjunct = self.pick_disjunct(node, or);
                self.splits.push(Split {
                    level,
                    trail: self.trail.len(),
                    node,
                    disjunct,
                    deps,
                });
                pending = self.add(node, disjunct, DepSet::single(level));
                continue;
            }
            if let Some((node, role, filler, deps)) = self.choose_exists(&blocked) {
                self.work += 1;
                pending = self.new_node(Some(node), role, deps, filler);
                continue;
            }
            return Outcome::Sat(self.completion(&blocked));
        }
    }

    /// Undo to the deepest split in `clash` and try its second branch; `None`
    /// when no split is responsible.
    fn backjump(&mut self, clash: DepSet) -> Option<Result<(), DepSet>> {
        self.agenda.clear();
        while let Some(split) = self.splits.pop() {
            self.undo_to(split.trail);
            if clash.contains(split.level) {
                let deps = split.deps.union(&clash.without(split.level));
                let neg = self.store.neg(split.disjunct);
                return Some(self.add(split.node, neg, deps));
            }
        }
        None
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            match self.trail.pop().expect("nonempty trail") {
                Undo::Label(x) => {
                    let n = &mut self.nodes[x];
                    let id = n.order.pop().expect("label entry");
                    n.label.remove(&id);
                }
                Undo::Node => {
                    let n = self.nodes.pop().expect("node");
                    if let Some(p) = n.parent {
                        self.nodes[p].children.pop();
                    }
                }
            }
        }
    }

    fn new_node(
        &mut self,
        parent: Option<usize>,
        role: u32,
        origin: DepSet,
        filler: Id,
    ) -> Result<(), DepSet> {
        self.work += 1;
        let x = self.nodes.len();
        self.nodes.push(TNode {
            parent,
            role,
            origin: origin.clone(),
            order: Vec::new(),
            label: HashMap::new(),
            children: Vec::new(),
        });
        self.trail.push(Undo::Node);
        if let Some(p) = parent {
            self.nodes[p].children.push(x);
        }
        self.add(x, filler, origin.clone())?;
        if let Some(p) = parent {
            let foralls: Vec<(Id, DepSet)> = self.nodes[p]
                .order
                .iter()
                .filter_map(|&c| match self.store.node(c) {
                    Node::Forall(r, d) if *r == role => {
                        Some((*d, self.nodes[p].label[&c].union(&origin)))
                    }
                    _ => None,
                })
                .collect();
            for (d, deps) in foralls {
                self.add(x, d, deps)?;
            }
        }
        for &c in self.clauses {
            self.add(x, c, origin.clone())?;
        }
        Ok(())
    }

    fn add(&mut self, x: usize, c: Id, deps: DepSet) -> Result<(), DepSet> {
        if c == TOP || self.nodes[x].label.contains_key(&c) {
            return Ok(());
        }
        if c == BOT {
            return Err(deps);
        }
        if let Some(other) = self.nodes[x].label.get(&self.store.neg(c)) {
            return Err(deps.union(other));
        }
        let n = &mut self.nodes[x];
        n.label.insert(c, deps);
        n.order.push(c);
        self.trail.push(Undo::Label(x));
        self.agenda.push_back((x, c));
        Ok(())
    }

    fn propagate(&mut self) -> Result<(), DepSet> {
        let store = self.store;
        while let Some((x, c)) = self.agenda.pop_front() {
            let deps = self.nodes[x].label[&c].clone();
            match store.node(c) {
                Node::And(parts) => {
                    for &p in parts.iter() {
                        self.add(x, p, deps.clone())?;
                    }
                }
                Node::Or(_) => self.examine_or(x, c)?,
                Node::Forall(r, d) => {
                    let (r, d) = (*r, *d);
                    let children: Vec<usize> = self.nodes[x]
                        .children
                        .iter()
                        .copied()
                        .filter(|&y| self.nodes[y].role == r)
                        .collect();
                    for y in children {
                        let dy = deps.union(&self.nodes[y].origin);
                        self.add(y, d, dy)?;
                    }
                }
                _ => {}
            }
            // Disjunctions that just lost an operand.
            for &or in store.or_parents(store.neg(c)) {
                if self.nodes[x].label.contains_key(&or) {
                    self.examine_or(x, or)?;
                }
            }
        }
        Ok(())
    }

    /// Unit propagation: a disjunction with every operand refuted is a clash,
    /// one with a single open operand forces it.
    fn examine_or(&mut self, x: usize, or: Id) -> Result<(), DepSet> {
        let store = self.store;
        let Node::Or(parts) = store.node(or) else {
            unreachable!("not a disjunction")
        };
        let label = &self.nodes[x].label;
        let mut deps = label[&or].clone();
        let mut open = None;
        for &p in parts.iter() {
            if label.contains_key(&p) {
                return Ok(());
            }
            match label.get(&self.store.neg(p)) {
                Some(d) => deps = deps.union(d),
                None if open.is_none() => open = Some(p),
                None => return Ok(()),
            }
        }
        match open {
            None => Err(deps),
            Some(p) => self.add(x, p, deps),
        }
    }

    /// Directly or indirectly blocked nodes: a node is blocked when an
    /// ancestor's label contains its own, or its parent is blocked. The
    /// value is the blocker for direct blocking.
    fn blocking(&self) -> Vec<Option<usize>> {
        let mut out: Vec<Option<usize>> = vec![None; self.nodes.len()];
        for x in 0..self.nodes.len() {
            let Some(p) = self.nodes[x].parent else {
                continue;
            };
            if out[p].is_some() {
                out[x] = Some(usize::MAX);
                continue;
            }
            let mut a = Some(p);
            while let Some(y) = a {
                let (lx, ly) = (&self.nodes[x], &self.nodes[y]);
                if lx.order.len() <= ly.order.len()
                    && lx.order.iter().all(|c| ly.label.contains_key(c))
                {
                    out[x] = Some(y);
                    break;
                }
                a = ly.parent;
            }
        }
        out
    }

    fn choose_split(&self, blocked: &[Option<usize>]) -> Option<(usize, Id, DepSet)> {
        for (x, n) in self.nodes.iter().enumerate() {
            if blocked[x].is_some() {
                continue;
            }
            let mut best: Option<(usize, Id)> = None;
            for &c in &n.order {
                let Node::Or(parts) = self.store.node(c) else {
                    continue;
                };
                if parts.iter().any(|p| n.label.contains_key(p)) {
                    continue;
                }
                let open = parts
                    .iter()
                    .filter(|&&p| !n.label.contains_key(&self.store.neg(p)))
                    .count();
                if best.is_none_or(|(k, _)| open < k) {
                    best = Some((open, c));
                }
            }
            if let Some((_, c)) = best {
                return Some((x, c, n.label[&c].clone()));
            }
        }
        None
    }

    fn pick_disjunct(&self, x: usize, or: Id) -> Id {
        let Node::Or(parts) = self.store.node(or) else {
            unreachable!("not a disjunction")
        };
        let label = &self.nodes[x].label;
        *parts
            .iter()
            .find(|&&p| !label.contains_key(&self.store.neg(p)))
            .expect("an open operand")
    }

    fn choose_exists(&self, blocked: &[Option<usize>]) -> Option<(usize, u32, Id, DepSet)> {
        for (x, n) in self.nodes.iter().enumerate() {
            if blocked[x].is_some() {
                continue;
            }
            for &c in &n.order {
                let Node::Exists(r, d) = self.store.node(c) else {
                    continue;
                };
                let met = n.children.iter().any(|&y| {
                    self.nodes[y].role == *r && (*d == TOP || self.nodes[y].label.contains_key(d))
                });
                if !met {
                    return Some((x, *r, *d, n.label[&c].clone()));
                }
            }
        }
        None
    }

    fn completion(&self, blocked: &[Option<usize>]) -> Completion {
        let live: Vec<usize> = (0..self.nodes.len())
            .filter(|&x| blocked[x].is_none())
            .collect();
        let mut index = vec![usize::MAX; self.nodes.len()];
        for (k, &x) in live.iter().enumerate() {
            index[x] = k;
        }
        let mut atoms = Vec::with_capacity(live.len());
        let mut edges = Vec::new();
        for &x in &live {
            let n = &self.nodes[x];
            atoms.push(
                n.order
                    .iter()
                    .filter_map(|&c| match self.store.node(c) {
                        Node::Atom(a) => Some(*a),
                        _ => None,
                    })
                    .collect(),
            );
            for &y in &n.children {
                let target = blocked[y].unwrap_or(y);
                edges.push((self.nodes[y].role, index[x], index[target]));
            }
        }
        Completion { atoms, edges }
    }
}
