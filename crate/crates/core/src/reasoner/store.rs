//! Hash-consed negation normal forms.
//!
//! Every interned node is stored next to its dual, so negation is a table
//! lookup. Conjunctions and disjunctions are flattened, sorted and
//! deduplicated; complementary operands and units are folded away.

use std::collections::HashMap;

use crate::syntax::Concept;

pub type Id = u32;

pub const TOP: Id = 0;
pub const BOT: Id = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Top,
    Bot,
    Atom(u32),
    NegAtom(u32),
    And(Box<[Id]>),
    Or(Box<[Id]>),
    Exists(u32, Id),
    Forall(u32, Id),
}

#[derive(Clone, Debug)]
pub struct Store {
    nodes: Vec<Node>,
    neg: Vec<Id>,
    index: HashMap<Node, Id>,
    /// For each id, the disjunctions having it as an operand.
    or_parents: Vec<Vec<Id>>,
    concepts: Vec<String>,
    concept_index: HashMap<String, u32>,
    roles: Vec<String>,
    role_index: HashMap<String, u32>,
}

impl Default for Store {
    fn default() -> Self {
        Self::new()
    }
}

impl Store {
    pub fn new() -> Self {
        let mut s = Store {
            nodes: vec![Node::Top, Node::Bot],
            neg: vec![BOT, TOP],
            index: HashMap::new(),
            or_parents: vec![Vec::new(), Vec::new()],
            concepts: Vec::new(),
            concept_index: HashMap::new(),
            roles: Vec::new(),
            role_index: HashMap::new(),
        };
        s.index.insert(Node::Top, TOP);
        s.index.insert(Node::Bot, BOT);
        s
    }

    pub fn node(&self, id: Id) -> &Node {
        &self.nodes[id as usize]
    }

    pub fn neg(&self, id: Id) -> Id {
        self.neg[id as usize]
    }

    pub fn or_parents(&self, id: Id) -> &[Id] {
        &self.or_parents[id as usize]
    }

    pub fn concepts(&self) -> &[String] {
        &self.concepts
    }

    pub fn roles(&self) -> &[String] {
        &self.roles
    }

    pub fn concept(&mut self, name: &str) -> u32 {
        intern_name(&mut self.concepts, &mut self.concept_index, name)
    }

    pub fn role(&mut self, name: &str) -> u32 {
        intern_name(&mut self.roles, &mut self.role_index, name)
    }

    fn intern(&mut self, node: Node) -> Id {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let dual = match &node {
            Node::Top | Node::Bot => unreachable!("constants are preinterned"),
            Node::Atom(a) => Node::NegAtom(*a),
            Node::NegAtom(a) => Node::Atom(*a),
            Node::And(xs) => Node::Or(self.negated_sorted(xs)),
            Node::Or(xs) => Node::And(self.negated_sorted(xs)),
            Node::Exists(r, c) => Node::Forall(*r, self.neg(*c)),
            Node::Forall(r, c) => Node::Exists(*r, self.neg(*c)),
        };
        let id = self.nodes.len() as Id;
        for (k, n) in [(id, node), (id + 1, dual)] {
            if let Node::Or(xs) = &n {
                for &x in xs.iter() {
                    self.or_parents[x as usize].push(k);
                }
            }
            self.index.insert(n.clone(), k);
            self.nodes.push(n);
            self.or_parents.push(Vec::new());
        }
        self.neg.push(id + 1);
        self.neg.push(id);
        id
    }

    fn negated_sorted(&self, xs: &[Id]) -> Box<[Id]> {
        let mut ys: Vec<Id> = xs.iter().map(|&x| self.neg(x)).collect();
        ys.sort_unstable();
        ys.into_boxed_slice()
    }

    pub fn atom(&mut self, name: &str) -> Id {
        let a = self.concept(name);
        self.intern(Node::Atom(a))
    }

    pub fn exists(&mut self, role: &str, c: Id) -> Id {
        let r = self.role(role);
        if c == BOT {
            return BOT;
        }
        self.intern(Node::Exists(r, c))
    }

    pub fn forall(&mut self, role: &str, c: Id) -> Id {
        let r = self.role(role);
        if c == TOP {
            return TOP;
        }
        self.intern(Node::Forall(r, c))
    }

    pub fn and(&mut self, parts: impl IntoIterator<Item = Id>) -> Id {
        let mut xs = Vec::new();
        for p in parts {
            match self.node(p) {
                Node::And(inner) => xs.extend_from_slice(inner),
                _ => xs.push(p),
            }
        }
        xs.sort_unstable();
        xs.dedup();
        if xs.first() == Some(&TOP) {
            xs.remove(0);
        }
        if xs.contains(&BOT) || xs.iter().any(|&x| xs.binary_search(&self.neg(x)).is_ok()) {
            return BOT;
        }
        match xs.len() {
            0 => TOP,
            1 => xs[0],
            _ => self.intern(Node::And(xs.into_boxed_slice())),
        }
    }

    pub fn or(&mut self, parts: impl IntoIterator<Item = Id>) -> Id {
        let negs: Vec<Id> = parts.into_iter().map(|p| self.neg(p)).collect();
        let conj = self.and(negs);
        self.neg(conj)
    }

    /// The NNF of `c`, interned.
    pub fn build(&mut self, c: &Concept) -> Id {
        match c {
            Concept::Top => TOP,
            Concept::Bot => BOT,
            Concept::Name(n) => self.atom(n),
            Concept::Not(a) => {
                let x = self.build(a);
                self.neg(x)
            }
            Concept::And(a, b) => {
                let (x, y) = (self.build(a), self.build(b));
                self.and([x, y])
            }
            Concept::Or(a, b) => {
                let (x, y) = (self.build(a), self.build(b));
                self.or([x, y])
            }
            Concept::Exists(r, a) => {
                let x = self.build(a);
                self.exists(r, x)
            }
            Concept::Forall(r, a) => {
                let x = self.build(a);
                self.forall(r, x)
            }
        }
    }

    /// Back to a syntax tree.
    #[cfg(test)]
    pub fn to_concept(&self, id: Id) -> Concept {
        match self.node(id) {
            Node::Top => Concept::Top,
            Node::Bot => Concept::Bot,
            Node::Atom(a) => Concept::name(&self.concepts[*a as usize]),
            Node::NegAtom(a) => Concept::name(&self.concepts[*a as usize]).not(),
            Node::And(xs) => Concept::conjunction(xs.iter().map(|&x| self.to_concept(x))),
            Node::Or(xs) => Concept::disjunction(xs.iter().map(|&x| self.to_concept(x))),
            Node::Exists(r, c) => Concept::exists(&self.roles[*r as usize], self.to_concept(*c)),
            Node::Forall(r, c) => Concept::forall(&self.roles[*r as usize], self.to_concept(*c)),
        }
    }
}

fn intern_name(names: &mut Vec<String>, index: &mut HashMap<String, u32>, name: &str) -> u32 {
    if let Some(&k) = index.get(name) {
        return k;
    }
    let k = names.len() as u32;
    names.push(name.to_string());
    index.insert(name.to_string(), k);
    k
}
