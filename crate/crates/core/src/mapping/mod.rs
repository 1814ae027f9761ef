//! Mapping circuits onto hardware with restricted CNOT connectivity.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ir::{Circuit, GateApp};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MappingError {
    #[error("invalid architecture: {0}")]
    InvalidArchitecture(String),
    #[error("circuit has {circuit} qubits but the architecture has {arch}")]
    DimensionMismatch { circuit: usize, arch: usize },
    #[error("invalid layout: {0}")]
    BadLayout(String),
    #[error("no path between physical qubits {0} and {1}")]
    Disconnected(usize, usize),
    #[error("circuit is not well-typed")]
    IllTyped,
}

/// A named connectivity graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArchSpec {
    /// IBM's 5-qubit Tenerife device, with directed edges.
    Tenerife,
    /// A line of `n` qubits.
    Lnn(usize),
    /// A line of `n` qubits closed into a ring.
    LnnRing(usize),
    /// A `rows × cols` grid, numbered row by row.
    Grid(usize, usize),
}

impl FromStr for ArchSpec {
    type Err = MappingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MappingError::InvalidArchitecture(format!("cannot parse `{s}`"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a)),
            None => (s.trim(), None),
        };
        match (name.to_ascii_lowercase().as_str(), arg) {
            ("tenerife", None) => Ok(ArchSpec::Tenerife),
            ("lnn", Some(a)) => Ok(ArchSpec::Lnn(num(a)?)),
            ("ring" | "lnn_ring", Some(a)) => Ok(ArchSpec::LnnRing(num(a)?)),
            ("grid", Some(a)) => {
                let (r, c) = a.split_once(['x', 'X']).ok_or_else(bad)?;
                Ok(ArchSpec::Grid(num(r)?, num(c)?))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for ArchSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArchSpec::Tenerife => write!(f, "tenerife"),
            ArchSpec::Lnn(n) => write!(f, "lnn:{n}"),
            ArchSpec::LnnRing(n) => write!(f, "ring:{n}"),
            ArchSpec::Grid(r, c) => write!(f, "grid:{r}x{c}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Architecture {
    n: usize,
    /// `directed[a * n + b]` when CNOT a b is native.
    directed: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

impl Architecture {
    /// An architecture on `n` qubits with the given native (control, target) pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, MappingError> {
        let mut directed = vec![false; n * n];
        let mut neighbors = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(MappingError::InvalidArchitecture(format!("bad edge ({a}, {b})")));
            }
            directed[a * n + b] = true;
            for (x, y) in [(a, b), (b, a)] {
                if !neighbors[x].contains(&y) {
                    neighbors[x].push(y);
                }
            }
        }
        neighbors.iter_mut().for_each(|v| v.sort_unstable());
        Ok(Architecture { n, directed, neighbors })
    }

    pub fn new(spec: ArchSpec) -> Result<Self, MappingError> {
        let too_small = || MappingError::InvalidArchitecture(format!("{spec} needs at least 2 qubits"));
        let both = |e: Vec<(usize, usize)>| e.into_iter().flat_map(|(a, b)| [(a, b), (b, a)]).collect::<Vec<_>>();
        match spec {
            ArchSpec::Tenerife => Self::from_edges(5, &[(1, 0), (2, 0), (2, 1), (3, 2), (3, 4), (4, 2)]),
            ArchSpec::Lnn(n) => {
                if n < 2 {
                    return Err(too_small());
                }
                Self::from_edges(n, &both((0..n - 1).map(|i| (i, i + 1)).collect()))
            }
            ArchSpec::LnnRing(n) => {
                if n < 2 {
                    return Err(too_small());
                }
                Self::from_edges(n, &both((0..n).map(|i| (i, (i + 1) % n)).filter(|(a, b)| a != b).collect()))
            }
            ArchSpec::Grid(r, c) => {
                if r * c < 2 {
                    return Err(too_small());
                }
                let mut e = Vec::new();
                for i in 0..r {
                    for j in 0..c {
                        let q = i * c + j;
                        if j + 1 < c {
                            e.push((q, q + 1));
                        }
                        if i + 1 < r {
                            e.push((q, q + c));
                        }
                    }
                }
                Self::from_edges(r * c, &both(e))
            }
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Whether `CNOT control target` is native.
    pub fn is_directed_edge(&self, control: usize, target: usize) -> bool {
        control < self.n && target < self.n && self.directed[control * self.n + target]
    }

    /// Whether the two qubits are connected in either direction.
    pub fn is_adjacent(&self, a: usize, b: usize) -> bool {
        self.is_directed_edge(a, b) || self.is_directed_edge(b, a)
    }

    /// A shortest undirected path from `from` to `to`, both included.
    /// Ties break toward lower-numbered neighbors.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        if from >= self.n || to >= self.n {
            return None;
        }
        let mut prev = vec![usize::MAX; self.n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.neighbors[v] {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

/// A bijection between logical and physical qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    l2p: Vec<usize>,
    p2l: Vec<usize>,
}

impl Layout {
    pub fn identity(n: usize) -> Self {
        Layout { l2p: (0..n).collect(), p2l: (0..n).collect() }
    }

    /// From a logical-to-physical table. Fails unless it is a permutation.
    pub fn from_l2p(l2p: Vec<usize>) -> Result<Self, MappingError> {
        let n = l2p.len();
        let mut p2l = vec![usize::MAX; n];
        for (l, &p) in l2p.iter().enumerate() {
            if p >= n || p2l[p] != usize::MAX {
                return Err(MappingError::BadLayout(format!("{l2p:?} is not a permutation of 0..{n}")));
            }
            p2l[p] = l;
        }
        Ok(Layout { l2p, p2l })
    }

    pub fn len(&self) -> usize {
        self.l2p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.l2p.is_empty()
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.l2p[logical]
    }

    pub fn logical(&self, physical: usize) -> usize {
        self.p2l[physical]
    }

    pub fn l2p(&self) -> &[usize] {
        &self.l2p
    }

    pub fn p2l(&self) -> &[usize] {
        &self.p2l
    }

    /// Exchange the logical qubits held by physical qubits `a` and `b`.
    fn swap_physical(&mut self, a: usize, b: usize) {
        let (la, lb) = (self.p2l[a], self.p2l[b]);
        self.p2l.swap(a, b);
        self.l2p[la] = b;
        self.l2p[lb] = a;
    }
}

/// `CNOT a b` on adjacent physical qubits, reversed with Hadamards when only
/// `b → a` is native.
fn directed_cnot(arch: &Architecture, a: usize, b: usize, out: &mut Vec<GateApp>) {
    use GateApp::*;
    if arch.is_directed_edge(a, b) {
        out.push(Cnot(a, b));
    } else {
        out.extend([H(a), H(b), Cnot(b, a), H(a), H(b)]);
    }
}

/// Rewrite `c` onto the physical qubits of `arch`, starting from `initial`.
///
/// For each CNOT the control is swapped along a shortest path until it is
/// next to the target. Returns the mapped circuit and the final layout.
pub fn map_circuit(c: &Circuit, arch: &Architecture, initial: &Layout) -> Result<(Circuit, Layout), MappingError> {
    if c.dim != arch.num_qubits() {
        return Err(MappingError::DimensionMismatch { circuit: c.dim, arch: arch.num_qubits() });
    }
    if initial.len() != c.dim {
        return Err(MappingError::BadLayout(format!("layout has {} entries, expected {}", initial.len(), c.dim)));
    }
    if !c.well_typed() {
        return Err(MappingError::IllTyped);
    }
    let mut layout = initial.clone();
    let mut out = Vec::with_capacity(c.len());
    for g in &c.gates {
        match *g {
            GateApp::Cnot(lc, lt) => {
                let (pc, pt) = (layout.physical(lc), layout.physical(lt));
                let path = arch.path(pc, pt).ok_or(MappingError::Disconnected(pc, pt))?;
                for w in path[..path.len() - 1].windows(2) {
                    let (a, b) = (w[0], w[1]);
                    directed_cnot(arch, a, b, &mut out);
                    directed_cnot(arch, b, a, &mut out);
                    directed_cnot(arch, a, b, &mut out);
                    layout.swap_physical(a, b);
                }
                directed_cnot(arch, path[path.len() - 2], pt, &mut out);
            }
            _ => out.push(g.map_qubits(|q| layout.physical(q))),
        }
    }
    Ok((Circuit::new(c.dim, out), layout))
}

/// Every CNOT in `c` is native on `arch`.
pub fn respects_constraints(c: &Circuit, arch: &Architecture) -> bool {
    c.gates.iter().all(|g| match *g {
        GateApp::Cnot(a, b) => arch.is_directed_edge(a, b),
        _ => true,
    })
}
