//! O-blades for SU(n): layout, constraints and an exact enumerator.
//!
//! The O-blade is a triangle of side `n` on the triangular lattice. Vertices
//! are addressed as `(row, col)` with `row` counted from the bottom side and
//! `col` along the row, so `row + col <= n`. The left side carries `λ` read
//! bottom to top, the right side carries `μ` read top to bottom, and the
//! bottom side carries `ν` read left to right.
//!
//! Inner edges (edges not lying on a side) are indexed by direction, then
//! line, then position:
//!
//! * `Horizontal`: line `row = 1..n-1`, edge `(row, p)-(row, p+1)`, `p = 0..n-row-1`.
//! * `Rising` (parallel to the `λ` side): line `col = 1..n-1`,
//!   edge `(p, col)-(p+1, col)`, `p = 0..n-col-1`.
//! * `Falling` (parallel to the `μ` side): line `m = row + col = 1..n-1`,
//!   edge `(p, m-p)-(p+1, m-p-1)`, `p = 0..m-1`.
//!
//! A filling assigns a nonnegative integer to every inner edge such that each
//! boundary label equals the sum of the two inner edges meeting it, and the
//! six edges `e1..e6` around every inner vertex (counterclockwise from east)
//! satisfy `e1+e2 = e4+e5` and `e2+e3 = e5+e6`.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::rootsys::{RootSystem, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    Horizontal,
    Rising,
    Falling,
}

impl Direction {
    pub const ALL: [Direction; 3] = [Direction::Horizontal, Direction::Rising, Direction::Falling];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Lambda,
    Mu,
    Nu,
}

/// Lattice vertex `(row, col)`.
pub type Vertex = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerEdge {
    pub ends: [Vertex; 2],
    pub direction: Direction,
    pub line: usize,
    pub position: usize,
    /// Positive root carried by this edge: `α_start + ... + α_{start+len-1}` (1-based).
    pub root_start: usize,
    pub root_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerVertex {
    pub vertex: Vertex,
    /// Incident inner edges counterclockwise from east: E, NE, NW, W, SW, SE.
    pub edges: [usize; 6],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPoint {
    pub side: Side,
    /// 0-based Dynkin component of the side's weight.
    pub component: usize,
    pub vertex: Vertex,
    pub edges: [usize; 2],
}

/// Combinatorial layout of the SU(n) O-blade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObladeShape {
    n: usize,
    edges: Vec<InnerEdge>,
    inner_vertices: Vec<InnerVertex>,
    boundary: Vec<BoundaryPoint>,
}

const NEIGHBOURS: [(i64, i64); 6] = [(0, 1), (1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1)];

impl ObladeShape {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(domain(format!("O-blades need n >= 2, got {n}")));
        }
        let mut edges = Vec::with_capacity(3 * n * (n - 1) / 2);
        for row in 1..n {
            for p in 0..n - row {
                edges.push(InnerEdge {
                    ends: [(row, p), (row, p + 1)],
                    direction: Direction::Horizontal,
                    line: row,
                    position: p,
                    root_start: p + 1,
                    root_len: row,
                });
            }
        }
        for col in 1..n {
            for p in 0..n - col {
                edges.push(InnerEdge {
                    ends: [(p, col), (p + 1, col)],
                    direction: Direction::Rising,
                    line: col,
                    position: p,
                    root_start: n - col - p,
                    root_len: col,
                });
            }
        }
        for m in 1..n {
            for p in 0..m {
                edges.push(InnerEdge {
                    ends: [(p, m - p), (p + 1, m - p - 1)],
                    direction: Direction::Falling,
                    line: m,
                    position: p,
                    root_start: p + 1,
                    root_len: n - m,
                });
            }
        }

        let find = |a: Vertex, b: Vertex| -> Option<usize> {
            edges
                .iter()
                .position(|e| (e.ends[0] == a && e.ends[1] == b) || (e.ends[0] == b && e.ends[1] == a))
        };
        let step = |v: Vertex, d: (i64, i64)| -> Option<Vertex> {
            let r = v.0 as i64 + d.0;
            let c = v.1 as i64 + d.1;
            (r >= 0 && c >= 0 && (r + c) as usize <= n).then_some((r as usize, c as usize))
        };

        let mut inner_vertices = Vec::new();
        for row in 1..n {
            for col in 1..n - row {
                let v = (row, col);
                let mut inc = [0usize; 6];
                for (k, d) in NEIGHBOURS.iter().enumerate() {
                    let w = step(v, *d).expect("inner vertex has six neighbours");
                    inc[k] = find(v, w).expect("edges at an inner vertex are inner");
                }
                inner_vertices.push(InnerVertex { vertex: v, edges: inc });
            }
        }

        let mut boundary = Vec::new();
        let incident = |v: Vertex| -> [usize; 2] {
            let found: Vec<usize> = NEIGHBOURS
                .iter()
                .filter_map(|d| step(v, *d))
                .filter_map(|w| find(v, w))
                .collect();
            assert_eq!(found.len(), 2, "boundary point {v:?} must meet two inner edges");
            [found[0], found[1]]
        };
        for p in 1..n {
            let v = (p, 0);
            boundary.push(BoundaryPoint { side: Side::Lambda, component: p - 1, vertex: v, edges: incident(v) });
        }
        for p in 1..n {
            let v = (n - p, p);
            boundary.push(BoundaryPoint { side: Side::Mu, component: p - 1, vertex: v, edges: incident(v) });
        }
        for p in 1..n {
            let v = (0, p);
            boundary.push(BoundaryPoint { side: Side::Nu, component: p - 1, vertex: v, edges: incident(v) });
        }

        Ok(ObladeShape { n, edges, inner_vertices, boundary })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inner_vertex_count(&self) -> usize {
        self.inner_vertices.len()
    }

    pub fn inner_edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[InnerEdge] {
        &self.edges
    }

    pub fn inner_vertices(&self) -> &[InnerVertex] {
        &self.inner_vertices
    }

    pub fn boundary(&self) -> &[BoundaryPoint] {
        &self.boundary
    }

    /// Number of free parameters once the three sides are fixed.
    pub fn degrees_of_freedom(&self) -> usize {
        (self.n - 1) * (self.n - 2) / 2
    }

    /// Linear constraints `Σ coeff·x = rhs` for a triple; boundary ones first.
    fn constraints(&self, triple: &BranchingTriple) -> Vec<Constraint> {
        let mut cons = Vec::with_capacity(self.boundary.len() + 2 * self.inner_vertices.len());
        for b in &self.boundary {
            let w = match b.side {
                Side::Lambda => &triple.lambda,
                Side::Mu => &triple.mu,
                Side::Nu => &triple.nu,
            };
            cons.push(Constraint {
                terms: vec![(b.edges[0] as u32, 1), (b.edges[1] as u32, 1)],
                rhs: w.0[b.component],
            });
        }
        for v in &self.inner_vertices {
            let e = v.edges;
            for k in 0..2 {
                cons.push(Constraint {
                    terms: vec![(e[k] as u32, 1), (e[k + 1] as u32, 1), (e[k + 3] as u32, -1), (e[k + 4] as u32, -1)],
                    rhs: 0,
                });
            }
        }
        cons
    }

    /// Check every constraint of a labelling.
    pub fn is_valid_filling(&self, triple: &BranchingTriple, labels: &[i64]) -> bool {
        labels.len() == self.edges.len()
            && labels.iter().all(|&x| x >= 0)
            && self.constraints(triple).iter().all(|c| {
                c.terms.iter().map(|&(v, k)| k * labels[v as usize]).sum::<i64>() == c.rhs
            })
    }
}

/// `λ ⊗ μ → ν` for SU(n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BranchingTriple {
    pub n: usize,
    pub lambda: Weight,
    pub mu: Weight,
    pub nu: Weight,
}

impl BranchingTriple {
    pub fn new(n: usize, lambda: Weight, mu: Weight, nu: Weight) -> Result<Self> {
        if n < 2 {
            return Err(domain(format!("SU({n}) is not a simple group")));
        }
        for w in [&lambda, &mu, &nu] {
            if w.rank() != n - 1 {
                return Err(domain(format!("weight {w} does not have {} coordinates", n - 1)));
            }
            if !w.is_dominant() {
                return Err(domain(format!("weight {w} is not dominant")));
            }
        }
        Ok(BranchingTriple { n, lambda, mu, nu })
    }

    pub fn scaled(&self, s: i64) -> BranchingTriple {
        BranchingTriple {
            n: self.n,
            lambda: self.lambda.scaled(s),
            mu: self.mu.scaled(s),
            nu: self.nu.scaled(s),
        }
    }

    /// All three weights shifted by the Weyl vector.
    pub fn rho_shifted(&self) -> BranchingTriple {
        let rho = Weight::rho(self.n - 1);
        BranchingTriple {
            n: self.n,
            lambda: &self.lambda + &rho,
            mu: &self.mu + &rho,
            nu: &self.nu + &rho,
        }
    }

    /// `λ + μ - ν` lies in the root lattice.
    pub fn is_compatible(&self) -> bool {
        RootSystem::su(self.n)
            .map(|rs| rs.is_in_root_lattice(&(&(&self.lambda + &self.mu) - &self.nu)))
            .unwrap_or(false)
    }
}

/// One lattice point of the hive polytope of a triple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ObladeFilling {
    #[serde(flatten)]
    pub triple: BranchingTriple,
    pub labels: Vec<i64>,
}

impl ObladeFilling {
    pub fn shape(&self) -> ObladeShape {
        ObladeShape::new(self.triple.n).expect("filling carries a valid n")
    }

    /// Validate a filling read from outside (e.g. JSON).
    pub fn validate(&self) -> Result<()> {
        let shape = ObladeShape::new(self.triple.n)?;
        BranchingTriple::new(
            self.triple.n,
            self.triple.lambda.clone(),
            self.triple.mu.clone(),
            self.triple.nu.clone(),
        )?;
        if shape.is_valid_filling(&self.triple, &self.labels) {
            Ok(())
        } else {
            Err(domain("labels violate the O-blade constraints"))
        }
    }

    /// Sum of `label · root` over the edges of one direction, on simple roots.
    pub fn root_expansion(&self, direction: Direction) -> Vec<i64> {
        let shape = self.shape();
        let mut out = vec![0i64; shape.n - 1];
        for (e, &x) in shape.edges.iter().zip(&self.labels) {
            if e.direction == direction {
                for k in e.root_start..e.root_start + e.root_len {
                    out[k - 1] += x;
                }
            }
        }
        out
    }
}

/// True iff some inner edge carries the label 0.
pub fn is_degenerate(f: &ObladeFilling) -> bool {
    f.labels.contains(&0)
}

/// Kostant vectors `(λ+μ-ν, λ+ν̄-μ̄, μ+ν̄-λ̄)` for the directions
/// `Horizontal`, `Falling` and `Rising` respectively.
pub fn kostant_vectors(triple: &BranchingTriple) -> Result<(Weight, Weight, Weight)> {
    let rs = RootSystem::su(triple.n)?;
    let (l, m, n) = (&triple.lambda, &triple.mu, &triple.nu);
    let (lb, mb, nb) = (rs.conjugate(l), rs.conjugate(m), rs.conjugate(n));
    let k1 = &(l + m) - n;
    let k2 = &(l + &nb) - &mb;
    let k3 = &(m + &nb) - &lb;
    for k in [&k1, &k2, &k3] {
        if !rs.is_in_root_lattice(k) {
            return Err(domain(format!("Kostant vector {k} is not in the root lattice")));
        }
    }
    Ok((k1, k2, k3))
}

/// Kostant vector whose positive-root expansion is carried by a direction.
pub fn kostant_vector_for(triple: &BranchingTriple, direction: Direction) -> Result<Weight> {
    let (k1, k2, k3) = kostant_vectors(triple)?;
    Ok(match direction {
        Direction::Horizontal => k1,
        Direction::Falling => k2,
        Direction::Rising => k3,
    })
}

/// Search options shared by every counting routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Abort with [`Error::Budget`] once more than this many fillings are counted.
    pub budget: Option<u64>,
    /// Split the search tree across the rayon pool.
    pub parallel: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: None, parallel: true }
    }
}

impl SearchConfig {
    pub fn with_budget(budget: u64) -> Self {
        SearchConfig { budget: Some(budget), ..Default::default() }
    }

    pub fn sequential() -> Self {
        SearchConfig { budget: None, parallel: false }
    }
}

#[derive(Debug, Clone)]
struct Constraint {
    terms: Vec<(u32, i64)>,
    rhs: i64,
}

/// Integral affine description of all real solutions of the equalities:
/// `label_e = Σ_c offset[e][c]·rhs_c + Σ_j slope[e][j]·x_j`, where `x_j` is
/// the label of the `j`-th free edge. Depends only on `n`.
#[derive(Debug)]
struct Parametrization {
    free: Vec<usize>,
    offset: Vec<Vec<(u32, Rational64)>>,
    slope: Vec<i64>,
    /// Combinations of right-hand sides that must vanish for solvability.
    consistency: Vec<Vec<(u32, Rational64)>>,
}

impl Parametrization {
    fn build(shape: &ObladeShape) -> Result<Self> {
        let zero = BranchingTriple {
            n: shape.n,
            lambda: Weight::zero(shape.n - 1),
            mu: Weight::zero(shape.n - 1),
            nu: Weight::zero(shape.n - 1),
        };
        let cons = shape.constraints(&zero);
        let (m, e) = (cons.len(), shape.edges.len());
        // rows: [A | I] reduced to row echelon form
        let mut rows: Vec<Vec<Rational64>> = cons
            .iter()
            .enumerate()
            .map(|(ci, c)| {
                let mut row = vec![Rational64::zero(); e + m];
                for &(v, k) in &c.terms {
                    row[v as usize] += Rational64::from_integer(k);
                }
                row[e + ci] = Rational64::one();
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        // Pivot from the last edge backwards so the free edges are the
        // horizontal ones nearest the bottom side, which propagate best.
        for col in (0..e).rev() {
            let Some(p) = (r..m).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].recip();
            for x in rows[r].iter_mut() {
                *x *= inv;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[col].is_zero() {
                    let f = row[col];
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x -= *p * f;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        let free: Vec<usize> = (0..e).filter(|c| !pivots.contains(c)).collect();
        let k = free.len();
        let sparse = |row: &[Rational64]| -> Vec<(u32, Rational64)> {
            row[e..]
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (c as u32, *x))
                .collect()
        };
        let mut offset = vec![Vec::new(); e];
        let mut slope = vec![0i64; e * k];
        for (j, &f) in free.iter().enumerate() {
            slope[f * k + j] = 1;
        }
        for (i, &p) in pivots.iter().enumerate() {
            offset[p] = sparse(&rows[i]);
            for (j, &f) in free.iter().enumerate() {
                let s = -rows[i][f];
                if !s.is_integer() {
                    return Err(Error::Consistency(format!("O-blade of side {} has no integral parametrisation", shape.n)));
                }
                slope[p * k + j] = s.to_integer();
            }
        }
        let consistency = rows[r..].iter().map(|row| sparse(row)).collect();
        Ok(Parametrization { free, offset, slope, consistency })
    }

    fn for_side(shape: &ObladeShape) -> Result<Arc<Parametrization>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Parametrization>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(p) = cache.lock().expect("parametrisation cache poisoned").get(&shape.n) {
            return Ok(Arc::clone(p));
        }
        let p = Arc::new(Parametrization::build(shape)?);
        cache.lock().expect("parametrisation cache poisoned").insert(shape.n, Arc::clone(&p));
        Ok(p)
    }

    /// Integer offsets for concrete right-hand sides, or `None` when the
    /// equalities have no integral solution.
    fn offsets(&self, rhs: &[i64]) -> Option<Vec<i64>> {
        let eval = |row: &[(u32, Rational64)]| -> Rational64 {
            row.iter().map(|&(c, x)| x * Rational64::from_integer(rhs[c as usize])).sum()
        };
        if self.consistency.iter().any(|row| !eval(row).is_zero()) {
            return None;
        }
        self.offset
            .iter()
            .map(|row| {
                let v = eval(row);
                v.is_integer().then(|| v.to_integer())
            })
            .collect()
    }
}

/// Depth-first solver: bounds propagation over the free edges, closed-form
/// counting along the last free edge.
struct Solver {
    cons: Vec<Constraint>,
    var_cons: Vec<Vec<u32>>,
    free: Vec<usize>,
    offset: Vec<i64>,
    slope: Vec<i64>,
}

#[derive(Clone)]
struct Node {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

struct Budget<'a> {
    limit: Option<u64>,
    used: &'a AtomicU64,
    aborted: &'a AtomicBool,
    pending: u64,
}

impl Budget<'_> {
    const FLUSH: u64 = 1 << 12;

    #[inline]
    fn tick(&mut self, amount: u64) -> bool {
        self.pending += amount;
        if self.pending >= Self::FLUSH {
            self.flush()
        } else {
            true
        }
    }

    fn flush(&mut self) -> bool {
        let total = self.used.fetch_add(self.pending, Ordering::Relaxed) + self.pending;
        self.pending = 0;
        if let Some(limit) = self.limit {
            if total > limit {
                self.aborted.store(true, Ordering::Relaxed);
            }
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

/// The fillings `base + x·step` for `x` in `lo..=hi`.
struct Segment<'a> {
    base: &'a [i64],
    step: &'a [i64],
    lo: i64,
    hi: i64,
}

struct Scratch {
    queue: Vec<u32>,
    queued: Vec<bool>,
    base: Vec<i64>,
    step: Vec<i64>,
}

impl Scratch {
    fn new(solver: &Solver) -> Self {
        let e = solver.offset.len();
        Scratch { queue: Vec::new(), queued: vec![false; solver.cons.len()], base: vec![0; e], step: vec![0; e] }
    }
}

impl Solver {
    /// `None` when the triple has no fillings for lattice reasons.
    fn new(shape: &ObladeShape, triple: &BranchingTriple) -> Result<Option<Self>> {
        let param = Parametrization::for_side(shape)?;
        let cons = shape.constraints(triple);
        let rhs: Vec<i64> = cons.iter().map(|c| c.rhs).collect();
        let Some(offset) = param.offsets(&rhs) else {
            return Ok(None);
        };
        let mut var_cons = vec![Vec::new(); shape.edges.len()];
        for (ci, c) in cons.iter().enumerate() {
            for &(v, _) in &c.terms {
                var_cons[v as usize].push(ci as u32);
            }
        }
        Ok(Some(Solver { cons, var_cons, free: param.free.clone(), offset, slope: param.slope.clone() }))
    }

    /// Tighten `[lo, hi]` windows to a fixpoint; false when some window empties.
    fn propagate(&self, node: &mut Node, queue: &mut Vec<u32>, queued: &mut [bool]) -> bool {
        while let Some(ci) = queue.pop() {
            queued[ci as usize] = false;
            let c = &self.cons[ci as usize];
            let (mut min, mut max) = (0i64, 0i64);
            for &(v, k) in &c.terms {
                let (l, h) = (node.lo[v as usize], node.hi[v as usize]);
                if k > 0 {
                    min += l;
                    max += h;
                } else {
                    min -= h;
                    max -= l;
                }
            }
            if c.rhs < min || c.rhs > max {
                for &cj in queue.iter() {
                    queued[cj as usize] = false;
                }
                queue.clear();
                return false;
            }
            for &(v, k) in &c.terms {
                let vi = v as usize;
                let (l, h) = (node.lo[vi], node.hi[vi]);
                let (nl, nh) = if k > 0 {
                    ((c.rhs - (max - h)).max(l), (c.rhs - (min - l)).min(h))
                } else {
                    ((min + h - c.rhs).max(l), (max + l - c.rhs).min(h))
                };
                if nl != l || nh != h {
                    node.lo[vi] = nl;
                    node.hi[vi] = nh;
                    for &cj in &self.var_cons[vi] {
                        if !queued[cj as usize] {
                            queued[cj as usize] = true;
                            queue.push(cj);
                        }
                    }
                }
            }
        }
        true
    }

    fn root(&self, upper: &[i64]) -> Option<Node> {
        let mut node = Node { lo: vec![0; upper.len()], hi: upper.to_vec() };
        let mut queue: Vec<u32> = (0..self.cons.len() as u32).rev().collect();
        let mut queued = vec![true; self.cons.len()];
        self.propagate(&mut node, &mut queue, &mut queued).then_some(node)
    }

    /// First free edge to branch on; `None` once at most one is still open.
    fn branch_var(&self, node: &Node) -> Option<usize> {
        let mut open = self.free.iter().copied().filter(|&v| node.lo[v] < node.hi[v]);
        let first = open.next()?;
        open.next().map(|_| first)
    }

    fn child(&self, node: &Node, var: usize, value: i64, scratch: &mut Scratch) -> Option<Node> {
        let mut child = node.clone();
        child.lo[var] = value;
        child.hi[var] = value;
        for &cj in &self.var_cons[var] {
            if !scratch.queued[cj as usize] {
                scratch.queued[cj as usize] = true;
                scratch.queue.push(cj);
            }
        }
        self.propagate(&mut child, &mut scratch.queue, &mut scratch.queued).then_some(child)
    }

    fn children(&self, node: &Node, scratch: &mut Scratch) -> Vec<Node> {
        match self.branch_var(node) {
            None => Vec::new(),
            Some(v) => (node.lo[v]..=node.hi[v])
                .filter_map(|x| self.child(node, v, x, scratch))
                .collect(),
        }
    }

    /// Exact solution segment of a node with at most one open free edge.
    fn segment<'s>(&self, node: &Node, scratch: &'s mut Scratch) -> Option<Segment<'s>> {
        let k = self.free.len();
        let open = self.free.iter().position(|&v| node.lo[v] < node.hi[v]);
        let (lo, hi) = match open {
            Some(j) => (node.lo[self.free[j]], node.hi[self.free[j]]),
            None => (0, 0),
        };
        let (mut lo, mut hi) = (lo, hi);
        for e in 0..self.offset.len() {
            let row = &self.slope[e * k..(e + 1) * k];
            let mut a = self.offset[e];
            let mut m = 0;
            for (j, &s) in row.iter().enumerate() {
                if Some(j) == open {
                    m = s;
                } else if s != 0 {
                    a += s * node.lo[self.free[j]];
                }
            }
            // a + m·x >= 0
            if m > 0 {
                lo = lo.max((-a).div_euclid(m) + i64::from((-a).rem_euclid(m) != 0));
            } else if m < 0 {
                hi = hi.min(a.div_euclid(-m));
            } else if a < 0 {
                return None;
            }
            scratch.base[e] = a;
            scratch.step[e] = m;
        }
        (lo <= hi).then_some(Segment { base: &scratch.base, step: &scratch.step, lo, hi })
    }

    /// Depth-first walk handing every solution segment to `sink`; false aborts.
    fn walk(&self, node: &Node, scratch: &mut Scratch, sink: &mut dyn FnMut(Segment<'_>) -> bool) -> bool {
        match self.branch_var(node) {
            None => match self.segment(node, scratch) {
                Some(seg) => sink(seg),
                None => true,
            },
            Some(v) => {
                for x in node.lo[v]..=node.hi[v] {
                    if let Some(child) = self.child(node, v, x, scratch) {
                        if !self.walk(&child, scratch, sink) {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }

    /// Breadth-first expansion into ordered independent subtrees.
    fn frontier(&self, root: Node, target: usize) -> Vec<Node> {
        let mut scratch = Scratch::new(self);
        let mut frontier = vec![root];
        while frontier.len() < target {
            let mut expanded = false;
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for node in frontier {
                if self.branch_var(&node).is_some() {
                    expanded = true;
                    next.extend(self.children(&node, &mut scratch));
                } else {
                    next.push(node);
                }
            }
            frontier = next;
            if !expanded {
                break;
            }
        }
        frontier
    }
}

/// Per-edge upper bounds from the Kostant vectors, or `None` when a Kostant
/// vector is not a nonnegative integral combination of simple roots (no fillings).
fn label_bounds(shape: &ObladeShape, triple: &BranchingTriple) -> Result<Option<Vec<i64>>> {
    let rs = RootSystem::su(triple.n)?;
    let Ok((k1, k2, k3)) = kostant_vectors(triple) else {
        return Ok(None);
    };
    let mut heights = Vec::with_capacity(3);
    for k in [&k1, &k3, &k2] {
        let coords = rs.simple_root_coords(k);
        if coords.iter().any(|c| c.is_negative()) {
            return Ok(None);
        }
        let h = coords.iter().fold(BigRational::zero(), |a, b| a + b);
        heights.push(h.to_integer().to_i64().ok_or_else(|| domain("weights too large"))?);
    }
    Ok(Some(
        shape
            .edges
            .iter()
            .map(|e| match e.direction {
                Direction::Horizontal => heights[0],
                Direction::Rising => heights[1],
                Direction::Falling => heights[2],
            })
            .collect(),
    ))
}

fn check_triple(triple: &BranchingTriple) -> Result<()> {
    BranchingTriple::new(triple.n, triple.lambda.clone(), triple.mu.clone(), triple.nu.clone()).map(|_| ())
}

const FRONTIER_TARGET: usize = 512;

/// Solver and propagated root for a triple, or `None` when it has no fillings.
fn prepare(triple: &BranchingTriple) -> Result<Option<(Solver, Node)>> {
    check_triple(triple)?;
    let shape = ObladeShape::new(triple.n)?;
    let Some(upper) = label_bounds(&shape, triple)? else {
        return Ok(None);
    };
    let Some(solver) = Solver::new(&shape, triple)? else {
        return Ok(None);
    };
    Ok(solver.root(&upper).map(|root| (solver, root)))
}

/// Run `visit` on the ordered subtrees of the search, in parallel when asked.
fn search<T: Send>(
    solver: &Solver,
    root: Node,
    cfg: &SearchConfig,
    visit: impl Fn(&Node, &mut Budget<'_>) -> T + Sync,
) -> Result<Vec<T>> {
    let used = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let run = |node: &Node| {
        let mut budget = Budget { limit: cfg.budget, used: &used, aborted: &aborted, pending: 0 };
        let out = visit(node, &mut budget);
        budget.flush();
        out
    };
    let parts = if cfg.parallel && rayon::current_num_threads() > 1 {
        solver.frontier(root, FRONTIER_TARGET).par_iter().map(run).collect()
    } else {
        vec![run(&root)]
    };
    if aborted.load(Ordering::Relaxed) {
        return Err(Error::Budget { budget: cfg.budget.unwrap_or(u64::MAX) });
    }
    Ok(parts)
}

/// Number of O-blade fillings of a triple, i.e. the LR coefficient `C_{λμ}^ν`.
pub fn count_fillings(triple: &BranchingTriple) -> Result<BigUint> {
    count_fillings_with(triple, &SearchConfig::default())
}

pub fn count_fillings_with(triple: &BranchingTriple, cfg: &SearchConfig) -> Result<BigUint> {
    let Some((solver, root)) = prepare(triple)? else {
        return Ok(BigUint::zero());
    };
    let parts = search(&solver, root, cfg, |node, budget| {
        let mut scratch = Scratch::new(&solver);
        let mut count = 0u64;
        solver.walk(node, &mut scratch, &mut |seg| {
            let len = (seg.hi - seg.lo + 1) as u64;
            count += len;
            budget.tick(len)
        });
        count
    })?;
    Ok(parts.into_iter().map(BigUint::from).sum())
}

/// Every filling of a triple, in the solver's canonical order.
///
/// The order is lexicographic in the labels of the free edges and does not
/// depend on whether the search ran in parallel.
pub fn enumerate_fillings(triple: &BranchingTriple) -> Result<Vec<ObladeFilling>> {
    enumerate_fillings_with(triple, &SearchConfig::default())
}

pub fn enumerate_fillings_with(triple: &BranchingTriple, cfg: &SearchConfig) -> Result<Vec<ObladeFilling>> {
    let Some((solver, root)) = prepare(triple)? else {
        return Ok(Vec::new());
    };
    let parts = search(&solver, root, cfg, |node, budget| {
        let mut scratch = Scratch::new(&solver);
        let mut out = Vec::new();
        solver.walk(node, &mut scratch, &mut |seg| {
            for x in seg.lo..=seg.hi {
                out.push(seg.base.iter().zip(seg.step).map(|(a, m)| a + m * x).collect::<Vec<i64>>());
            }
            budget.tick((seg.hi - seg.lo + 1) as u64)
        });
        out
    })?;
    Ok(parts
        .into_iter()
        .flatten()
        .map(|labels| ObladeFilling { triple: triple.clone(), labels })
        .collect())
}

/// Visit fillings one at a time without materialising them; `visit` returns
/// false to stop early.
pub fn for_each_filling(triple: &BranchingTriple, mut visit: impl FnMut(&ObladeFilling) -> bool) -> Result<()> {
    let Some((solver, root)) = prepare(triple)? else {
        return Ok(());
    };
    let mut scratch = Scratch::new(&solver);
    let mut filling = ObladeFilling { triple: triple.clone(), labels: Vec::new() };
    solver.walk(&root, &mut scratch, &mut |seg| {
        for x in seg.lo..=seg.hi {
            filling.labels.clear();
            filling.labels.extend(seg.base.iter().zip(seg.step).map(|(a, m)| a + m * x));
            if !visit(&filling) {
                return false;
            }
        }
        true
    });
    Ok(())
}

/// A point of the honeycomb plane in the basis `p = e^{iπ/6}`, `q = e^{iπ/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub p: i64,
    pub q: i64,
}

impl GridPoint {
    pub fn to_cartesian(self) -> (f64, f64) {
        let s3 = 3f64.sqrt() / 2.0;
        (self.p as f64 * s3, self.p as f64 * 0.5 + self.q as f64)
    }

    fn add_scaled(self, d: (i64, i64), k: i64) -> GridPoint {
        GridPoint { p: self.p + k * d.0, q: self.q + k * d.1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoneycombEdge {
    /// Index into [`Honeycomb::vertices`].
    pub from: usize,
    pub to: usize,
    /// The O-blade edge this segment is dual to.
    pub oblade_edge: usize,
    pub length: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoneycombCell {
    /// Inner O-blade vertex the cell is dual to.
    pub inner_vertex: usize,
    /// Distinct corners counterclockwise.
    pub corners: Vec<GridPoint>,
    /// Side lengths counterclockwise, one per incident O-blade edge.
    pub side_lengths: [i64; 6],
}

impl HoneycombCell {
    /// 6 for a genuine hexagon, 5 for a pentagon, and so on; 0 for a point.
    pub fn side_count(&self) -> usize {
        self.side_lengths.iter().filter(|&&x| x > 0).count()
    }

    /// Sum of the side vectors; zero for every closed cell.
    pub fn closure_defect(&self) -> GridPoint {
        let mut acc = GridPoint { p: 0, q: 0 };
        for (k, &len) in self.side_lengths.iter().enumerate() {
            acc = acc.add_scaled(CELL_SIDE_DIRECTIONS[k], len);
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoneycombRay {
    pub origin: usize,
    pub side: Side,
    /// Outward unit direction in the grid basis.
    pub direction: GridPoint,
}

/// Metric honeycomb dual to a filling: one vertex per O-blade triangle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Honeycomb {
    pub vertices: Vec<GridPoint>,
    pub edges: Vec<HoneycombEdge>,
    pub cells: Vec<HoneycombCell>,
    pub rays: Vec<HoneycombRay>,
}

/// Unit vector (grid basis) of the honeycomb segment dual to an O-blade edge,
/// pointing from its down-triangle to its up-triangle.
fn dual_direction(d: Direction) -> (i64, i64) {
    match d {
        Direction::Horizontal => (0, 1),
        Direction::Rising => (1, -1),
        Direction::Falling => (-1, 0),
    }
}

/// Side directions of a cell counterclockwise, matching edges E, NE, NW, W, SW, SE.
const CELL_SIDE_DIRECTIONS: [(i64, i64); 6] = [(0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1), (1, 0)];

/// A small triangle of the O-blade, named by its three corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Face {
    /// corners (r,c), (r,c+1), (r+1,c)
    Up(usize, usize),
    /// corners (r,c+1), (r+1,c), (r+1,c+1)
    Down(usize, usize),
}

fn faces_of_edge(e: &InnerEdge) -> (Face, Face) {
    let [(r, c), _] = e.ends;
    match e.direction {
        // (r,c)-(r,c+1): up-triangle above, down-triangle below
        Direction::Horizontal => (Face::Down(r - 1, c), Face::Up(r, c)),
        // (r,c)-(r+1,c): up-triangle to the east, down-triangle to the west
        Direction::Rising => (Face::Down(r, c - 1), Face::Up(r, c)),
        // (r,c)-(r+1,c-1): up-triangle to the west, down-triangle to the east
        Direction::Falling => (Face::Down(r, c - 1), Face::Up(r, c - 1)),
    }
}

/// Build the metric honeycomb dual to a filling.
pub fn honeycomb_dual(f: &ObladeFilling) -> Result<Honeycomb> {
    f.validate()?;
    let shape = f.shape();
    let n = shape.n;
    let mut faces: Vec<Face> = Vec::new();
    for r in 0..n {
        for c in 0..n - r {
            faces.push(Face::Up(r, c));
            if r + c + 2 <= n {
                faces.push(Face::Down(r, c));
            }
        }
    }
    faces.sort();
    let index = |face: Face| faces.binary_search(&face).expect("face inside triangle");

    let mut adjacency: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); faces.len()];
    for (ei, e) in shape.edges.iter().enumerate() {
        let (down, up) = faces_of_edge(e);
        let (d, u) = (index(down), index(up));
        adjacency[d].push((u, ei, 1));
        adjacency[u].push((d, ei, -1));
    }
    let mut pos: Vec<Option<GridPoint>> = vec![None; faces.len()];
    pos[0] = Some(GridPoint { p: 0, q: 0 });
    let mut stack = vec![0usize];
    while let Some(a) = stack.pop() {
        let here = pos[a].unwrap();
        for &(b, ei, sign) in &adjacency[a] {
            let there = here.add_scaled(dual_direction(shape.edges[ei].direction), sign * f.labels[ei]);
            match pos[b] {
                None => {
                    pos[b] = Some(there);
                    stack.push(b);
                }
                Some(p) if p != there => {
                    return Err(Error::Consistency("honeycomb does not close".into()));
                }
                _ => {}
            }
        }
    }
    let vertices: Vec<GridPoint> = pos.into_iter().map(|p| p.expect("faces connected")).collect();

    let edges = shape
        .edges
        .iter()
        .enumerate()
        .map(|(ei, e)| {
            let (down, up) = faces_of_edge(e);
            HoneycombEdge { from: index(down), to: index(up), oblade_edge: ei, length: f.labels[ei] }
        })
        .collect();

    let cells = shape
        .inner_vertices
        .iter()
        .enumerate()
        .map(|(vi, v)| {
            let (r, c) = v.vertex;
            // faces around (r,c) counterclockwise starting between E and NE
            let ring = [
                Face::Up(r, c),
                Face::Down(r, c - 1),
                Face::Up(r, c - 1),
                Face::Down(r - 1, c - 1),
                Face::Up(r - 1, c),
                Face::Down(r - 1, c),
            ];
            let mut corners: Vec<GridPoint> = Vec::new();
            for face in ring {
                let p = vertices[index(face)];
                if corners.last() != Some(&p) && corners.first() != Some(&p) {
                    corners.push(p);
                }
            }
            let side_lengths = v.edges.map(|e| f.labels[e]);
            HoneycombCell { inner_vertex: vi, corners, side_lengths }
        })
        .collect();

    let mut rays = Vec::new();
    for r in 0..n {
        // left side edges (r,0)-(r+1,0) border Up(r,0); outward is west-ish
        rays.push(HoneycombRay { origin: index(Face::Up(r, 0)), side: Side::Lambda, direction: GridPoint { p: -1, q: 1 } });
    }
    for r in 0..n {
        // right side edge (r, n-r)-(r+1, n-r-1) borders Up(r, n-r-1)
        rays.push(HoneycombRay { origin: index(Face::Up(r, n - r - 1)), side: Side::Mu, direction: GridPoint { p: 1, q: 0 } });
    }
    for c in 0..n {
        rays.push(HoneycombRay { origin: index(Face::Up(0, c)), side: Side::Nu, direction: GridPoint { p: 0, q: -1 } });
    }

    Ok(Honeycomb { vertices, edges, cells, rays })
}
