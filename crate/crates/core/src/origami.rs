//! Permutation-pair surface engine.
//!
//! An origami on n squares is a pair of bijections of `{0..n-1}`: the right
//! permutation `sigma` (who is glued to my right side) and the top
//! permutation `tau` (who is glued to my top side). Relabelling the squares
//! by any bijection conjugates both, so an unlabelled surface is a
//! simultaneous conjugacy class of pairs.
//!
//! Convention: permutation words compose as functions, rightmost factor
//! applied first, so the commutator `[sigma, tau] = sigma tau sigma^-1
//! tau^-1` sends `x` to `sigma[tau[sigma_inv[tau_inv[x]]]]`. This is the
//! geometric choice: walking the four quadrant squares around the lower-left
//! vertex of square x closes up after one turn exactly when the commutator
//! fixes x, so its support marks the squares with singular lower-left
//! corners (the opposite composition order marks the wrong squares, even
//! though the cycle type agrees). Squares are 0-indexed internally and
//! 1-indexed in human-facing output.
//!
//! The cycle type of the commutator determines the stratum: `{2,2}` is
//! H(1,1), `{3}` is H(2), the identity commutator is the torus. A square has
//! a singular lower-left corner exactly when the commutator moves it.

use std::collections::HashSet;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::params::{Diagram, Params, ParamsA, ParamsB, ParamsC, ParamsD};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrigamiError {
    #[error("sigma and tau must be same-length bijections on at least one square")]
    NotAPermutation,
    #[error("operation requires a connected origami")]
    Disconnected,
    #[error("operation requires stratum H(1,1)")]
    WrongStratum,
    #[error("brute force supports 4 <= n <= 8, got {0}")]
    BruteForceRange(u64),
    #[error("invalid diagram parameters: {0}")]
    InvalidParams(String),
}

/// Sorted multiset of the cycle lengths > 1 of a permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleType(pub Vec<usize>);

/// Topological type read off the commutator cycle type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stratum {
    /// Commutator of type {2,2}: genus two, two simple cone points.
    H11,
    /// Commutator of type {3}: genus two, one double cone point.
    H2,
    /// Trivial commutator: genus one.
    Torus,
    Other,
}

/// Cycle type of an explicit permutation (one-line images).
pub fn cycle_type(perm: &[u32]) -> CycleType {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = perm[x] as usize;
        }
        if len > 1 {
            lengths.push(len);
        }
    }
    lengths.sort_unstable();
    CycleType(lengths)
}

fn invert(perm: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; perm.len()];
    for (x, &y) in perm.iter().enumerate() {
        inv[y as usize] = x as u32;
    }
    inv
}

fn is_bijection(perm: &[u32]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &y in perm {
        let y = y as usize;
        if y >= perm.len() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

/// A square-tiled surface given by its right and top permutations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Origami {
    sigma: Vec<u32>,
    tau: Vec<u32>,
}

impl Origami {
    /// Validates that both images are bijections of the same square set.
    pub fn new(sigma: Vec<u32>, tau: Vec<u32>) -> Result<Self, OrigamiError> {
        if sigma.is_empty() || sigma.len() != tau.len() {
            return Err(OrigamiError::NotAPermutation);
        }
        if !is_bijection(&sigma) || !is_bijection(&tau) {
            return Err(OrigamiError::NotAPermutation);
        }
        Ok(Origami { sigma, tau })
    }

    /// Builds from cycle notation, e.g. `&[&[0, 1, 2]]` for a 3-cycle.
    pub fn from_cycles(n: usize, sigma: &[&[u32]], tau: &[&[u32]]) -> Result<Self, OrigamiError> {
        let expand = |cycles: &[&[u32]]| {
            let mut perm: Vec<u32> = (0..n as u32).collect();
            for cyc in cycles {
                for i in 0..cyc.len() {
                    perm[cyc[i] as usize] = cyc[(i + 1) % cyc.len()];
                }
            }
            perm
        };
        Origami::new(expand(sigma), expand(tau))
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }

    pub fn tau(&self) -> &[u32] {
        &self.tau
    }

    /// The commutator `sigma tau sigma^-1 tau^-1`, composed as functions
    /// with the rightmost factor applied first.
    pub fn commutator(&self) -> Vec<u32> {
        let sigma_inv = invert(&self.sigma);
        let tau_inv = invert(&self.tau);
        (0..self.n())
            .map(|x| {
                let y = sigma_inv[tau_inv[x] as usize] as usize;
                self.sigma[self.tau[y] as usize]
            })
            .collect()
    }

    pub fn stratum(&self) -> Stratum {
        match cycle_type(&self.commutator()).0.as_slice() {
            [] => Stratum::Torus,
            [3] => Stratum::H2,
            [2, 2] => Stratum::H11,
            _ => Stratum::Other,
        }
    }

    /// True iff the orbit of square 0 under the monodromy group is all n
    /// squares. Forward images suffice: an orbit closed under sigma and tau
    /// on a finite set is closed under their inverses too.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for next in [self.sigma[x] as usize, self.tau[x] as usize] {
                if !seen[next] {
                    seen[next] = true;
                    count += 1;
                    stack.push(next);
                }
            }
        }
        count == n
    }

    /// Relabels squares by `gamma`, conjugating both permutations.
    pub fn relabel(&self, gamma: &[u32]) -> Origami {
        assert!(gamma.len() == self.n() && is_bijection(gamma));
        let n = self.n();
        let mut sigma = vec![0u32; n];
        let mut tau = vec![0u32; n];
        for x in 0..n {
            sigma[gamma[x] as usize] = gamma[self.sigma[x] as usize];
            tau[gamma[x] as usize] = gamma[self.tau[x] as usize];
        }
        Origami { sigma, tau }
    }

    /// Block-primitivity of the monodromy group on the squares.
    ///
    /// For every k != 0 the minimal block containing {0, k} is computed by
    /// iterated refinement (merge cells whose generator images overlap until
    /// stable); the group is primitive iff every such block is the full
    /// square set. Requires a connected origami.
    pub fn is_primitive_group(&self) -> Result<bool, OrigamiError> {
        if !self.is_connected() {
            return Err(OrigamiError::Disconnected);
        }
        let n = self.n();
        for k in 1..n {
            if !self.min_block_is_full(0, k) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn min_block_is_full(&self, a: usize, b: usize) -> bool {
        let n = self.n();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        let mut classes = n;
        let mut queue: Vec<(u32, u32)> = Vec::new();
        let (ra, rb) = (find(&mut parent, a as u32), find(&mut parent, b as u32));
        parent[ra as usize] = rb;
        classes -= 1;
        queue.push((a as u32, b as u32));
        while let Some((x, y)) = queue.pop() {
            for gen in [&self.sigma, &self.tau] {
                let (gx, gy) = (gen[x as usize], gen[y as usize]);
                let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
                if rx != ry {
                    parent[rx as usize] = ry;
                    classes -= 1;
                    queue.push((gx, gy));
                }
            }
        }
        // For a transitive group the congruence classes all have equal size,
        // so the block through {a, b} is everything iff one class remains.
        classes == 1
    }
}

/// One horizontal cylinder: its rows of squares bottom to top, geometry, and
/// the number of saddle connections on each boundary circle.
#[derive(Debug, Clone)]
pub struct Cylinder {
    pub rows: Vec<Vec<u32>>,
    pub width: usize,
    pub height: usize,
    pub top_sc_count: usize,
    pub bottom_sc_count: usize,
}

/// Complete horizontal cylinder decomposition of a connected origami.
#[derive(Debug, Clone)]
pub struct CylinderDecomposition {
    pub cylinders: Vec<Cylinder>,
}

impl CylinderDecomposition {
    /// Multiset of per-boundary saddle-connection counts, smallest first.
    pub fn boundary_sc_counts(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for c in &self.cylinders {
            out.push(c.bottom_sc_count);
            out.push(c.top_sc_count);
        }
        out.sort_unstable();
        out
    }
}

impl Origami {
    /// Cycles of sigma, each ordered from its smallest element, sorted by
    /// that element.
    fn sigma_cycles(&self) -> (Vec<Vec<u32>>, Vec<u32>) {
        let n = self.n();
        let mut cyc_id = vec![u32::MAX; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if cyc_id[start] != u32::MAX {
                continue;
            }
            let id = cycles.len() as u32;
            let mut cyc = Vec::new();
            let mut x = start;
            while cyc_id[x] == u32::MAX {
                cyc_id[x] = id;
                cyc.push(x as u32);
                x = self.sigma[x] as usize;
            }
            cycles.push(cyc);
        }
        (cycles, cyc_id)
    }

    /// Decomposes the surface into horizontal cylinders.
    ///
    /// Rows are the sigma-cycles. A square has a singular lower-left corner
    /// iff the commutator moves it; a row is the bottom of a cylinder iff it
    /// contains such a square, and a row continues upward into the cycle of
    /// its tau-images iff none of those images is singular. Boundary
    /// saddle-connection counts are the singular squares seen along each
    /// boundary circle.
    pub fn cylinder_decomposition(&self) -> Result<CylinderDecomposition, OrigamiError> {
        if !self.is_connected() {
            return Err(OrigamiError::Disconnected);
        }
        let comm = self.commutator();
        let singular: Vec<bool> = comm
            .iter()
            .enumerate()
            .map(|(x, &y)| y as usize != x)
            .collect();
        let (cycles, cyc_id) = self.sigma_cycles();

        let row_up = |row: &[u32]| cyc_id[self.tau[row[0] as usize] as usize] as usize;
        let top_singular =
            |row: &[u32]| row.iter().any(|&x| singular[self.tau[x as usize] as usize]);

        let mut chains: Vec<Vec<usize>> = Vec::new();
        if singular.iter().all(|&s| !s) {
            // Torus: no singular leaves, one cylinder wrapping through all
            // rows starting from the row of square 0.
            let start = cyc_id[0] as usize;
            let mut chain = vec![start];
            let mut cur = row_up(&cycles[start]);
            while cur != start {
                chain.push(cur);
                cur = row_up(&cycles[cur]);
            }
            assert!(chain.len() == cycles.len(), "disconnected torus rows");
            chains.push(chain);
        } else {
            for (id, row) in cycles.iter().enumerate() {
                if !row.iter().any(|&x| singular[x as usize]) {
                    continue; // not a bottom row
                }
                let mut chain = vec![id];
                let mut cur = id;
                while !top_singular(&cycles[cur]) {
                    cur = row_up(&cycles[cur]);
                    chain.push(cur);
                }
                chains.push(chain);
            }
            let total: usize = chains.iter().map(|c| c.len()).sum();
            assert!(total == cycles.len(), "cylinder chains must cover all rows");
        }

        let mut cylinders: Vec<Cylinder> = chains
            .into_iter()
            .map(|chain| {
                let rows: Vec<Vec<u32>> = chain.iter().map(|&id| cycles[id].clone()).collect();
                let width = rows[0].len();
                assert!(rows.iter().all(|r| r.len() == width), "row widths differ");
                let bottom_sc_count =
                    rows[0].iter().filter(|&&x| singular[x as usize]).count();
                let top_sc_count = rows
                    .last()
                    .unwrap()
                    .iter()
                    .filter(|&&x| singular[self.tau[x as usize] as usize])
                    .count();
                Cylinder {
                    height: rows.len(),
                    width,
                    rows,
                    top_sc_count,
                    bottom_sc_count,
                }
            })
            .collect();
        cylinders.sort_by_key(|c| c.rows[0][0]);
        let area: usize = cylinders.iter().map(|c| c.width * c.height).sum();
        assert!(area == self.n(), "cylinder areas must sum to n");
        Ok(CylinderDecomposition { cylinders })
    }

    /// Assigns the cylinder diagram of a connected H(1,1) origami.
    ///
    /// One cylinder is diagram A and three are diagram D. With two
    /// cylinders, diagram B is recognized by a boundary circle made of a
    /// single closed saddle connection (diagram C has two on every circle).
    pub fn classify_diagram(&self) -> Result<Diagram, OrigamiError> {
        if self.stratum() != Stratum::H11 {
            return Err(OrigamiError::WrongStratum);
        }
        let decomp = self.cylinder_decomposition()?;
        match decomp.cylinders.len() {
            1 => Ok(Diagram::A),
            3 => Ok(Diagram::D),
            2 => {
                let counts = decomp.boundary_sc_counts();
                debug_assert!(
                    counts == [1, 1, 3, 3] || counts == [2, 2, 2, 2],
                    "unexpected two-cylinder boundary profile {counts:?}"
                );
                if counts[0] == 1 {
                    Ok(Diagram::B)
                } else {
                    Ok(Diagram::C)
                }
            }
            k => panic!("H(1,1) surface decomposed into {k} cylinders"),
        }
    }
}

/// Labelling-invariant encoding of a connected origami.
///
/// For each base square the squares are relabelled in BFS order (expanding
/// via sigma then tau) and `(sigma, tau)` re-encoded in the new labels; the
/// lexicographic minimum over bases is invariant under relabelling, and two
/// connected origamis are simultaneous-conjugate iff their forms agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u32>);

impl CanonicalForm {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl Origami {
    pub fn canonical_form(&self) -> Result<CanonicalForm, OrigamiError> {
        if !self.is_connected() {
            return Err(OrigamiError::Disconnected);
        }
        let n = self.n();
        let mut best: Option<Vec<u32>> = None;
        let mut pos = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        for base in 0..n {
            pos.iter_mut().for_each(|p| *p = u32::MAX);
            order.clear();
            pos[base] = 0;
            order.push(base as u32);
            let mut head = 0;
            while head < order.len() {
                let x = order[head] as usize;
                head += 1;
                for next in [self.sigma[x] as usize, self.tau[x] as usize] {
                    if pos[next] == u32::MAX {
                        pos[next] = order.len() as u32;
                        order.push(next as u32);
                    }
                }
            }
            let mut enc = Vec::with_capacity(2 * n);
            enc.extend(order.iter().map(|&old| pos[self.sigma[old as usize] as usize]));
            enc.extend(order.iter().map(|&old| pos[self.tau[old as usize] as usize]));
            if best.as_ref().is_none_or(|b| enc < *b) {
                best = Some(enc);
            }
        }
        Ok(CanonicalForm(best.unwrap()))
    }
}

/// Counts distinct surfaces (simultaneous conjugacy classes) in a stream.
pub fn dedup_count<I>(origamis: I) -> Result<usize, OrigamiError>
where
    I: IntoIterator<Item = Origami>,
{
    let mut seen = HashSet::new();
    for o in origamis {
        seen.insert(o.canonical_form()?);
    }
    Ok(seen.len())
}

/// The lattice of absolute periods as a Hermite-normal-form basis
/// `{(a, 0), (b, c)}` of a finite-index sublattice of Z^2, with
/// `a, c >= 1` and `0 <= b < a`, or a degeneracy flag for rank < 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lattice2 {
    Rank2 { a: i64, b: i64, c: i64 },
    Degenerate,
}

impl Lattice2 {
    /// Index in Z^2, if the lattice has full rank.
    pub fn index(&self) -> Option<i64> {
        match self {
            Lattice2::Rank2 { a, c, .. } => Some(a * c),
            Lattice2::Degenerate => None,
        }
    }

    pub fn is_full_z2(&self) -> bool {
        self.index() == Some(1)
    }
}

/// Accumulates integer vectors into the HNF description above.
struct LatticeBuilder {
    axis: i64,          // generator of the intersection with the x-axis
    off: (i64, i64),    // a vector of minimal positive y found so far
}

impl LatticeBuilder {
    fn new() -> Self {
        LatticeBuilder { axis: 0, off: (0, 0) }
    }

    fn push(&mut self, v: (i64, i64)) {
        if v == (0, 0) {
            return;
        }
        if v.1 == 0 {
            self.axis = gcd_i64(self.axis, v.0);
            return;
        }
        if self.off.1 == 0 {
            self.off = if v.1 < 0 { (-v.0, -v.1) } else { v };
            return;
        }
        // Combine off and v: ext-gcd on the y components yields the new
        // off-vector; the determinant over the gcd falls onto the x-axis.
        let (g, s, t) = ext_gcd(self.off.1, v.1);
        let det = self.off.0 * v.1 - v.0 * self.off.1;
        self.axis = gcd_i64(self.axis, det / g);
        self.off = (s * self.off.0 + t * v.0, g);
    }

    fn finish(self) -> Lattice2 {
        if self.axis == 0 || self.off.1 == 0 {
            return Lattice2::Degenerate;
        }
        let a = self.axis.abs();
        let c = self.off.1;
        let b = self.off.0.rem_euclid(a);
        Lattice2::Rank2 { a, b, c }
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd: returns `(g, s, t)` with `s a + t b = g > 0`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl Origami {
    /// Lattice of absolute periods, via holonomies of graph cycles.
    ///
    /// The 2n-edge graph on squares carries weight (1,0) on sigma-edges and
    /// (0,1) on tau-edges; a BFS spanning tree assigns each square a
    /// position, and every edge contributes its fundamental-cycle holonomy.
    /// Loops among square centers generate the absolute homology classes, so
    /// the resulting sublattice of Z^2 is the lattice of absolute periods.
    pub fn absolute_period_lattice(&self) -> Result<Lattice2, OrigamiError> {
        if !self.is_connected() {
            return Err(OrigamiError::Disconnected);
        }
        let n = self.n();
        let mut pos: Vec<Option<(i64, i64)>> = vec![None; n];
        pos[0] = Some((0, 0));
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let p = pos[x].unwrap();
            for (next, e) in [
                (self.sigma[x] as usize, (1i64, 0i64)),
                (self.tau[x] as usize, (0i64, 1i64)),
            ] {
                if pos[next].is_none() {
                    pos[next] = Some((p.0 + e.0, p.1 + e.1));
                    queue.push(next);
                }
            }
        }
        let mut lat = LatticeBuilder::new();
        for x in 0..n {
            let p = pos[x].unwrap();
            for (next, e) in [
                (self.sigma[x] as usize, (1i64, 0i64)),
                (self.tau[x] as usize, (0i64, 1i64)),
            ] {
                let q = pos[next].unwrap();
                lat.push((p.0 + e.0 - q.0, p.1 + e.1 - q.1));
            }
        }
        Ok(lat.finish())
    }
}

fn require(cond: bool, msg: &str) -> Result<(), OrigamiError> {
    if cond {
        Ok(())
    } else {
        Err(OrigamiError::InvalidParams(msg.to_string()))
    }
}

/// Builds the origami of a parameter tuple.
///
/// Squares are laid out cylinder by cylinder, row by row bottom to top;
/// sigma cycles every row. Vertical gluings go straight up inside a
/// cylinder; each cylinder's shear is applied at its top boundary, where the
/// positions are rotated by the shear and then sent through the fixed
/// boundary identification of the diagram's prototype. The identifications
/// below are pinned by the validation contract (stratum, cylinder geometry,
/// classification round-trip, primitivity equivalence, dedup counts), not by
/// an external drawing.
pub fn build_from_params(params: &Params) -> Result<Origami, OrigamiError> {
    match params {
        Params::A(t) => build_a(t),
        Params::B(t) => build_b(t),
        Params::C(t) => build_c(t),
        Params::D(t) => build_d(t),
    }
}

/// Diagram A: one cylinder of width `j+k+l+m`, height p. Reading the bottom
/// boundary left to right, the saddle connections appear in the cyclic
/// order (j, k, l, m); the closing identification maps the top segments
/// (j, m, l, k) back onto them.
fn build_a(t: &ParamsA) -> Result<Origami, OrigamiError> {
    let (p, j, k, l, m) = (
        t.p as usize,
        t.j as usize,
        t.k as usize,
        t.l as usize,
        t.m as usize,
    );
    require(p >= 1 && j >= 1 && k >= 1 && l >= 1 && m >= 1, "fields must be positive")?;
    let w = j + k + l + m;
    require((t.alpha as usize) < w, "shear alpha out of range")?;
    let alpha = t.alpha as usize;
    let n = p * w;
    let id = |r: usize, c: usize| (r * w + c) as u32;
    let mut sigma = vec![0u32; n];
    let mut tau = vec![0u32; n];
    for r in 0..p {
        for c in 0..w {
            sigma[id(r, c) as usize] = id(r, (c + 1) % w);
            tau[id(r, c) as usize] = if r + 1 < p {
                id(r + 1, c)
            } else {
                let c2 = (c + w - alpha) % w;
                let glued = if c2 < j {
                    c2
                } else if c2 < j + m {
                    c2 + k + l
                } else if c2 < j + m + l {
                    c2 + k - m
                } else {
                    c2 - (l + m)
                };
                id(0, glued)
            };
        }
    }
    Origami::new(sigma, tau)
}

/// Diagram B: a long cylinder of width `k+l+m` (height p, shear alpha) and a
/// short one of width `m` (height q, shear beta). The short cylinder sits
/// over the segment `[0, m)` of the long top boundary; the `k` and `l`
/// segments return to the long bottom boundary with their order swapped.
fn build_b(t: &ParamsB) -> Result<Origami, OrigamiError> {
    let (p, q, k, l, m) = (
        t.p as usize,
        t.q as usize,
        t.k as usize,
        t.l as usize,
        t.m as usize,
    );
    require(p >= 1 && q >= 1 && k >= 1 && l >= 1 && m >= 1, "fields must be positive")?;
    let w1 = k + l + m;
    require((t.alpha as usize) < w1 && (t.beta as usize) < m, "shear out of range")?;
    let (alpha, beta) = (t.alpha as usize, t.beta as usize);
    let base2 = p * w1;
    let n = base2 + q * m;
    let long = |r: usize, c: usize| (r * w1 + c) as u32;
    let short = |r: usize, c: usize| (base2 + r * m + c) as u32;
    let mut sigma = vec![0u32; n];
    let mut tau = vec![0u32; n];
    for r in 0..p {
        for c in 0..w1 {
            sigma[long(r, c) as usize] = long(r, (c + 1) % w1);
            tau[long(r, c) as usize] = if r + 1 < p {
                long(r + 1, c)
            } else {
                let c2 = (c + w1 - alpha) % w1;
                if c2 < m {
                    short(0, c2)
                } else if c2 < m + k {
                    long(0, c2 + l)
                } else {
                    long(0, c2 - k)
                }
            };
        }
    }
    for r in 0..q {
        for c in 0..m {
            sigma[short(r, c) as usize] = short(r, (c + 1) % m);
            tau[short(r, c) as usize] = if r + 1 < q {
                short(r + 1, c)
            } else {
                long(0, (c + m - beta) % m)
            };
        }
    }
    Origami::new(sigma, tau)
}

/// Diagram C: cylinders of width `k+l` (height p, shear alpha) and `l+m`
/// (height q, shear beta) sharing the two saddle connections of length `l`;
/// the `k` and `m` segments close onto their own cylinders.
fn build_c(t: &ParamsC) -> Result<Origami, OrigamiError> {
    let (p, q, k, l, m) = (
        t.p as usize,
        t.q as usize,
        t.k as usize,
        t.l as usize,
        t.m as usize,
    );
    require(p >= 1 && q >= 1 && k >= 1 && l >= 1 && m >= 1, "fields must be positive")?;
    let (w1, w2) = (k + l, l + m);
    require((t.alpha as usize) < w1 && (t.beta as usize) < w2, "shear out of range")?;
    let (alpha, beta) = (t.alpha as usize, t.beta as usize);
    let base2 = p * w1;
    let n = base2 + q * w2;
    let c1 = |r: usize, c: usize| (r * w1 + c) as u32;
    let c2 = |r: usize, c: usize| (base2 + r * w2 + c) as u32;
    let mut sigma = vec![0u32; n];
    let mut tau = vec![0u32; n];
    for r in 0..p {
        for c in 0..w1 {
            sigma[c1(r, c) as usize] = c1(r, (c + 1) % w1);
            tau[c1(r, c) as usize] = if r + 1 < p {
                c1(r + 1, c)
            } else {
                let cc = (c + w1 - alpha) % w1;
                if cc < l {
                    c2(0, cc)
                } else {
                    c1(0, cc)
                }
            };
        }
    }
    for r in 0..q {
        for c in 0..w2 {
            sigma[c2(r, c) as usize] = c2(r, (c + 1) % w2);
            tau[c2(r, c) as usize] = if r + 1 < q {
                c2(r + 1, c)
            } else {
                let cc = (c + w2 - beta) % w2;
                if cc < l {
                    c1(0, cc)
                } else {
                    c2(0, cc)
                }
            };
        }
    }
    Origami::new(sigma, tau)
}

/// Diagram D: a middle cylinder of width `k+l` (height q, shear beta)
/// carrying a width-k cylinder (height p, shear alpha) over its `[0, k)`
/// segment and a width-l cylinder (height r, shear gamma) over `[k, k+l)`.
fn build_d(t: &ParamsD) -> Result<Origami, OrigamiError> {
    let (hp, hq, hr, k, l) = (
        t.p as usize,
        t.q as usize,
        t.r as usize,
        t.k as usize,
        t.l as usize,
    );
    require(hp >= 1 && hq >= 1 && hr >= 1 && k >= 1 && l >= 1, "fields must be positive")?;
    let w2 = k + l;
    require(
        (t.alpha as usize) < k && (t.beta as usize) < w2 && (t.gamma as usize) < l,
        "shear out of range",
    )?;
    let (alpha, beta, gamma) = (t.alpha as usize, t.beta as usize, t.gamma as usize);
    let base_k = hq * w2;
    let base_l = base_k + hp * k;
    let n = base_l + hr * l;
    let mid = |r: usize, c: usize| (r * w2 + c) as u32;
    let kcyl = |r: usize, c: usize| (base_k + r * k + c) as u32;
    let lcyl = |r: usize, c: usize| (base_l + r * l + c) as u32;
    let mut sigma = vec![0u32; n];
    let mut tau = vec![0u32; n];
    for r in 0..hq {
        for c in 0..w2 {
            sigma[mid(r, c) as usize] = mid(r, (c + 1) % w2);
            tau[mid(r, c) as usize] = if r + 1 < hq {
                mid(r + 1, c)
            } else {
                let cc = (c + w2 - beta) % w2;
                if cc < k {
                    kcyl(0, cc)
                } else {
                    lcyl(0, cc - k)
                }
            };
        }
    }
    for r in 0..hp {
        for c in 0..k {
            sigma[kcyl(r, c) as usize] = kcyl(r, (c + 1) % k);
            tau[kcyl(r, c) as usize] = if r + 1 < hp {
                kcyl(r + 1, c)
            } else {
                mid(0, (c + k - alpha) % k)
            };
        }
    }
    for r in 0..hr {
        for c in 0..l {
            sigma[lcyl(r, c) as usize] = lcyl(r, (c + 1) % l);
            tau[lcyl(r, c) as usize] = if r + 1 < hr {
                lcyl(r + 1, c)
            } else {
                mid(0, k + (c + l - gamma) % l)
            };
        }
    }
    Origami::new(sigma, tau)
}

/// Result of a full sweep over permutation pairs at a fixed n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteForceCensus {
    pub n: u64,
    /// Primitive H(1,1) classes per diagram A-D.
    pub h11: [u64; 4],
    /// Primitive H(2) one-cylinder classes.
    pub f: u64,
    /// Primitive H(2) two-cylinder classes.
    pub g: u64,
}

fn all_permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..n as u32).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n - 1).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

#[derive(Default)]
struct SweepAcc {
    h11: [HashSet<CanonicalForm>; 4],
    h2_one: HashSet<CanonicalForm>,
    h2_two: HashSet<CanonicalForm>,
}

impl SweepAcc {
    fn merge(mut self, other: SweepAcc) -> SweepAcc {
        for i in 0..4 {
            self.h11[i].extend(other.h11[i].iter().cloned());
        }
        self.h2_one.extend(other.h2_one);
        self.h2_two.extend(other.h2_two);
        self
    }
}

/// Sweeps all of `S_n x S_n` and tallies primitive classes.
///
/// Pairs are filtered by commutator cycle type first (cheap), then
/// connectivity, then block-primitivity; survivors are deduplicated by
/// canonical form. H(1,1) classes are split by diagram, H(2) classes by
/// cylinder count. The outer permutation index is partitioned across
/// workers, each owning a private form set; sets are merged at the end.
///
/// Cost is `(n!)^2` pairs: seconds through n = 6, about a minute at n = 7,
/// and n = 8 (1.6e9 pairs) is for deliberate opt-in only.
pub fn brute_force_census(n: u64) -> Result<BruteForceCensus, OrigamiError> {
    if !(4..=8).contains(&n) {
        return Err(OrigamiError::BruteForceRange(n));
    }
    let nu = n as usize;
    let perms = all_permutations(nu);
    let inverses: Vec<Vec<u32>> = perms.iter().map(|p| invert(p)).collect();
    let total = perms.len() as u64;
    let progress = AtomicU64::new(0);

    let acc = (0..perms.len())
        .into_par_iter()
        .fold(SweepAcc::default, |mut acc, si| {
            let sigma = &perms[si];
            let sigma_inv = &inverses[si];
            let mut comm = [0u32; 8];
            for (ti, tau) in perms.iter().enumerate() {
                let tau_inv = &inverses[ti];
                // commutator sigma tau sigma^-1 tau^-1, rightmost first
                let mut moved = 0usize;
                for x in 0..nu {
                    let y =
                        sigma[tau[sigma_inv[tau_inv[x] as usize] as usize] as usize];
                    comm[x] = y;
                    if y as usize != x {
                        moved += 1;
                        if moved > 4 {
                            break;
                        }
                    }
                }
                let h11 = moved == 4
                    && (0..nu).all(|x| comm[comm[x] as usize] as usize == x);
                let h2 = moved == 3;
                if !h11 && !h2 {
                    continue;
                }
                let o = Origami { sigma: sigma.clone(), tau: tau.clone() };
                if !o.is_connected() {
                    continue;
                }
                if !o.is_primitive_group().unwrap() {
                    continue;
                }
                let form = o.canonical_form().unwrap();
                if h11 {
                    let diagram = o.classify_diagram().unwrap();
                    acc.h11[diagram as usize].insert(form);
                } else {
                    let cyls = o.cylinder_decomposition().unwrap().cylinders.len();
                    debug_assert!(cyls == 1 || cyls == 2);
                    if cyls == 1 {
                        acc.h2_one.insert(form);
                    } else {
                        acc.h2_two.insert(form);
                    }
                }
            }
            let done = progress.fetch_add(1, Ordering::Relaxed) + 1;
            if done.is_multiple_of(4096) || done == total {
                log::info!("brute force n={n}: {done}/{total} outer permutations");
            }
            acc
        })
        .reduce(SweepAcc::default, SweepAcc::merge);

    Ok(BruteForceCensus {
        n,
        h11: [
            acc.h11[0].len() as u64,
            acc.h11[1].len() as u64,
            acc.h11[2].len() as u64,
            acc.h11[3].len() as u64,
        ],
        f: acc.h2_one.len() as u64,
        g: acc.h2_two.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lcg_perm(n: usize, seed: &mut u64) -> Vec<u32> {
        // Fisher-Yates with a small LCG; plenty for relabelling tests.
        let mut v: Vec<u32> = (0..n as u32).collect();
        for i in (1..n).rev() {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (*seed >> 33) as usize % (i + 1);
            v.swap(i, j);
        }
        v
    }

    #[test]
    fn constructor_validates() {
        assert!(Origami::new(vec![0, 0], vec![0, 1]).is_err());
        assert!(Origami::new(vec![1, 0], vec![0]).is_err());
        assert!(Origami::new(vec![], vec![]).is_err());
        assert!(Origami::new(vec![1, 0], vec![0, 1]).is_ok());
    }

    #[test]
    fn stratum_examples() {
        // sigma a 4-cycle, tau identity: commutator trivial
        let torus = Origami::from_cycles(4, &[&[0, 1, 2, 3]], &[]).unwrap();
        assert_eq!(torus.stratum(), Stratum::Torus);
        // the 3-square L origami lies in H(2)
        let l3 = Origami::from_cycles(3, &[&[0, 1, 2]], &[&[0, 1]]).unwrap();
        assert_eq!(l3.stratum(), Stratum::H2);
        assert_eq!(cycle_type(&l3.commutator()).0, vec![3]);
    }

    #[test]
    fn connectivity_examples() {
        let o = Origami::new(vec![0, 1], vec![0, 1]).unwrap();
        assert!(!o.is_connected());
        let o = Origami::from_cycles(5, &[&[0, 1, 2, 3, 4]], &[]).unwrap();
        assert!(o.is_connected());
        let o = Origami::from_cycles(4, &[&[0, 1], &[2, 3]], &[&[0, 2], &[1, 3]]).unwrap();
        assert!(o.is_connected());
    }

    #[test]
    fn primitivity_examples() {
        // sigma a 4-cycle with tau = sigma^2 keeps the blocks {0,2},{1,3}
        let o = Origami::new(vec![1, 2, 3, 0], vec![2, 3, 0, 1]).unwrap();
        assert!(!o.is_primitive_group().unwrap());
        // S_3 on 3 points is primitive
        let l3 = Origami::from_cycles(3, &[&[0, 1, 2]], &[&[0, 1]]).unwrap();
        assert!(l3.is_primitive_group().unwrap());
        // full symmetric group: n-cycle plus transposition
        let o = Origami::from_cycles(7, &[&[0, 1, 2, 3, 4, 5, 6]], &[&[0, 1]]).unwrap();
        assert!(o.is_primitive_group().unwrap());
        // a group preserving equal cells is reported imprimitive
        let o = Origami::from_cycles(6, &[&[0, 1, 2], &[3, 4, 5]], &[&[0, 3], &[1, 4], &[2, 5]])
            .unwrap();
        assert!(!o.is_primitive_group().unwrap());
        // disconnected input is an error
        let o = Origami::new(vec![0, 1], vec![0, 1]).unwrap();
        assert!(o.is_primitive_group().is_err());
    }

    #[test]
    fn torus_decomposition_and_lattice() {
        let n = 6;
        let torus = Origami::from_cycles(n, &[&[0, 1, 2, 3, 4, 5]], &[]).unwrap();
        let d = torus.cylinder_decomposition().unwrap();
        assert_eq!(d.cylinders.len(), 1);
        assert_eq!(d.cylinders[0].width, 6);
        assert_eq!(d.cylinders[0].height, 1);
        assert_eq!(d.cylinders[0].top_sc_count, 0);
        assert_eq!(d.cylinders[0].bottom_sc_count, 0);
        let lat = torus.absolute_period_lattice().unwrap();
        assert_eq!(lat, Lattice2::Rank2 { a: 6, b: 0, c: 1 });
        assert_eq!(lat.index(), Some(6));
    }

    #[test]
    fn vertical_torus_single_cylinder() {
        // sigma identity, tau an n-cycle: width-1 cylinder of height n
        let o = Origami::from_cycles(4, &[], &[&[0, 1, 2, 3]]).unwrap();
        let d = o.cylinder_decomposition().unwrap();
        assert_eq!(d.cylinders.len(), 1);
        assert_eq!(d.cylinders[0].width, 1);
        assert_eq!(d.cylinders[0].height, 4);
    }

    #[test]
    fn builder_small_examples() {
        // diagram A at n = 10 with distinct lengths
        let a = ParamsA { p: 1, j: 1, k: 2, l: 3, m: 4, alpha: 2 };
        let o = build_from_params(&Params::A(a)).unwrap();
        assert_eq!(o.stratum(), Stratum::H11);
        assert_eq!(cycle_type(&o.commutator()).0, vec![2, 2]);
        assert_eq!(o.classify_diagram().unwrap(), Diagram::A);

        // diagram C uniqueness example: beta = 1 is primitive, beta = 0 not
        let c0 = ParamsC { p: 1, q: 1, k: 1, l: 1, m: 1, alpha: 0, beta: 0 };
        let c1 = ParamsC { beta: 1, ..c0 };
        let o0 = build_from_params(&Params::C(c0)).unwrap();
        let o1 = build_from_params(&Params::C(c1)).unwrap();
        assert_eq!(o0.classify_diagram().unwrap(), Diagram::C);
        assert!(!o0.is_primitive_group().unwrap());
        assert!(o1.is_primitive_group().unwrap());

        // diagram D at n = 4: three cylinders, never primitive
        let d = ParamsD { p: 1, q: 1, r: 1, k: 1, l: 1, alpha: 0, beta: 0, gamma: 0 };
        let od = build_from_params(&Params::D(d)).unwrap();
        assert_eq!(od.classify_diagram().unwrap(), Diagram::D);
        assert_eq!(od.cylinder_decomposition().unwrap().cylinders.len(), 3);
        assert!(!od.is_primitive_group().unwrap());

        // diagram B at n = 4
        let b = ParamsB { p: 1, q: 1, k: 1, l: 1, m: 1, alpha: 0, beta: 0 };
        let ob = build_from_params(&Params::B(b)).unwrap();
        assert_eq!(ob.classify_diagram().unwrap(), Diagram::B);
        let d = ob.cylinder_decomposition().unwrap();
        assert_eq!(d.boundary_sc_counts(), vec![1, 1, 3, 3]);
    }

    #[test]
    fn builder_rejects_invalid() {
        let a = ParamsA { p: 1, j: 1, k: 1, l: 1, m: 1, alpha: 4 };
        assert!(build_from_params(&Params::A(a)).is_err());
        let b = ParamsB { p: 0, q: 1, k: 1, l: 1, m: 1, alpha: 0, beta: 0 };
        assert!(build_from_params(&Params::B(b)).is_err());
    }

    #[test]
    fn relabelling_invariance() {
        let mut seed = 0xfeedbeefu64;
        let b = ParamsB { p: 2, q: 1, k: 2, l: 1, m: 3, alpha: 3, beta: 1 };
        let o = build_from_params(&Params::B(b)).unwrap();
        let form = o.canonical_form().unwrap();
        let lat = o.absolute_period_lattice().unwrap();
        for _ in 0..20 {
            let gamma = lcg_perm(o.n(), &mut seed);
            let r = o.relabel(&gamma);
            assert_eq!(r.canonical_form().unwrap(), form);
            assert_eq!(r.stratum(), o.stratum());
            assert_eq!(r.absolute_period_lattice().unwrap(), lat);
            assert_eq!(
                r.is_primitive_group().unwrap(),
                o.is_primitive_group().unwrap()
            );
        }
    }

    #[test]
    fn period_lattice_examples() {
        // primitive H(1,1) build has the full lattice
        let c1 = ParamsC { p: 1, q: 1, k: 1, l: 1, m: 1, alpha: 0, beta: 1 };
        let o = build_from_params(&Params::C(c1)).unwrap();
        assert!(o.absolute_period_lattice().unwrap().is_full_z2());
        // imprimitive one has index > 1
        let c0 = ParamsC { beta: 0, ..c1 };
        let o = build_from_params(&Params::C(c0)).unwrap();
        let idx = o.absolute_period_lattice().unwrap().index().unwrap();
        assert!(idx > 1);
    }

    #[test]
    fn brute_force_n4() {
        let c = brute_force_census(4).unwrap();
        assert_eq!(c.h11, [0, 3, 1, 0]);
        assert_eq!((c.f, c.g), (4, 5));
        assert!(brute_force_census(3).is_err());
        assert!(brute_force_census(9).is_err());
    }

    #[test]
    fn brute_force_n5() {
        let c = brute_force_census(5).unwrap();
        assert_eq!(c.h11, [5, 11, 6, 2]);
        assert_eq!((c.f, c.g), (10, 17));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn perm(n: usize) -> impl Strategy<Value = Vec<u32>> {
            Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle()
        }

        fn pair_with_relabel() -> impl Strategy<Value = (Vec<u32>, Vec<u32>, Vec<u32>)> {
            (4usize..9).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
        }

        proptest! {
            #[test]
            fn relabelling_preserves_everything(
                (sigma, tau, gamma) in pair_with_relabel()
            ) {
                let o = Origami::new(sigma, tau).unwrap();
                prop_assume!(o.is_connected());
                let r = o.relabel(&gamma);
                prop_assert_eq!(o.canonical_form().unwrap(), r.canonical_form().unwrap());
                prop_assert_eq!(o.stratum(), r.stratum());
                prop_assert_eq!(
                    o.is_primitive_group().unwrap(),
                    r.is_primitive_group().unwrap()
                );
                prop_assert_eq!(
                    o.absolute_period_lattice().unwrap(),
                    r.absolute_period_lattice().unwrap()
                );
                let geom = |o: &Origami| {
                    let mut v: Vec<(usize, usize)> = o
                        .cylinder_decomposition()
                        .unwrap()
                        .cylinders
                        .iter()
                        .map(|c| (c.width, c.height))
                        .collect();
                    v.sort_unstable();
                    v
                };
                let g1 = geom(&o);
                let area: usize = g1.iter().map(|(w, h)| w * h).sum();
                prop_assert_eq!(area, o.n());
                prop_assert_eq!(g1, geom(&r));
            }
        }
    }
}
