//! Vertical-horizontal (VH) erasure decoder.
//!
//! In the Tanner graph of `H_Z`, every edge at a `B×B` qubit is vertical
//! (it keeps the first coordinate fixed) and every edge at an `A×A` qubit is
//! horizontal. The erasure therefore splits into vertical clusters, which are
//! connected groups of erased `B×B` qubits on one line `{b}×B` together with
//! their checks, and horizontal clusters on lines `A×{a'}`. A Z check can be
//! shared by at most one vertical and one horizontal cluster. Such a shared
//! check is called connecting. Connecting checks are the edges of the
//! bipartite VH graph.
//!
//! The decoder repeatedly removes clusters with at most one connecting
//! check. Isolated clusters, and dangling clusters whose connecting check is
//! frozen, are solved by elimination right away. A dangling cluster whose
//! connecting check is free is set aside together with that check, and
//! solved last, once the rest of the syndrome is settled. Clusters left over
//! all have two or more connecting checks, and the decoder aborts on them.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{check_len, Error, Result};
use crate::gf2::{solve_dense, BinaryMatrix, BinaryVector, RowSpace};
use crate::hgp::HgpCode;
use crate::peeling::{pruned_peel_run, DecodeOutcome, DecodeStats, DecodeStatus, PruneConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Vertical,
    Horizontal,
}

impl Orientation {
    fn slot(self) -> usize {
        match self {
            Orientation::Vertical => 0,
            Orientation::Horizontal => 1,
        }
    }
}

/// A connected component of the erasure using edges of one orientation only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cluster {
    pub orientation: Orientation,
    /// First coordinate of the qubits for vertical clusters, second for
    /// horizontal ones.
    pub line_index: usize,
    pub qubits: Vec<usize>,
    pub internal_checks: Vec<usize>,
    pub connecting_checks: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VhEdge {
    pub vertical: usize,
    pub horizontal: usize,
    pub check: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VhGraph {
    pub clusters: Vec<Cluster>,
    pub edges: Vec<VhEdge>,
}

impl VhGraph {
    /// One `V<id> H<id> check=<idx>` line per edge.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "V{} H{} check={}", e.vertical, e.horizontal, e.check);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterStatus {
    Isolated,
    FrozenDangling { check: usize },
    FreeDangling { check: usize },
    /// Two or more connecting checks.
    Blocked,
}

const NONE: u32 = u32::MAX;

struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }

    /// Groups of indices, each sorted, ordered by smallest member.
    fn groups(mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut slot = vec![NONE; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let root = self.find(i as u32) as usize;
            if slot[root] == NONE {
                slot[root] = out.len() as u32;
                out.push(Vec::new());
            }
            out[slot[root] as usize].push(i);
        }
        out
    }
}

fn orientation_of(code: &HgpCode, qubit: usize) -> Orientation {
    if code.is_bitbit(qubit) {
        Orientation::Vertical
    } else {
        Orientation::Horizontal
    }
}

fn line_of(code: &HgpCode, qubit: usize) -> usize {
    let c = code.qubit_coord(qubit);
    match orientation_of(code, qubit) {
        Orientation::Vertical => c.first,
        Orientation::Horizontal => c.second,
    }
}

/// Splits sorted `qubits` into components joined by checks that satisfy
/// `live` and touch two qubits of the same orientation.
fn components(code: &HgpCode, qubits: &[usize], live: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let tz = code.tanner_z();
    let mut dsu = Dsu::new(qubits.len());
    let mut first: std::collections::HashMap<(usize, Orientation), u32> = Default::default();
    for (i, &q) in qubits.iter().enumerate() {
        let o = orientation_of(code, q);
        for &c in tz.bit_neighbors(q) {
            if !live(c) {
                continue;
            }
            match first.entry((c, o)) {
                std::collections::hash_map::Entry::Occupied(e) => dsu.union(*e.get(), i as u32),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(i as u32);
                }
            }
        }
    }
    dsu.groups()
        .into_iter()
        .map(|g| g.into_iter().map(|i| qubits[i]).collect())
        .collect()
}

fn incident_checks(code: &HgpCode, qubits: &[usize], live: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut checks: Vec<usize> = qubits
        .iter()
        .flat_map(|&q| code.tanner_z().bit_neighbors(q).iter().copied())
        .filter(|&c| live(c))
        .collect();
    checks.sort_unstable();
    checks.dedup();
    checks
}

/// Cluster decomposition of the erasure and its VH graph.
pub fn decompose(code: &HgpCode, erasure: &BinaryVector) -> Result<VhGraph> {
    check_len(code.num_qubits(), erasure.len(), "qubits vs erasure length")?;
    let erased = erasure.support();
    let mut clusters: Vec<Cluster> = components(code, &erased, |_| true)
        .into_iter()
        .map(|qubits| Cluster {
            orientation: orientation_of(code, qubits[0]),
            line_index: line_of(code, qubits[0]),
            qubits,
            internal_checks: Vec::new(),
            connecting_checks: Vec::new(),
        })
        .collect();
    clusters.sort_by_key(|c| (c.orientation, c.line_index, c.qubits[0]));

    let mut owner = vec![[NONE; 2]; code.num_z_checks()];
    let mut checks_of = Vec::with_capacity(clusters.len());
    for (id, cl) in clusters.iter().enumerate() {
        let checks = incident_checks(code, &cl.qubits, |_| true);
        for &c in &checks {
            owner[c][cl.orientation.slot()] = id as u32;
        }
        checks_of.push(checks);
    }
    for (cl, checks) in clusters.iter_mut().zip(checks_of) {
        let (connecting, internal): (Vec<usize>, Vec<usize>) = checks
            .into_iter()
            .partition(|&c| owner[c][0] != NONE && owner[c][1] != NONE);
        cl.internal_checks = internal;
        cl.connecting_checks = connecting;
    }
    let edges = owner
        .iter()
        .enumerate()
        .filter(|(_, o)| o[0] != NONE && o[1] != NONE)
        .map(|(check, o)| VhEdge {
            vertical: o[0] as usize,
            horizontal: o[1] as usize,
            check,
        })
        .collect();
    Ok(VhGraph { clusters, edges })
}

/// Row of `check` restricted to the (sorted) cluster qubits.
fn local_row(code: &HgpCode, qubits: &[usize], check: usize) -> BinaryVector {
    BinaryVector::from_indices(
        qubits.len(),
        code.tanner_z()
            .check_neighbors(check)
            .iter()
            .filter_map(|q| qubits.binary_search(q).ok()),
    )
}

fn local_matrix(code: &HgpCode, qubits: &[usize], checks: &[usize]) -> BinaryMatrix {
    let rows: Vec<BinaryVector> = checks.iter().map(|&c| local_row(code, qubits, c)).collect();
    BinaryMatrix::from_row_vectors(qubits.len(), &rows)
}

/// A connecting check is free when its restricted row is independent of the
/// internal rows: then some in-cluster error has trivial internal syndrome
/// and flips only that check.
fn is_free(code: &HgpCode, qubits: &[usize], internal: &[usize], check: usize) -> bool {
    let internal_rows = local_matrix(code, qubits, internal);
    !RowSpace::new(&internal_rows).contains(&local_row(code, qubits, check))
}

pub fn classify(code: &HgpCode, cluster: &Cluster) -> ClusterStatus {
    match cluster.connecting_checks.as_slice() {
        [] => ClusterStatus::Isolated,
        [check] => {
            if is_free(code, &cluster.qubits, &cluster.internal_checks, *check) {
                ClusterStatus::FreeDangling { check: *check }
            } else {
                ClusterStatus::FrozenDangling { check: *check }
            }
        }
        _ => ClusterStatus::Blocked,
    }
}

fn solve_local(code: &HgpCode, qubits: &[usize], checks: &[usize], s: &BinaryVector) -> Option<Vec<usize>> {
    let m = local_matrix(code, qubits, checks);
    let rhs = BinaryVector::from_indices(
        checks.len(),
        checks.iter().enumerate().filter(|(_, &c)| s.get(c)).map(|(i, _)| i),
    );
    let x = solve_dense(m, rhs)?;
    Some(x.iter_ones().map(|i| qubits[i]).collect())
}

/// Error supported on the cluster matching `s` on its internal checks, and
/// on its connecting checks too when `include_connecting` is set.
pub fn solve_cluster(
    code: &HgpCode,
    cluster: &Cluster,
    s: &BinaryVector,
    include_connecting: bool,
) -> Result<BinaryVector> {
    check_len(code.num_z_checks(), s.len(), "Z checks vs syndrome length")?;
    let mut checks = cluster.internal_checks.clone();
    if include_connecting {
        checks.extend_from_slice(&cluster.connecting_checks);
    }
    let flips = solve_local(code, &cluster.qubits, &checks, s).ok_or(Error::NoSolution)?;
    Ok(BinaryVector::from_indices(code.num_qubits(), flips))
}

struct LiveCluster {
    orientation: Orientation,
    line_index: usize,
    qubits: Vec<usize>,
    checks: Vec<usize>,
    alive: bool,
}

struct Deferred {
    qubits: Vec<usize>,
    checks: Vec<usize>,
}

type ReadyKey = (u8, Orientation, usize, usize);

struct VhRun<'a> {
    code: &'a HgpCode,
    clusters: Vec<LiveCluster>,
    owner: Vec<[u32; 2]>,
    removed: Vec<bool>,
    syndrome: BinaryVector,
    correction: BinaryVector,
    ready: BTreeSet<ReadyKey>,
    stack: Vec<Deferred>,
    stats: DecodeStats,
}

impl<'a> VhRun<'a> {
    fn new(code: &'a HgpCode, graph: VhGraph, syndrome: BinaryVector) -> Self {
        let mut owner = vec![[NONE; 2]; code.num_z_checks()];
        let clusters = graph
            .clusters
            .into_iter()
            .enumerate()
            .map(|(id, cl)| {
                let mut checks = cl.internal_checks;
                checks.extend(cl.connecting_checks);
                checks.sort_unstable();
                for &c in &checks {
                    owner[c][cl.orientation.slot()] = id as u32;
                }
                LiveCluster {
                    orientation: cl.orientation,
                    line_index: cl.line_index,
                    qubits: cl.qubits,
                    checks,
                    alive: true,
                }
            })
            .collect();
        Self {
            code,
            clusters,
            owner,
            removed: vec![false; code.num_z_checks()],
            syndrome,
            correction: BinaryVector::zeros(code.num_qubits()),
            ready: BTreeSet::new(),
            stack: Vec::new(),
            stats: DecodeStats::default(),
        }
    }

    fn neighbor(&self, id: usize, check: usize) -> Option<usize> {
        let other = 1 - self.clusters[id].orientation.slot();
        let o = self.owner[check][other];
        (o != NONE && self.clusters[o as usize].alive).then_some(o as usize)
    }

    /// Live checks of a cluster, split into (internal, connecting).
    fn split_checks(&self, id: usize) -> (Vec<usize>, Vec<usize>) {
        self.clusters[id]
            .checks
            .iter()
            .copied()
            .filter(|&c| !self.removed[c])
            .partition(|&c| self.neighbor(id, c).is_none())
    }

    fn schedule(&mut self, id: usize) {
        let cl = &self.clusters[id];
        if !cl.alive {
            return;
        }
        let connecting = cl
            .checks
            .iter()
            .filter(|&&c| !self.removed[c] && self.neighbor(id, c).is_some())
            .count();
        if connecting <= 1 {
            self.ready
                .insert((connecting as u8, cl.orientation, cl.line_index, id));
        }
    }

    fn apply(&mut self, flips: &[usize]) {
        let tz = self.code.tanner_z();
        for &q in flips {
            self.correction.flip(q);
            for &c in tz.bit_neighbors(q) {
                self.syndrome.flip(c);
            }
        }
    }

    /// Marks the cluster corrected and re-examines its neighbors.
    fn retire(&mut self, id: usize) {
        self.clusters[id].alive = false;
        let neighbors: Vec<usize> = self.clusters[id]
            .checks
            .iter()
            .filter(|&&c| !self.removed[c])
            .filter_map(|&c| self.neighbor(id, c))
            .collect();
        for o in neighbors {
            self.schedule(o);
        }
    }

    fn solve_now(&mut self, id: usize, rows: &[usize]) -> Result<()> {
        let flips = solve_local(self.code, &self.clusters[id].qubits, rows, &self.syndrome)
            .ok_or(Error::InconsistentSyndrome)?;
        self.apply(&flips);
        self.stats.clusters_solved += 1;
        self.retire(id);
        Ok(())
    }

    fn defer(&mut self, id: usize, internal: Vec<usize>, free_check: usize) {
        let other = self
            .neighbor(id, free_check)
            .expect("free check must connect to a live cluster");
        let mut checks = internal;
        checks.push(free_check);
        self.stack.push(Deferred {
            qubits: self.clusters[id].qubits.clone(),
            checks,
        });
        self.stats.clusters_deferred += 1;
        self.removed[free_check] = true;
        self.clusters[other].checks.retain(|&c| c != free_check);
        self.retire(id);
        self.resplit(other);
    }

    /// Without the removed check a cluster may fall apart into several
    /// components; each becomes a cluster of its own.
    fn resplit(&mut self, id: usize) {
        let removed = &self.removed;
        let parts = components(self.code, &self.clusters[id].qubits, |c| !removed[c]);
        if parts.len() == 1 {
            self.schedule(id);
            return;
        }
        let slot = self.clusters[id].orientation.slot();
        let mut ids = Vec::with_capacity(parts.len());
        for (k, qubits) in parts.into_iter().enumerate() {
            let removed = &self.removed;
            let checks = incident_checks(self.code, &qubits, |c| !removed[c]);
            let target = if k == 0 {
                id
            } else {
                self.clusters.push(LiveCluster {
                    orientation: self.clusters[id].orientation,
                    line_index: self.clusters[id].line_index,
                    qubits: Vec::new(),
                    checks: Vec::new(),
                    alive: true,
                });
                self.clusters.len() - 1
            };
            for &c in &checks {
                self.owner[c][slot] = target as u32;
            }
            self.clusters[target].qubits = qubits;
            self.clusters[target].checks = checks;
            ids.push(target);
        }
        for i in ids {
            self.schedule(i);
        }
    }

    fn run(mut self, erasure: &BinaryVector) -> Result<DecodeOutcome> {
        for id in 0..self.clusters.len() {
            self.schedule(id);
        }
        while let Some((_, _, _, id)) = self.ready.pop_first() {
            if !self.clusters[id].alive {
                continue;
            }
            let (internal, connecting) = self.split_checks(id);
            match connecting.as_slice() {
                [] => self.solve_now(id, &internal)?,
                &[check] => {
                    if is_free(self.code, &self.clusters[id].qubits, &internal, check) {
                        self.defer(id, internal, check);
                    } else {
                        self.solve_now(id, &internal)?;
                    }
                }
                _ => {}
            }
        }

        let residual: Vec<usize> = self
            .clusters
            .iter()
            .filter(|c| c.alive)
            .flat_map(|c| c.qubits.iter().copied())
            .collect();
        if !residual.is_empty() {
            return Ok(DecodeOutcome {
                status: DecodeStatus::Aborted,
                correction: self.correction,
                residual_erasure: BinaryVector::from_indices(erasure.len(), residual),
                stats: self.stats,
            });
        }

        while let Some(d) = self.stack.pop() {
            let flips = solve_local(self.code, &d.qubits, &d.checks, &self.syndrome)
                .ok_or(Error::InconsistentSyndrome)?;
            self.apply(&flips);
            self.stats.clusters_solved += 1;
        }
        if !self.syndrome.is_zero() {
            return Err(Error::InconsistentSyndrome);
        }
        Ok(DecodeOutcome {
            status: DecodeStatus::Corrected,
            correction: self.correction,
            residual_erasure: BinaryVector::zeros(erasure.len()),
            stats: self.stats,
        })
    }
}

/// VH decoder.
///
/// Returns `Aborted` when some clusters all have two or more connecting
/// checks, which happens when the VH graph has a cycle. An
/// `InconsistentSyndrome` error means no error inside the erasure explains `s`.
pub fn vh_decode(code: &HgpCode, erasure: &BinaryVector, s: &BinaryVector) -> Result<DecodeOutcome> {
    check_len(code.num_z_checks(), s.len(), "Z checks vs syndrome length")?;
    let graph = decompose(code, erasure)?;
    VhRun::new(code, graph, s.clone()).run(erasure)
}

/// Pruned peeling followed by the VH decoder on whatever peeling left.
pub fn combined_decode(
    code: &HgpCode,
    erasure: &BinaryVector,
    s: &BinaryVector,
    cfg: PruneConfig,
) -> Result<DecodeOutcome> {
    let peel = pruned_peel_run(code, erasure, s, cfg)?;
    if peel.outcome.is_corrected() {
        return Ok(peel.outcome);
    }
    let vh = vh_decode(code, &peel.outcome.residual_erasure, &peel.residual_syndrome)?;
    let mut stats = peel.outcome.stats;
    stats.merge(&vh.stats);
    Ok(DecodeOutcome {
        status: vh.status,
        correction: &peel.outcome.correction ^ &vh.correction,
        residual_erasure: vh.residual_erasure,
        stats,
    })
}
