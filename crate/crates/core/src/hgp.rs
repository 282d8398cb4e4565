//! Hypergraph product of a classical Tanner graph with itself.
//!
//! Write `A` for the checks and `B` for the bits of the input graph, with
//! `r = |A|` and `n = |B|`. Qubits live on `B×B` and `A×A`, X generators on
//! `A×B` and Z generators on `B×A`. The first coordinate is the horizontal
//! code, the second the vertical one.
//!
//! Linear layout: qubit `(b, b')` is `b·n + b'`; qubit `(a, a')` is
//! `n² + a·r + a'`; X check `(a, b')` is `a·n + b'`; Z check `(b, a')` is
//! `b·r + a'`.

use crate::classical::TannerGraph;
use crate::error::{check_len, Error, Result};
use crate::gf2::{self, BinaryMatrix, BinaryVector, RowSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordKind {
    /// Qubit on `A×A`.
    CheckCheck,
    /// Qubit on `B×B`.
    BitBit,
    /// X generator on `A×B`.
    XCheck,
    /// Z generator on `B×A`.
    ZCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord {
    pub kind: CoordKind,
    pub first: usize,
    pub second: usize,
}

impl Coord {
    pub fn new(kind: CoordKind, first: usize, second: usize) -> Self {
        Self {
            kind,
            first,
            second,
        }
    }
}

/// The CSS code `HGP(H)`.
#[derive(Clone, Debug)]
pub struct HgpCode {
    input: TannerGraph,
    h_x: BinaryMatrix,
    h_z: BinaryMatrix,
    tanner_x: TannerGraph,
    tanner_z: TannerGraph,
    x_row_space: RowSpace,
    rank_x: usize,
    rank_z: usize,
}

impl HgpCode {
    /// Builds `HGP(g)`.
    pub fn new(g: &TannerGraph) -> Result<Self> {
        if g.num_bits() == 0 || g.num_checks() == 0 {
            return Err(Error::InvalidParams(
                "hypergraph product needs a nonempty input graph".into(),
            ));
        }
        let n = g.num_bits();
        let r = g.num_checks();
        let num_qubits = n * n + r * r;
        let bb = |b: usize, b2: usize| b * n + b2;
        let aa = |a: usize, a2: usize| n * n + a * r + a2;

        let mut x_edges = Vec::new();
        for a in 0..r {
            for b2 in 0..n {
                let row = a * n + b2;
                for &b in g.check_neighbors(a) {
                    x_edges.push((row, bb(b, b2)));
                }
                for &a2 in g.bit_neighbors(b2) {
                    x_edges.push((row, aa(a, a2)));
                }
            }
        }
        let mut z_edges = Vec::new();
        for b in 0..n {
            for a2 in 0..r {
                let row = b * r + a2;
                for &a in g.bit_neighbors(b) {
                    z_edges.push((row, aa(a, a2)));
                }
                for &b2 in g.check_neighbors(a2) {
                    z_edges.push((row, bb(b, b2)));
                }
            }
        }
        let tanner_x = TannerGraph::from_edges(r * n, num_qubits, x_edges)?;
        let tanner_z = TannerGraph::from_edges(n * r, num_qubits, z_edges)?;
        let h_x = tanner_x.to_matrix();
        let h_z = tanner_z.to_matrix();
        let x_row_space = RowSpace::new(&h_x);
        let rank_x = x_row_space.rank();
        let rank_z = gf2::rank(&h_z);
        Ok(Self {
            input: g.clone(),
            h_x,
            h_z,
            tanner_x,
            tanner_z,
            x_row_space,
            rank_x,
            rank_z,
        })
    }

    pub fn input_graph(&self) -> &TannerGraph {
        &self.input
    }

    /// `n`, the number of bits of the input code.
    pub fn input_bits(&self) -> usize {
        self.input.num_bits()
    }

    /// `r`, the number of checks of the input code.
    pub fn input_checks(&self) -> usize {
        self.input.num_checks()
    }

    pub fn num_qubits(&self) -> usize {
        self.h_z.cols()
    }

    pub fn num_x_checks(&self) -> usize {
        self.h_x.rows()
    }

    pub fn num_z_checks(&self) -> usize {
        self.h_z.rows()
    }

    pub fn h_x(&self) -> &BinaryMatrix {
        &self.h_x
    }

    pub fn h_z(&self) -> &BinaryMatrix {
        &self.h_z
    }

    /// Tanner graph of `H_Z`; its checks are the Z generators.
    pub fn tanner_z(&self) -> &TannerGraph {
        &self.tanner_z
    }

    /// Tanner graph of `H_X`; its checks are the X generators.
    pub fn tanner_x(&self) -> &TannerGraph {
        &self.tanner_x
    }

    /// Reduced form of `H_X`, for stabilizer membership tests.
    pub fn x_row_space(&self) -> &RowSpace {
        &self.x_row_space
    }

    pub fn rank_x(&self) -> usize {
        self.rank_x
    }

    pub fn rank_z(&self) -> usize {
        self.rank_z
    }

    /// Number of logical qubits, `N - rank(H_X) - rank(H_Z)`.
    pub fn k_logical(&self) -> usize {
        self.num_qubits() - self.rank_x - self.rank_z
    }

    /// Number of qubits in the `B×B` block; indices below this are `BitBit`.
    #[inline]
    pub fn bitbit_count(&self) -> usize {
        self.input_bits() * self.input_bits()
    }

    #[inline]
    pub fn is_bitbit(&self, qubit: usize) -> bool {
        qubit < self.bitbit_count()
    }

    pub fn qubit_coord(&self, qubit: usize) -> Coord {
        let n = self.input_bits();
        let r = self.input_checks();
        assert!(qubit < self.num_qubits(), "qubit {qubit} out of range");
        if qubit < n * n {
            Coord::new(CoordKind::BitBit, qubit / n, qubit % n)
        } else {
            let q = qubit - n * n;
            Coord::new(CoordKind::CheckCheck, q / r, q % r)
        }
    }

    pub fn qubit_index(&self, coord: Coord) -> Option<usize> {
        let n = self.input_bits();
        let r = self.input_checks();
        match coord.kind {
            CoordKind::BitBit if coord.first < n && coord.second < n => {
                Some(coord.first * n + coord.second)
            }
            CoordKind::CheckCheck if coord.first < r && coord.second < r => {
                Some(n * n + coord.first * r + coord.second)
            }
            _ => None,
        }
    }

    pub fn z_check_coord(&self, check: usize) -> Coord {
        let r = self.input_checks();
        assert!(check < self.num_z_checks(), "Z check {check} out of range");
        Coord::new(CoordKind::ZCheck, check / r, check % r)
    }

    pub fn z_check_index(&self, coord: Coord) -> Option<usize> {
        let (n, r) = (self.input_bits(), self.input_checks());
        (coord.kind == CoordKind::ZCheck && coord.first < n && coord.second < r)
            .then(|| coord.first * r + coord.second)
    }

    pub fn x_check_coord(&self, check: usize) -> Coord {
        let n = self.input_bits();
        assert!(check < self.num_x_checks(), "X check {check} out of range");
        Coord::new(CoordKind::XCheck, check / n, check % n)
    }

    pub fn x_check_index(&self, coord: Coord) -> Option<usize> {
        let (n, r) = (self.input_bits(), self.input_checks());
        (coord.kind == CoordKind::XCheck && coord.first < r && coord.second < n)
            .then(|| coord.first * n + coord.second)
    }

    /// Qubits acted on by X generator `(a, b')`: `(b, b')` for `b ∈ N(a)` and
    /// `(a, a')` for `a' ∈ N(b')`.
    pub fn x_generator_support(&self, generator: Coord) -> Result<Vec<usize>> {
        let idx = self.x_check_index(generator).ok_or(Error::IndexOutOfRange {
            index: generator.first,
            len: self.input_checks(),
        })?;
        Ok(self.tanner_x.check_neighbors(idx).to_vec())
    }

    /// `{b} × bits` as `BitBit` qubit indices.
    pub fn lift_vertical(&self, b: usize, bits: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = bits
            .iter()
            .map(|&b2| {
                self.qubit_index(Coord::new(CoordKind::BitBit, b, b2))
                    .expect("vertical lift index out of range")
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `checks × {a'}` as `CheckCheck` qubit indices.
    pub fn lift_horizontal(&self, a2: usize, checks: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = checks
            .iter()
            .map(|&a| {
                self.qubit_index(Coord::new(CoordKind::CheckCheck, a, a2))
                    .expect("horizontal lift index out of range")
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `H_Z e`.
    pub fn syndrome(&self, error: &BinaryVector) -> Result<BinaryVector> {
        check_len(self.num_qubits(), error.len(), "qubits vs error length")?;
        self.tanner_z.syndrome(error)
    }

    /// True when `H_X · H_Zᵀ = 0`.
    pub fn is_css_valid(&self) -> bool {
        self.h_x
            .mul_transpose(&self.h_z)
            .map(|p| p.is_zero())
            .unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::is_stopping_set;

    fn rep3() -> TannerGraph {
        TannerGraph::from_edges(2, 3, [(0, 0), (0, 1), (1, 1), (1, 2)]).unwrap()
    }

    fn hamming() -> TannerGraph {
        TannerGraph::from_edges(
            3,
            7,
            [
                (0, 0), (0, 1), (0, 2), (0, 4),
                (1, 0), (1, 1), (1, 3), (1, 5),
                (2, 0), (2, 2), (2, 3), (2, 6),
            ],
        )
        .unwrap()
    }

    #[test]
    fn surface_13_parameters() {
        let code = HgpCode::new(&rep3()).unwrap();
        assert_eq!(code.num_qubits(), 13);
        assert_eq!(code.num_z_checks(), 6);
        assert_eq!(code.num_x_checks(), 6);
        assert_eq!(code.k_logical(), 1);
        assert!(code.is_css_valid());
    }

    #[test]
    fn seven_bit_three_check_parameters() {
        let code = HgpCode::new(&hamming()).unwrap();
        assert_eq!(code.num_qubits(), 58);
        assert_eq!(code.num_z_checks(), 21);
        assert_eq!(code.num_x_checks(), 21);
        assert!(code.is_css_valid());
    }

    #[test]
    fn x_generator_support_example() {
        let code = HgpCode::new(&rep3()).unwrap();
        let gen = Coord::new(CoordKind::XCheck, 0, 0);
        let supp = code.x_generator_support(gen).unwrap();
        let expect = [
            Coord::new(CoordKind::BitBit, 0, 0),
            Coord::new(CoordKind::BitBit, 1, 0),
            Coord::new(CoordKind::CheckCheck, 0, 0),
        ];
        let mut expect: Vec<usize> = expect.iter().map(|&c| code.qubit_index(c).unwrap()).collect();
        expect.sort_unstable();
        assert_eq!(supp, expect);
        for x in 0..code.num_x_checks() {
            let c = code.x_check_coord(x);
            let supp = code.x_generator_support(c).unwrap();
            let g = code.input_graph();
            assert_eq!(
                supp.len(),
                g.check_neighbors(c.first).len() + g.bit_neighbors(c.second).len()
            );
            assert_eq!(supp, code.h_x().row_support(x));
        }
    }

    #[test]
    fn z_adjacency_follows_product_rule() {
        let g = hamming();
        let code = HgpCode::new(&g).unwrap();
        for z in 0..code.num_z_checks() {
            let Coord { first: b, second: a2, .. } = code.z_check_coord(z);
            for q in 0..code.num_qubits() {
                let c = code.qubit_coord(q);
                let expect = match c.kind {
                    CoordKind::CheckCheck => c.second == a2 && g.has_edge(c.first, b),
                    CoordKind::BitBit => c.first == b && g.has_edge(a2, c.second),
                    _ => unreachable!(),
                };
                assert_eq!(code.h_z().get(z, q), expect);
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let code = HgpCode::new(&hamming()).unwrap();
        for q in 0..code.num_qubits() {
            assert_eq!(code.qubit_index(code.qubit_coord(q)), Some(q));
        }
        for z in 0..code.num_z_checks() {
            assert_eq!(code.z_check_index(code.z_check_coord(z)), Some(z));
        }
        for x in 0..code.num_x_checks() {
            assert_eq!(code.x_check_index(code.x_check_coord(x)), Some(x));
        }
    }

    #[test]
    fn lifts() {
        let code = HgpCode::new(&rep3()).unwrap();
        let lift = code.lift_vertical(0, &[0, 1, 2]);
        assert_eq!(lift.len(), 3);
        assert!(lift.iter().all(|&q| code.qubit_coord(q).first == 0
            && code.qubit_coord(q).kind == CoordKind::BitBit));
        assert!(is_stopping_set(code.tanner_z(), &lift));
        assert!(code.lift_vertical(1, &[]).is_empty());
        assert!(code.lift_horizontal(1, &[]).is_empty());
    }

    #[test]
    fn generator_supports_are_quantum_stopping_sets() {
        for g in [rep3(), hamming()] {
            let code = HgpCode::new(&g).unwrap();
            for x in 0..code.num_x_checks() {
                assert!(is_stopping_set(code.tanner_z(), &code.h_x().row_support(x)));
            }
        }
    }
}
