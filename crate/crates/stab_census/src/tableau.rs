use crate::CensusError;
use num_complex::Complex64 as C64;
use state_space::DenseState;

/// Largest qubit count the enumerator accepts.
pub const MAX_ENUM_QUBITS: usize = 5;

/// A Pauli string packed as bits: `x` bit `j` and `z` bit `j` act on qubit `j + 1`.
/// A qubit with both bits set carries `Y = iXZ`, so every string is Hermitian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliRow {
    pub x: u32,
    pub z: u32,
}

impl PauliRow {
    pub fn commutes(&self, o: &PauliRow) -> bool {
        ((self.x & o.z) ^ (self.z & o.x)).count_ones() % 2 == 0
    }

    fn packed(&self, n: usize) -> u64 {
        self.x as u64 | (self.z as u64) << n
    }

    fn from_packed(v: u64, n: usize) -> Self {
        let m = (1u64 << n) - 1;
        PauliRow { x: (v & m) as u32, z: (v >> n & m) as u32 }
    }

    pub fn label(&self, n: usize) -> String {
        (0..n)
            .map(|j| match (self.x >> j & 1, self.z >> j & 1) {
                (0, 0) => 'I',
                (1, 0) => 'X',
                (0, 1) => 'Z',
                _ => 'Y',
            })
            .collect()
    }
}

/// Generators of a stabilizer group. Rows are in reduced echelon form over the
/// column order `x_1..x_n, z_1..z_n`; bit `i` of `signs` marks row `i` as `-P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StabTableau {
    pub n: usize,
    pub rows: Vec<PauliRow>,
    pub signs: u32,
}

impl StabTableau {
    /// Builds a tableau from arbitrary generators, reducing them to canonical
    /// form. Signs follow the rows through the reduction.
    pub fn new(n: usize, rows: &[(PauliRow, bool)]) -> Result<Self, CensusError> {
        if rows.len() != n || n == 0 || n > 16 {
            return Err(CensusError::Shape { n, rows: rows.len() });
        }
        for (i, a) in rows.iter().enumerate() {
            if a.0.x >> n != 0 || a.0.z >> n != 0 {
                return Err(CensusError::Shape { n, rows: rows.len() });
            }
            for b in &rows[..i] {
                if !a.0.commutes(&b.0) {
                    return Err(CensusError::NotCommuting);
                }
            }
        }
        // (packed bits, phase exponent of i) per row; products track the phase
        let mut work: Vec<(u64, u8)> = rows.iter().map(|(r, neg)| (r.packed(n), if *neg { 2 } else { 0 })).collect();
        let mut rank = 0;
        for col in 0..2 * n {
            let Some(p) = (rank..n).find(|&r| work[r].0 >> col & 1 == 1) else { continue };
            work.swap(rank, p);
            for r in 0..n {
                if r != rank && work[r].0 >> col & 1 == 1 {
                    work[r] = multiply(work[r], work[rank], n);
                }
            }
            rank += 1;
        }
        if rank < n {
            return Err(CensusError::Dependent);
        }
        let mut signs = 0;
        for (i, &(_, ph)) in work.iter().enumerate() {
            match ph {
                0 => {}
                2 => signs |= 1 << i,
                _ => return Err(CensusError::NotHermitian),
            }
        }
        Ok(StabTableau { n, rows: work.iter().map(|&(v, _)| PauliRow::from_packed(v, n)).collect(), signs })
    }

    pub fn sign(&self, i: usize) -> bool {
        self.signs >> i & 1 == 1
    }

    /// Entropy in bits of the qubits in `mask`: rank of the generators
    /// restricted to those qubits, minus the subsystem size.
    pub fn entropy(&self, mask: u32) -> u32 {
        let restricted: Vec<u64> = self.rows.iter().map(|r| PauliRow { x: r.x & mask, z: r.z & mask }.packed(self.n)).collect();
        f2_rank(restricted) as u32 - mask.count_ones()
    }

    /// Dense amplitudes: the stabilizer projector applied to a basis state.
    pub fn to_dense(&self) -> DenseState {
        let dim = 1usize << self.n;
        for b in 0..dim {
            let mut v = vec![C64::new(0.0, 0.0); dim];
            v[b] = C64::new(1.0, 0.0);
            for (i, r) in self.rows.iter().enumerate() {
                let pv = apply_pauli(r, self.sign(i), &v);
                for (a, p) in v.iter_mut().zip(pv) {
                    *a = (*a + p) * 0.5;
                }
            }
            if v.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-6 {
                return DenseState::from_amplitudes(self.n, v).expect("nonzero projection");
            }
        }
        unreachable!("a stabilizer projector has rank one")
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.n).map(|i| format!("{}{}", if self.sign(i) { '-' } else { '+' }, self.rows[i].label(self.n))).collect()
    }
}

/// Product of Pauli strings carried as (packed bits, power of i).
fn multiply(a: (u64, u8), b: (u64, u8), n: usize) -> (u64, u8) {
    let (pa, pb) = (PauliRow::from_packed(a.0, n), PauliRow::from_packed(b.0, n));
    // write each string as i^{x.z} X^x Z^z; moving Z^{z_a} past X^{x_b} costs (-1)^{z_a.x_b}
    let y = |p: &PauliRow| (p.x & p.z).count_ones();
    let prod = PauliRow { x: pa.x ^ pb.x, z: pa.z ^ pb.z };
    let e = a.1 as u32 + b.1 as u32 + y(&pa) + y(&pb) + 2 * (pa.z & pb.x).count_ones() + 4 * 4 - y(&prod) % 4;
    (prod.packed(n), (e % 4) as u8)
}

fn apply_pauli(r: &PauliRow, negative: bool, v: &[C64]) -> Vec<C64> {
    let ys = (r.x & r.z).count_ones();
    let mut phase = [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)][ys as usize % 4];
    if negative {
        phase = -phase;
    }
    let mut out = vec![C64::new(0.0, 0.0); v.len()];
    for (b, &a) in v.iter().enumerate() {
        if a == C64::new(0.0, 0.0) {
            continue;
        }
        let s = if (r.z as usize & b).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[b ^ r.x as usize] += phase * a * s;
    }
    out
}

pub fn f2_rank(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    while let Some(pivot) = rows.iter().copied().filter(|&r| r != 0).max() {
        let top = 63 - pivot.leading_zeros();
        rows.retain(|&r| r != 0);
        for r in rows.iter_mut() {
            if *r >> top & 1 == 1 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// `prod_{k=1..n} (2^k + 1)`, the number of stabilizer groups up to signs.
pub fn lagrangian_count(n: usize) -> u64 {
    (1..=n as u32).map(|k| (1u64 << k) + 1).product()
}

/// `2^n prod_{k=0..n-1} (2^{n-k} + 1)`.
pub fn stabilizer_state_count(n: usize) -> u64 {
    lagrangian_count(n) << n
}

/// All stabilizer groups modulo signs, as reduced echelon generator lists.
/// Pivot sets are visited in lexicographic order and free entries in
/// increasing order, so the output order is fixed.
pub fn enumerate_groups(n: usize) -> Result<Vec<Vec<PauliRow>>, CensusError> {
    if n == 0 || n > MAX_ENUM_QUBITS {
        return Err(CensusError::TooLarge(n));
    }
    let mut out = Vec::new();
    let mut pivots = Vec::with_capacity(n);
    choose_pivots(n, 0, &mut pivots, &mut out);
    debug_assert_eq!(out.len() as u64, lagrangian_count(n));
    Ok(out)
}

fn choose_pivots(n: usize, start: usize, pivots: &mut Vec<usize>, out: &mut Vec<Vec<PauliRow>>) {
    if pivots.len() == n {
        let mut rows = Vec::with_capacity(n);
        fill_rows(n, pivots, &mut rows, out);
        return;
    }
    for c in start..2 * n {
        if 2 * n - c < n - pivots.len() {
            break;
        }
        pivots.push(c);
        choose_pivots(n, c + 1, pivots, out);
        pivots.pop();
    }
}

fn fill_rows(n: usize, pivots: &[usize], rows: &mut Vec<u64>, out: &mut Vec<Vec<PauliRow>>) {
    let i = rows.len();
    if i == n {
        out.push(rows.iter().map(|&v| PauliRow::from_packed(v, n)).collect());
        return;
    }
    let p = pivots[i];
    let free: Vec<usize> = (p + 1..2 * n).filter(|c| !pivots.contains(c)).collect();
    for bits in 0u64..1 << free.len() {
        let mut v = 1u64 << p;
        for (k, &c) in free.iter().enumerate() {
            if bits >> k & 1 == 1 {
                v |= 1 << c;
            }
        }
        let row = PauliRow::from_packed(v, n);
        if rows.iter().all(|&r| PauliRow::from_packed(r, n).commutes(&row)) {
            rows.push(v);
            fill_rows(n, pivots, rows, out);
            rows.pop();
        }
    }
}

/// Every stabilizer state on `n <= 5` qubits, group by group, signs in
/// increasing binary order.
pub fn enumerate_stabilizer_states(n: usize) -> Result<impl Iterator<Item = StabTableau>, CensusError> {
    let groups = enumerate_groups(n)?;
    Ok(groups.into_iter().flat_map(move |rows| (0..1u32 << n).map(move |signs| StabTableau { n, rows: rows.clone(), signs })))
}
