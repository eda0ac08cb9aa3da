/// Closed-form orders for the n-qubit Clifford group and its local part.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderFormula {
    pub n: u32,
    /// `2^(n^2 + 2n) prod_{j=1..n} (4^j - 1)`, the order modulo global phase.
    pub mod_phase_order: u128,
    /// Eight times the above: the group including `<omega>`.
    pub with_phase_order: u128,
    /// `24^n`, the local subgroup modulo phase.
    pub local_order: u128,
    /// `mod_phase_order / local_order`.
    pub ratio: u128,
}

pub fn clifford_order_formula(n: u32) -> Option<OrderFormula> {
    if n == 0 {
        return None;
    }
    let mut order: u128 = 1u128.checked_shl(n * n + 2 * n)?;
    for j in 1..=n {
        order = order.checked_mul(4u128.checked_pow(j)? - 1)?;
    }
    let local = 24u128.checked_pow(n)?;
    Some(OrderFormula {
        n,
        mod_phase_order: order,
        with_phase_order: order.checked_mul(8)?,
        local_order: local,
        ratio: order / local,
    })
}
