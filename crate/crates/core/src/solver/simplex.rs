//! Dense two-phase simplex with Bland's rule, generic over the number field.
//!
//! Exact runs use `BigRational`; `f64` runs treat magnitudes below
//! [`F64_PIVOT_EPS`] as zero.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub const F64_PIVOT_EPS: f64 = 1e-9;

pub trait Field: Clone + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn lt(&self, o: &Self) -> bool;
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.abs() <= F64_PIVOT_EPS
    }
    fn is_positive(&self) -> bool {
        *self > F64_PIVOT_EPS
    }
    fn is_negative(&self) -> bool {
        *self < -F64_PIVOT_EPS
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    /// Exact binary value of `x`, which must be finite.
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite coefficient")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn lt(&self, o: &Self) -> bool {
        self < o
    }
}

/// `p / q` as an exact rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

/// One constraint: sparse `(column, coefficient)` terms, sense, right-hand side.
pub type Row<F> = (Vec<(usize, F)>, Sense, F);

/// `minimize objective · x` subject to `rows`, `x ≥ 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram<F> {
    pub n_vars: usize,
    pub objective: Vec<F>,
    pub rows: Vec<Row<F>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpResult<F> {
    Optimal { x: Vec<F>, value: F },
    Infeasible,
    Unbounded,
}

struct Tableau<F> {
    /// `m` constraint rows of `cols + 1` entries, right-hand side last.
    t: Vec<Vec<F>>,
    /// Reduced-cost row; last entry is minus the objective value.
    z: Vec<F>,
    basis: Vec<usize>,
    cols: usize,
    pivots: u64,
}

impl<F: Field> Tableau<F> {
    fn pivot(&mut self, r: usize, c: usize) {
        self.pivots += 1;
        let p = self.t[r][c].clone();
        for v in self.t[r].iter_mut() {
            *v = v.div(&p);
        }
        let row = self.t[r].clone();
        let eliminate = |target: &mut Vec<F>| {
            let f = target[c].clone();
            if !f.is_zero() {
                for (v, rv) in target.iter_mut().zip(&row) {
                    *v = v.sub(&f.mul(rv));
                }
            }
            target[c] = F::zero();
        };
        for (i, target) in self.t.iter_mut().enumerate() {
            if i != r {
                eliminate(target);
            }
        }
        eliminate(&mut self.z);
        self.basis[r] = c;
    }

    /// Sets `z` to the reduced costs of `cost` for the current basis.
    fn price(&mut self, cost: &[F]) {
        let mut z: Vec<F> = cost.to_vec();
        z.push(F::zero());
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if !cb.is_zero() {
                for (v, tv) in z.iter_mut().zip(&self.t[r]) {
                    *v = v.sub(&cb.mul(tv));
                }
            }
        }
        self.z = z;
    }

    /// Runs Bland's rule over the columns in `allowed`. Returns false when
    /// the objective is unbounded below.
    fn optimize(&mut self, allowed: &[bool]) -> bool {
        let rhs = self.cols;
        loop {
            let Some(c) = (0..self.cols).find(|&j| allowed[j] && self.z[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, F)> = None;
            for r in 0..self.t.len() {
                let a = &self.t[r][c];
                if !a.is_positive() {
                    continue;
                }
                let q = self.t[r][rhs].div(a);
                let better = match &leave {
                    None => true,
                    Some((lr, lq)) => q.lt(lq) || (!lq.lt(&q) && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, q));
                }
            }
            match leave {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }
}

/// Solution plus the number of pivots performed.
pub fn solve<F: Field>(lp: &LinearProgram<F>) -> (LpResult<F>, u64) {
    let n = lp.n_vars;
    let m = lp.rows.len();
    let slack_count = lp.rows.iter().filter(|r| r.1 != Sense::Eq).count();
    let needs_artificial = |sense: Sense, b: &F| match sense {
        Sense::Le => b.is_negative(),
        Sense::Ge => !b.is_negative(),
        Sense::Eq => true,
    };
    let art_count = lp.rows.iter().filter(|r| needs_artificial(r.1, &r.2)).count();
    let cols = n + slack_count + art_count;
    let mut t = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (n, n + slack_count);
    for (coeffs, sense, b) in &lp.rows {
        let mut row = vec![F::zero(); cols + 1];
        for (j, a) in coeffs {
            row[*j] = row[*j].add(a);
        }
        row[cols] = b.clone();
        let mut sense = *sense;
        match sense {
            Sense::Le => row[next_slack] = F::one(),
            Sense::Ge => row[next_slack] = F::one().neg(),
            Sense::Eq => {}
        }
        if sense != Sense::Eq {
            next_slack += 1;
        }
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = v.neg();
            }
            sense = match sense {
                Sense::Le => Sense::Ge,
                Sense::Ge => Sense::Le,
                Sense::Eq => Sense::Eq,
            };
        }
        if sense == Sense::Le {
            basis.push(next_slack - 1);
        } else {
            row[next_art] = F::one();
            basis.push(next_art);
            next_art += 1;
        }
        t.push(row);
    }
    let mut tab = Tableau {
        t,
        z: Vec::new(),
        basis,
        cols,
        pivots: 0,
    };

    let is_art = |j: usize| j >= n + slack_count;
    if art_count > 0 {
        let phase1: Vec<F> = (0..cols)
            .map(|j| if is_art(j) { F::one() } else { F::zero() })
            .collect();
        tab.price(&phase1);
        tab.optimize(&vec![true; cols]);
        if tab.z[cols].neg().is_positive() {
            return (LpResult::Infeasible, tab.pivots);
        }
        // Drive artificial variables out of the basis; drop redundant rows.
        let mut r = 0;
        while r < tab.t.len() {
            if is_art(tab.basis[r]) {
                match (0..n + slack_count).find(|&j| !tab.t[r][j].is_zero()) {
                    Some(j) => tab.pivot(r, j),
                    None => {
                        tab.t.remove(r);
                        tab.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
    }
    let mut cost = lp.objective.clone();
    cost.resize(cols, F::zero());
    tab.price(&cost);
    let allowed: Vec<bool> = (0..cols).map(|j| !is_art(j)).collect();
    if !tab.optimize(&allowed) {
        return (LpResult::Unbounded, tab.pivots);
    }
    let mut x = vec![F::zero(); n];
    for (r, &b) in tab.basis.iter().enumerate() {
        if b < n {
            x[b] = tab.t[r][cols].clone();
        }
    }
    let value = tab.z[cols].neg();
    (LpResult::Optimal { x, value }, tab.pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    type RowSpec<'a> = (&'a [(usize, f64)], Sense, f64);

    fn lp<F: Field>(objective: &[f64], rows: &[RowSpec]) -> LinearProgram<F> {
        LinearProgram {
            n_vars: objective.len(),
            objective: objective.iter().map(|&c| F::from_f64(c)).collect(),
            rows: rows
                .iter()
                .map(|(cs, s, b)| {
                    (
                        cs.iter().map(|&(j, a)| (j, F::from_f64(a))).collect(),
                        *s,
                        F::from_f64(*b),
                    )
                })
                .collect(),
        }
    }

    #[test]
    fn textbook_maximisation() {
        // max 3x + 5y s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → (2, 6), value 36.
        let rows: &[RowSpec] = &[
            (&[(0, 1.0)], Sense::Le, 4.0),
            (&[(1, 2.0)], Sense::Le, 12.0),
            (&[(0, 3.0), (1, 2.0)], Sense::Le, 18.0),
        ];
        let (r, _) = solve(&lp::<BigRational>(&[-3.0, -5.0], rows));
        assert_eq!(
            r,
            LpResult::Optimal {
                x: vec![ratio(2, 1), ratio(6, 1)],
                value: ratio(-36, 1)
            }
        );
        let (r, _) = solve(&lp::<f64>(&[-3.0, -5.0], rows));
        match r {
            LpResult::Optimal { x, value } => {
                assert!((x[0] - 2.0).abs() < 1e-9 && (x[1] - 6.0).abs() < 1e-9 && (value + 36.0).abs() < 1e-9)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn phase_one_handles_ge_and_eq_rows() {
        // min x + y s.t. x + y ≥ 2, x − y = 1/2 → x = 5/4, y = 3/4.
        let rows: &[RowSpec] = &[
            (&[(0, 1.0), (1, 1.0)], Sense::Ge, 2.0),
            (&[(0, 1.0), (1, -1.0)], Sense::Eq, 0.5),
        ];
        let (r, _) = solve(&lp::<BigRational>(&[1.0, 1.0], rows));
        assert_eq!(
            r,
            LpResult::Optimal {
                x: vec![ratio(5, 4), ratio(3, 4)],
                value: ratio(2, 1)
            }
        );
    }

    #[test]
    fn negative_right_hand_sides_are_normalised() {
        // −x ≤ −3 means x ≥ 3.
        let rows: &[RowSpec] = &[(&[(0, -1.0)], Sense::Le, -3.0)];
        let (r, _) = solve(&lp::<BigRational>(&[1.0], rows));
        assert_eq!(
            r,
            LpResult::Optimal {
                x: vec![ratio(3, 1)],
                value: ratio(3, 1)
            }
        );
    }

    #[test]
    fn infeasible_and_unbounded() {
        let rows: &[RowSpec] = &[(&[(0, 1.0)], Sense::Le, 1.0), (&[(0, 1.0)], Sense::Ge, 2.0)];
        assert_eq!(solve(&lp::<BigRational>(&[1.0], rows)).0, LpResult::Infeasible);
        let rows: &[RowSpec] = &[(&[(0, 1.0), (1, -1.0)], Sense::Le, 1.0)];
        assert_eq!(solve(&lp::<BigRational>(&[0.0, -1.0], rows)).0, LpResult::Unbounded);
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's example cycles under the largest-coefficient rule.
        let rows: &[RowSpec] = &[
            (&[(0, 0.25), (1, -60.0), (2, -0.04), (3, 9.0)], Sense::Le, 0.0),
            (&[(0, 0.5), (1, -90.0), (2, -0.02), (3, 3.0)], Sense::Le, 0.0),
            (&[(2, 1.0)], Sense::Le, 1.0),
        ];
        let (r, _) = solve(&lp::<BigRational>(&[-0.75, 150.0, -0.02, 6.0], rows));
        match r {
            LpResult::Optimal { value, .. } => assert!((Field::to_f64(&value) + 0.05).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
    }
}
