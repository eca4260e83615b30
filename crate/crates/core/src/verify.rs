//! Pointwise verification of the bounds, identities and sign claims that make
//! up the proofs of 2-fold log-concavity and reverse ultra log-concavity of
//! the d-rows.
//!
//! Each `verify_*` function takes the d-table and a point `(n, k)`. It reads
//! `d(n+1, k)`, so the table must reach row `n + 1`; anything outside the
//! table is [`TableError::IndexOutOfRange`]. Inside the table, claims whose
//! hypotheses do not hold at `(n, k)` are skipped, and a point where nothing
//! applies yields a verdict with [`Outcome::NotApplicable`].
//!
//! Polynomial identities are compared as exact integers (or exact rationals
//! where the claim is about a rational point); the square root in the
//! larger-root comparison is avoided by comparing `t > 0` and `t^2 > disc`.
//!
//! [`Outcome::NotApplicable`]: crate::verdict::Outcome::NotApplicable

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::scalar::{lift, ExactInt};
use crate::table::{ratio, TableError, TriangleTable};
use crate::verdict::Verdict;

/// Coefficients of the cubic `f(x) = c3 x^3 + c2 x^2 + c1 x + c0` whose value at
/// `x = d(n+1,k)/d(n,k)` has the sign of the 2-fold log-concavity expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicCoeffs<T> {
    pub c3: T,
    pub c2: T,
    pub c1: T,
    pub c0: T,
}

impl<T: ExactInt> CubicCoeffs<T> {
    pub fn at(n: i64, k: i64) -> Self {
        let (n, k) = (lift::<T>(n), lift::<T>(k));
        let c = |v: i64| lift::<T>(v);
        let n2 = n.clone() * n.clone();
        let n3 = n2.clone() * n.clone();
        let k2 = k.clone() * k.clone();
        let k3 = k2.clone() * k.clone();
        let nk = n.clone() * k.clone();
        CubicCoeffs {
            c3: -n2.clone() - c(5) * n.clone() + c(6) * k.clone() + c(6),
            c2: n3.clone() + n2.clone() * k.clone() + c(5) * n2.clone() + c(3) * nk.clone()
                - c(10) * k2.clone()
                + n.clone()
                - c(16) * k.clone()
                - c(6),
            c1: n2.clone() - c(2) * n.clone()
                + c(14) * k.clone()
                + c(14) * k2.clone()
                + n3.clone()
                + c(10) * n.clone() * k2.clone()
                - c(10) * n2.clone() * k.clone()
                - n3.clone() * k.clone()
                - c(3) * nk.clone(),
            c0: -c(4) * n2.clone() - c(12) * k2.clone() - c(12) * k3
                + c(10) * nk
                + c(18) * n.clone() * k2.clone()
                - c(9) * n2.clone() * k.clone()
                + n2 * k2
                - n3 * k,
        }
    }

    pub fn eval(&self, x: &Ratio<T>) -> Ratio<T> {
        let r = |v: &T| Ratio::from_integer(v.clone());
        ((r(&self.c3) * x + r(&self.c2)) * x + r(&self.c1)) * x + r(&self.c0)
    }

    /// `f'(x) = 3 c3 x^2 + 2 c2 x + c1`.
    pub fn eval_derivative(&self, x: &Ratio<T>) -> Ratio<T> {
        let r = |v: T| Ratio::from_integer(v);
        (r(lift::<T>(3) * self.c3.clone()) * x + r(lift::<T>(2) * self.c2.clone())) * x
            + r(self.c1.clone())
    }

    /// `c3 D^3 + c2 D^2 d + c1 D d^2 + c0 d^3`, the cubic homogenised in
    /// `D = d(n+1,k)`, `d = d(n,k)`.
    pub fn homogeneous(&self, big: &T, small: &T) -> T {
        let (b, s) = (big.clone(), small.clone());
        self.c3.clone() * b.clone() * b.clone() * b.clone()
            + self.c2.clone() * b.clone() * b.clone() * s.clone()
            + self.c1.clone() * b.clone() * s.clone() * s.clone()
            + self.c0.clone() * s.clone() * s.clone() * s
    }
}

/// `a r^2 + b r + c` with `a = n-k+1`, `b = -(n-k+1)(n+1)`, `c = k(2n-2k+1)`;
/// nonnegative at `r = d(n+1,k)/d(n,k)` exactly when reverse ultra
/// log-concavity holds at `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReverseUltraQuadratic<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: ExactInt> ReverseUltraQuadratic<T> {
    pub fn at(n: i64, k: i64) -> Self {
        ReverseUltraQuadratic {
            a: lift(n - k + 1),
            b: -(lift::<T>(n - k + 1) * lift::<T>(n + 1)),
            c: lift::<T>(k) * lift::<T>(2 * n - 2 * k + 1),
        }
    }

    pub fn eval(&self, x: &Ratio<T>) -> Ratio<T> {
        let r = |v: &T| Ratio::from_integer(v.clone());
        (r(&self.a) * x + r(&self.b)) * x + r(&self.c)
    }

    /// `b^2 - 4ac`, written as `((n-k+1)(n+1))^2 - 4k(n-k+1)(2n-2k+1)`.
    pub fn discriminant(&self) -> T {
        self.b.clone() * self.b.clone() - lift::<T>(4) * self.a.clone() * self.c.clone()
    }
}

/// `g(k) = 8k^2 - (n^2+10n+5)k + (n+1)^3`; the discriminant equals `(n-k+1) g(k)`.
pub fn reduced_discriminant<T: ExactInt>(n: i64, k: i64) -> T {
    let (nt, kt) = (lift::<T>(n), lift::<T>(k));
    let n1 = nt.clone() + T::one();
    lift::<T>(8) * kt.clone() * kt.clone()
        - (nt.clone() * nt.clone() + lift::<T>(10) * nt + lift::<T>(5)) * kt
        + n1.clone() * n1.clone() * n1
}

/// The quadratic `h(k)` with `f(n + (n-k)/n + (n-k)/n^2) n^6 = h(k) (n-k)^2`.
pub fn h_poly<T: ExactInt>(n: i64, k: &T) -> T {
    let nt = lift::<T>(n);
    let p = |cs: &[i64]| -> T {
        // coefficients from the highest power of n down
        cs.iter()
            .fold(T::zero(), |acc, &c| acc * nt.clone() + lift::<T>(c))
    };
    let a2 = p(&[-10, -26, -28, -18, -6]);
    let a1 = p(&[-1, 20, 27, 19, 0, -7, -6]);
    let a0 = p(&[1, -10, -4, -4, 9, 7, 6, 0]);
    (a2 * k.clone() + a1) * k.clone() + a0
}

fn int<T: ExactInt>(v: i64) -> Ratio<T> {
    Ratio::from_integer(lift(v))
}

// Table must reach row n+1 and 0 <= k <= n.
fn check_point<T: ExactInt>(d: &TriangleTable<T>, n: usize, k: usize) -> Result<(), TableError> {
    if k > n || n + 1 > d.max_n() {
        return Err(d.out_of_range(n as i64, k as i64));
    }
    Ok(())
}

/// Does the point lie where the ratio bounds are claimed?
pub fn ratio_bounds_apply(n: usize, k: usize) -> bool {
    n >= 1 && k >= 1 && k < n
}

/// 2-fold log-concavity hypotheses: `n >= 4`, `2 <= k <= n-2`.
pub fn two_fold_applies(n: usize, k: usize) -> bool {
    n >= 4 && k >= 2 && k + 2 <= n
}

pub fn reverse_ultra_applies(n: usize, k: usize) -> bool {
    k >= 1 && k < n
}

/// Lower bound `n + (n-k)/n` for `1 <= k <= n-1` and upper bound
/// `n + (n-k)/n + (n-k)/n^2` for `n >= 4`, `2 <= k <= n-2`, on `d(n+1,k)/d(n,k)`,
/// together with the intermediate inequalities their inductive proofs reduce to.
pub fn verify_ratio_bounds<T: ExactInt>(
    d: &TriangleTable<T>,
    n: usize,
    k: usize,
) -> Result<Verdict, TableError> {
    check_point(d, n, k)?;
    let mut v = Verdict::new();
    if !ratio_bounds_apply(n, k) {
        return Ok(v);
    }
    let (ni, ki) = (n as i64, k as i64);
    let r = ratio(d, n, k)?;
    let step = Ratio::new(lift::<T>(ni - ki), lift::<T>(ni));
    let lower = int::<T>(ni) + step.clone();
    v.record("ratio-lower-bound", ki, r >= lower, &r, &lower);

    // the induction step: d(n-1,k) >= (n-k-1) d(n-2,k)
    if n >= 3 && k + 2 <= n {
        let prev = d.get(n - 1, k).expect("in table");
        let prev2 = d.get(n - 2, k).expect("in table");
        let rhs = lift::<T>(ni - ki - 1) * prev2.clone();
        v.record("ratio-lower-bound-step", ki, *prev >= rhs, prev, &rhs);
    }

    if two_fold_applies(n, k) {
        let upper = lower.clone() + step / int::<T>(ni);
        v.record("ratio-upper-bound", ki, r <= upper, &r, &upper);

        let prev = d.get(n - 1, k).expect("in table").clone();
        let prev2 = d.get(n - 2, k).expect("in table").clone();
        // (n-1) + (n-k-1) d(n-2,k)/d(n-1,k) >= n^2/(n+1)
        let lhs =
            int::<T>(ni - 1) + int::<T>(ni - ki - 1) * Ratio::new(prev2.clone(), prev.clone());
        let rhs = Ratio::new(lift::<T>(ni * ni), lift::<T>(ni + 1));
        v.record("ratio-upper-bound-reduction", ki, lhs >= rhs, &lhs, &rhs);
        let cap = lift::<T>((ni + 1) * (ni - ki - 1)) * prev2.clone();
        v.record("ratio-upper-bound-step", ki, prev <= cap, &prev, &cap);
        let cap = lift::<T>(ni - 1) * prev2;
        v.record(
            "previous-ratio-at-most-n-minus-1",
            ki,
            prev <= cap,
            &prev,
            &cap,
        );
    }
    Ok(v)
}

/// The expressions of `d(n, k-2)`, `d(n, k-1)`, `d(n, k+1)`, `d(n, k+2)` through
/// `d(n+1, k)` and `d(n, k)`, and the two row identities they are derived from.
pub fn verify_substitutions<T: ExactInt>(
    d: &TriangleTable<T>,
    n: usize,
    k: usize,
) -> Result<Verdict, TableError> {
    check_point(d, n, k)?;
    let mut v = Verdict::new();
    let (ni, ki) = (n as i64, k as i64);
    let c = |x: i64| lift::<T>(x);
    let at = |nn: usize, kk: usize| d.get(nn, kk).expect("in table").clone();
    let small = at(n, k);

    if two_fold_applies(n, k) {
        let big = at(n + 1, k);
        let rhs =
            c((ni - ki + 1) * (ni - ki + 3)) * small.clone() - c(ni - 2 * ki + 3) * big.clone();
        let lhs = at(n, k - 2);
        v.record("substitution-k-minus-2", ki, lhs == rhs, &lhs, &rhs);

        let rhs = big.clone() - c(ni - ki + 1) * small.clone();
        let lhs = at(n, k - 1);
        v.record("substitution-k-minus-1", ki, lhs == rhs, &lhs, &rhs);

        let lhs = c((ki + 1) * (ni - ki)) * at(n, k + 1);
        let rhs = big.clone() - c(ki) * small.clone();
        v.record("substitution-k-plus-1", ki, lhs == rhs, &lhs, &rhs);

        let lhs = c((ki + 1) * (ki + 2) * (ni - ki - 1) * (ni - ki)) * at(n, k + 2);
        let rhs = c(ni - 2 * ki - 1) * big + c(ni + ki * ki) * small.clone();
        v.record("substitution-k-plus-2", ki, lhs == rhs, &lhs, &rhs);
    }
    if k >= 1 && k < n {
        let lhs = at(n, k - 1);
        let rhs = c((ki + 1) * (ni - ki)) * at(n, k + 1) - c(ni - 2 * ki + 1) * small.clone();
        v.record("three-term-row-identity", ki, lhs == rhs, &lhs, &rhs);
    }
    if k >= 1 {
        let lhs = at(n, k - 1);
        let rhs = c(ki) * small - at(n - 1, k - 1);
        v.record("two-row-identity", ki, lhs == rhs, &lhs, &rhs);
    }
    Ok(v)
}

/// The 2-fold log-concavity expression at `k` on row `n`.
pub fn two_fold_expression<T: ExactInt>(row: &[T], k: usize) -> T {
    let l = |j: usize| row[j].clone() * row[j].clone() - row[j - 1].clone() * row[j + 1].clone();
    let mid = l(k);
    mid.clone() * mid - l(k - 1) * l(k + 1)
}

/// The cubic reformulation of 2-fold log-concavity and the analysis of `f`:
/// `f(r) >= 0`, the homogenised identity, `f'` at `-1`, `k`, `n`, and the
/// value of `f` at the right end of the ratio interval. Sign claims about `f'`
/// and `h` are only made for `n >= 7`.
pub fn verify_cubic_machinery<T: ExactInt>(
    d: &TriangleTable<T>,
    n: usize,
    k: usize,
) -> Result<Verdict, TableError> {
    check_point(d, n, k)?;
    let mut v = Verdict::new();
    if !two_fold_applies(n, k) {
        return Ok(v);
    }
    let (ni, ki) = (n as i64, k as i64);
    let row = d.row(n).expect("in table");
    let big = d.get(n + 1, k).expect("in table");
    let small = &row[k];
    let coeffs = CubicCoeffs::<T>::at(ni, ki);
    let r = ratio(d, n, k)?;
    let zero = Ratio::<T>::zero();

    let expr = two_fold_expression(row, k);
    v.record("two-fold-log-concave", ki, !expr.is_negative(), &expr, 0);

    let fr = coeffs.eval(&r);
    v.record("cubic-at-ratio-nonnegative", ki, fr >= zero, &fr, 0);

    let clearing =
        lift::<T>((ki + 1) * (ki + 1) * (ni - ki) * (ni - ki) * (ki + 2) * (ni - ki - 1));
    let lhs = expr * clearing;
    let rhs = small.clone() * coeffs.homogeneous(big, small);
    v.record("cubic-reformulation-identity", ki, lhs == rhs, &lhs, &rhs);

    let c3_cap = -lift::<T>(ki * ki + 3 * ki + 8);
    v.record(
        "leading-coefficient-bound",
        ki,
        coeffs.c3 <= c3_cap,
        &coeffs.c3,
        &c3_cap,
    );

    let (n_t, k_t) = (lift::<T>(ni), lift::<T>(ki));
    let n2 = n_t.clone() * n_t.clone();
    let n3 = n2.clone() * n_t.clone();
    let nk = n_t.clone() * k_t.clone();
    let c = |x: i64| lift::<T>(x);

    let at_minus_one = coeffs.eval_derivative(&int(-1));
    let inner_m1 = n3.clone() + c(12) * n2.clone() - c(10) * nk.clone() + c(19) * n_t.clone()
        - c(34) * k_t.clone()
        - c(30);
    let closed = Ratio::from_integer(-(c(ki + 1) * inner_m1));
    v.record(
        "derivative-at-minus-one",
        ki,
        at_minus_one == closed,
        &at_minus_one,
        &closed,
    );

    let at_k = coeffs.eval_derivative(&int(ki));
    let closed_k =
        Ratio::from_integer(c((ki + 1) * (ni - ki)) * (n2.clone() + n_t.clone() + c(2 * ki - 2)));
    v.record("derivative-at-k", ki, at_k == closed_k, &at_k, &closed_k);

    let at_n = coeffs.eval_derivative(&int(ni));
    let inner_n = n3 + c(4) * n2 - c(10) * nk + c(14) * k_t.clone() - c(21) * n_t.clone() + c(14);
    let closed_n = Ratio::from_integer(-(c(ni - ki) * inner_n));
    v.record("derivative-at-n", ki, at_n == closed_n, &at_n, &closed_n);

    // right end of the ratio interval, n + (n-k)/n + (n-k)/n^2
    let x_hi = int::<T>(ni) + Ratio::new(c(ni - ki), c(ni)) + Ratio::new(c(ni - ki), c(ni * ni));
    let h = h_poly::<T>(ni, &k_t);
    let n6 = (0..6).fold(T::one(), |acc, _| acc * n_t.clone());
    let lhs = coeffs.eval(&x_hi) * Ratio::from_integer(n6);
    let rhs = Ratio::from_integer(h.clone() * c((ni - ki) * (ni - ki)));
    v.record("cubic-at-interval-end-identity", ki, lhs == rhs, &lhs, &rhs);

    let h_top = h_poly::<T>(ni, &c(ni - 1));
    let closed = n_t.clone()
        * (n_t.clone() * n_t.clone() * n_t.clone() * c((ni - 1) * (ni - 2))
            + c(2 * ni * ni + 2 * ni + 1));
    v.record("h-at-n-minus-1", ki, h_top == closed, &h_top, &closed);

    let h_two = h_poly::<T>(ni, &c(2));
    let p = |cs: &[i64]| {
        cs.iter()
            .fold(T::zero(), |acc, &x| acc * n_t.clone() + c(x))
    };
    let expanded = p(&[1, -12, 36, 10, -57, -105, -80, -36]);
    let pow = |e: u32| (0..e).fold(T::one(), |acc, _| acc * n_t.clone());
    let grouped = pow(5) * c((ni - 5) * (ni - 7))
        + pow(4) * c(ni - 6)
        + c(16) * pow(3) * c(ni - 7)
        + c(55) * pow(2) * c(ni - 7)
        + c(80) * n_t.clone() * c(ni - 1)
        + c(200) * pow(2)
        - c(36);
    v.record(
        "h-at-2",
        ki,
        h_two == expanded && expanded == grouped,
        &h_two,
        &grouped,
    );

    if n >= 7 {
        v.record(
            "derivative-at-minus-one-negative",
            ki,
            at_minus_one < zero,
            &at_minus_one,
            0,
        );
        v.record("derivative-at-k-positive", ki, at_k > zero, &at_k, 0);
        v.record("derivative-at-n-negative", ki, at_n < zero, &at_n, 0);
        let x_lo = int::<T>(ni) + Ratio::new(c(ni - ki), c(ni));
        for (claim, x) in [
            ("derivative-negative-at-interval-start", x_lo),
            ("derivative-negative-at-interval-end", x_hi),
        ] {
            let fx = coeffs.eval_derivative(&x);
            v.record(claim, ki, fx < zero, &fx, 0);
        }
        v.record("h-positive", ki, h.is_positive(), &h, 0);
    }
    Ok(v)
}

/// Reverse ultra log-concavity at `k` and the quadratic argument behind it.
pub fn verify_reverse_ultra_machinery<T: ExactInt>(
    d: &TriangleTable<T>,
    n: usize,
    k: usize,
) -> Result<Verdict, TableError> {
    check_point(d, n, k)?;
    let mut v = Verdict::new();
    if !reverse_ultra_applies(n, k) {
        return Ok(v);
    }
    let (ni, ki) = (n as i64, k as i64);
    let c = |x: i64| lift::<T>(x);
    let at = |nn: usize, kk: usize| d.get(nn, kk).expect("in table").clone();
    let small = at(n, k);
    let big = at(n + 1, k);

    let lhs = c((ni - ki + 1) * (ki + 1)) * at(n, k - 1) * at(n, k + 1);
    let rhs = c(ki * (ni - ki)) * small.clone() * small.clone();
    let direct_ok = lhs >= rhs;
    v.record("reverse-ultra", ki, direct_ok, &lhs, &rhs);

    let q = ReverseUltraQuadratic::<T>::at(ni, ki);
    // (n-k) (lhs - rhs) = a D^2 + b D d + c d^2
    let scaled = c(ni - ki) * (lhs - rhs);
    let homog = q.a.clone() * big.clone() * big.clone()
        + q.b.clone() * big.clone() * small.clone()
        + q.c.clone() * small.clone() * small.clone();
    v.record(
        "reverse-ultra-quadratic-identity",
        ki,
        scaled == homog,
        &scaled,
        &homog,
    );

    let r = ratio(d, n, k)?;
    let qr = q.eval(&r);
    let quad_ok = !qr.is_negative();
    v.record("reverse-ultra-quadratic", ki, quad_ok, &qr, 0);
    v.record(
        "reverse-ultra-quadratic-agrees",
        ki,
        quad_ok == direct_ok,
        quad_ok,
        direct_ok,
    );

    let disc = q.discriminant();
    let g = reduced_discriminant::<T>(ni, ki);
    let factored = c(ni - ki + 1) * g.clone();
    v.record(
        "discriminant-factorization",
        ki,
        disc == factored,
        &disc,
        &factored,
    );
    v.record("discriminant-positive", ki, disc.is_positive(), &disc, 0);

    let slope = c(16 * ki) - c(ni * ni + 10 * ni + 5);
    let slope_cap = -c((ki - 2) * (ki - 2) + 12);
    v.record(
        "reduced-discriminant-decreasing",
        ki,
        slope <= slope_cap,
        &slope,
        &slope_cap,
    );

    let g_top = reduced_discriminant::<T>(ni, ni - 1);
    let closed = c(2 * ((ni - 2) * (ni - 2) + 3));
    v.record(
        "reduced-discriminant-at-n-minus-1",
        ki,
        g_top == closed,
        &g_top,
        &closed,
    );

    let base = c(ni - ki + 1) * c(ni * ni + ni - 2 * ki);
    let gap = base.clone() * base - c(ni * ni) * disc.clone();
    let closed = c(4 * ki * (ni - ki + 1) * (ni - ki)) * c(ni * ni - ni + ki - 1);
    v.record("closing-square-identity", ki, gap == closed, &gap, &closed);
    v.record(
        "closing-square-nonnegative",
        ki,
        !gap.is_negative(),
        &gap,
        0,
    );

    // ratio beyond the larger root: t = 2(n-k+1) r - (n+1)(n-k+1), t > 0 and t^2 > disc
    let t = Ratio::from_integer(c(2 * (ni - ki + 1))) * r - int::<T>((ni + 1) * (ni - ki + 1));
    let t_sq = t.clone() * t.clone();
    let disc_r = Ratio::from_integer(disc);
    let beyond = t.is_positive() && t_sq > disc_r;
    v.record("ratio-beyond-larger-root", ki, beyond, &t_sq, &disc_r);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::{build_d, BuildMethod};
    use crate::verdict::Outcome;
    use num_bigint::BigInt;

    fn table(max_n: usize) -> TriangleTable<BigInt> {
        build_d(max_n, BuildMethod::Pascal).unwrap()
    }

    fn rat(a: i64, b: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn coefficients_at_7_2() {
        let c = CubicCoeffs::<i64>::at(7, 2);
        assert_eq!((c.c3, c.c2, c.c1), (-66, 657, -966));
        let fp = |x: i64| c.eval_derivative(&Ratio::from_integer(x));
        assert_eq!(fp(2), Ratio::from_integer(870));
        assert_eq!(fp(-1), Ratio::from_integer(-2478));
    }

    #[test]
    fn discriminant_at_5_4() {
        let q = ReverseUltraQuadratic::<i64>::at(5, 4);
        assert_eq!(q.discriminant(), 48);
        assert_eq!(reduced_discriminant::<i64>(5, 4), 24);
    }

    #[test]
    fn bounds_at_4_2() {
        let d = table(6);
        let v = verify_ratio_bounds(&d, 4, 2).unwrap();
        assert!(v.passed(), "{:?}", v.violations);
        assert!(v.applied.contains(&"ratio-upper-bound"));
        assert_eq!(ratio(&d, 4, 2).unwrap(), rat(32, 7));
        assert!(rat(9, 2) <= rat(32, 7) && rat(32, 7) <= rat(37, 8));
    }

    #[test]
    fn bounds_at_4_3_lower_only() {
        let v = verify_ratio_bounds(&table(6), 4, 3).unwrap();
        assert!(v.passed());
        assert!(v.applied.contains(&"ratio-lower-bound"));
        assert!(!v.applied.contains(&"ratio-upper-bound"));
    }

    #[test]
    fn bounds_not_applicable_at_k0() {
        let d = table(6);
        let v = verify_ratio_bounds(&d, 4, 0).unwrap();
        assert_eq!(v.outcome(), Outcome::NotApplicable);
        // the lower bound really does fail there
        assert!(ratio(&d, 4, 0).unwrap() < rat(5, 1));
        assert_eq!(ratio(&d, 4, 0).unwrap(), rat(44, 9));
    }

    #[test]
    fn out_of_table() {
        let d = table(5);
        assert!(matches!(
            verify_ratio_bounds(&d, 5, 2),
            Err(TableError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            verify_cubic_machinery(&d, 3, 4),
            Err(TableError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn substitutions_small() {
        let d = table(6);
        let v = verify_substitutions(&d, 4, 2).unwrap();
        assert!(v.passed(), "{:?}", v.violations);
        assert_eq!(v.checked, 6);
        let v = verify_substitutions(&d, 5, 2).unwrap();
        assert!(v.passed());
    }

    #[test]
    fn cubic_identity_at_4_2() {
        let d = table(6);
        let row = d.row(4).unwrap();
        assert_eq!(two_fold_expression(row, 2), BigInt::from(140));
        let v = verify_cubic_machinery(&d, 4, 2).unwrap();
        assert!(v.passed(), "{:?}", v.violations);
        assert!(v.applied.contains(&"cubic-reformulation-identity"));
        assert!(!v.applied.contains(&"h-positive"));
    }

    #[test]
    fn cubic_signs_from_7() {
        let d = table(9);
        let v = verify_cubic_machinery(&d, 7, 2).unwrap();
        assert!(v.passed(), "{:?}", v.violations);
        assert!(v.applied.contains(&"derivative-at-k-positive"));
        assert!(v.applied.contains(&"h-positive"));
    }

    #[test]
    fn reverse_ultra_points() {
        let d = table(6);
        let v = verify_reverse_ultra_machinery(&d, 4, 2).unwrap();
        assert!(v.passed(), "{:?}", v.violations);
        let first = &v.applied[0];
        assert_eq!(*first, "reverse-ultra");
        let v = verify_reverse_ultra_machinery(&d, 5, 4).unwrap();
        assert!(v.passed(), "{:?}", v.violations);
        assert_eq!(
            verify_reverse_ultra_machinery(&d, 5, 0).unwrap().outcome(),
            Outcome::NotApplicable
        );
    }

    #[test]
    fn fixed_width_agrees_with_bigint() {
        let small = build_d::<i128>(12, BuildMethod::FromE).unwrap();
        let big = table(12);
        for n in 4..=10 {
            for k in 2..=n - 2 {
                let a = verify_cubic_machinery(&small, n, k).unwrap();
                let b = verify_cubic_machinery(&big, n, k).unwrap();
                assert_eq!(a, b);
            }
        }
    }
}
