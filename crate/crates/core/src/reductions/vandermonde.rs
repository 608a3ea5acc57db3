use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use super::encode::EncodedSystem;
use super::ReductionError;
use crate::polyring::{Field, Polynomial, Rational};

/// `g_k = Σ_j a_k^(j-1) f_j` for `M` distinct points `a_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmplifiedSystem<F: Field> {
    pub polynomials: Vec<Polynomial<F>>,
    pub points: Vec<F>,
    pub source: EncodedSystem<F>,
    pub epsilon: Rational,
}

impl<F: Field> AmplifiedSystem<F> {
    /// Number of source polynomials.
    pub fn m(&self) -> usize {
        self.source.len()
    }

    pub fn matrix(&self) -> Vec<Vec<F>> {
        vandermonde_matrix(&self.points, self.m(), self.source.ring.ctx())
    }

    /// JSON sidecar recording the construction parameters.
    pub fn sidecar(&self) -> Value {
        json!({
            "schema": 1,
            "field": self.source.ring.field_tag().to_string(),
            "epsilon": format_ratio(&self.epsilon),
            "m": self.m(),
            "M": self.points.len(),
            "points": self.points.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "clause_map": self.source.clause_map,
        })
    }
}

pub(crate) fn format_ratio(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// `⌈m / ε⌉` for `ε ∈ (0, 1]`.
pub fn amplification_size(m: usize, epsilon: &Rational) -> Result<usize, ReductionError> {
    if *epsilon <= <Rational as Zero>::zero() || *epsilon > Rational::from_integer(1.into()) {
        return Err(ReductionError::BadEpsilon(format_ratio(epsilon)));
    }
    let size = (Rational::from_integer(BigInt::from(m)) / epsilon).ceil();
    Ok(size.to_integer().to_usize().expect("size fits in usize"))
}

/// Rows `1, a, a², …, a^(m-1)` for each point.
pub fn vandermonde_matrix<F: Field>(points: &[F], m: usize, ctx: &F::Ctx) -> Vec<Vec<F>> {
    points
        .iter()
        .map(|a| {
            let mut row = Vec::with_capacity(m);
            let mut p = F::one(ctx);
            for _ in 0..m {
                row.push(p.clone());
                p = p.mul_ref(a);
            }
            row
        })
        .collect()
}

/// Exact determinant by Gaussian elimination.
pub fn determinant<F: Field>(rows: &[Vec<F>], ctx: &F::Ctx) -> F {
    let n = rows.len();
    let mut a: Vec<Vec<F>> = rows.to_vec();
    let mut det = F::one(ctx);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero(ctx);
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det.mul_ref(&p);
        let inv = p.inv().expect("pivot is nonzero");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].mul_ref(&inv);
            for c in col..n {
                let d = factor.mul_ref(&a[col][c]);
                a[r][c] = a[r][c].sub_ref(&d);
            }
        }
    }
    det
}

/// `∏_{r<s} (a_s − a_r)`, the closed form for a square Vandermonde matrix.
pub fn vandermonde_determinant<F: Field>(points: &[F], ctx: &F::Ctx) -> F {
    let mut d = F::one(ctx);
    for s in 0..points.len() {
        for r in 0..s {
            d = d.mul_ref(&points[s].sub_ref(&points[r]));
        }
    }
    d
}

/// Mixes the `m` source polynomials through a Vandermonde matrix with
/// `M = ⌈m/ε⌉` rows. Without explicit points, `0, 1, …, M-1` are used.
pub fn vandermonde_amplify<F: Field>(
    sys: &EncodedSystem<F>,
    epsilon: &Rational,
    points: Option<Vec<F>>,
) -> Result<AmplifiedSystem<F>, ReductionError> {
    let m = sys.len();
    let size = amplification_size(m, epsilon)?;
    let ctx = sys.ring.ctx();
    let points = match points {
        Some(p) => {
            if p.len() < size {
                return Err(ReductionError::TooFewPoints { needed: size, got: p.len() });
            }
            let mut seen = HashMap::new();
            for (i, a) in p.iter().enumerate() {
                if let Some(j) = seen.insert(a.clone(), i) {
                    return Err(ReductionError::DuplicatePoints(j, i));
                }
            }
            p
        }
        None => {
            if let Some(q) = F::order(ctx) {
                if (q as u128) < size as u128 {
                    return Err(ReductionError::FieldTooSmall { p: q, needed: size });
                }
            }
            (0..size).map(|i| F::from_i64(ctx, i as i64)).collect()
        }
    };
    let matrix = vandermonde_matrix(&points, m, ctx);
    let polynomials = matrix
        .iter()
        .map(|row| row.iter().zip(&sys.polynomials).fold(Polynomial::zero(&sys.ring), |acc, (a, f)| &acc + &f.scale(a)))
        .collect();
    Ok(AmplifiedSystem { polynomials, points, source: sys.clone(), epsilon: epsilon.clone() })
}
