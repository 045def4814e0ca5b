//! Quadratic forms polarizing to `J` that are invariant under given
//! generators, in characteristic 2.
//!
//! The unknowns are the values `Q(e_i)` on the `2n` basis vectors. With
//! `B(v) = sum_{i<j} v_i v_j J_ij`, invariance of `Q` under `g` at a basis
//! vector `e_k` reads `sum_i g_ik^2 Q(e_i) + B(g e_k) = Q(e_k)`, which is
//! linear in the unknowns.

use serde::Serialize;

use crate::construct::{gram, GeneratorPair};
use crate::gf::FieldElem;
use crate::matrix::Mat;

use super::ClaimError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormResult {
    /// No invariant form exists.
    Inconsistent,
    /// One invariant form (free unknowns set to zero) and the dimension of
    /// the solution space.
    FormFound {
        values: Vec<FieldElem>,
        freedom: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormVerdict {
    Inconsistent,
    FormFound,
}

impl FormResult {
    pub fn verdict(&self) -> FormVerdict {
        match self {
            FormResult::Inconsistent => FormVerdict::Inconsistent,
            FormResult::FormFound { .. } => FormVerdict::FormFound,
        }
    }
}

/// Solve for a `J`-polarized quadratic form invariant under every matrix
/// in `gens` (all of size `2n`).
pub fn invariant_form(gens: &[Mat]) -> Result<FormResult, ClaimError> {
    let first = gens
        .first()
        .ok_or_else(|| ClaimError::Data("no generators".into()))?;
    let k = first.field().clone();
    if k.p() != 2 {
        return Err(ClaimError::OddCharacteristic(k.order()));
    }
    let dim = first.rows();
    if dim % 2 != 0 || gens.iter().any(|g| g.rows() != dim || g.cols() != dim) {
        return Err(ClaimError::Data(
            "generators must be square of even size".into(),
        ));
    }
    let j = gram(&k, dim / 2);
    // rows: one equation per (g, k); columns: unknowns then right-hand side
    let mut sys = Mat::zeros(&k, gens.len() * dim, dim + 1);
    for (gi, g) in gens.iter().enumerate() {
        for c in 0..dim {
            let r = gi * dim + c;
            let v = g.col(c);
            for (i, &vi) in v.iter().enumerate() {
                sys.set(r, i, k.mul(vi, vi));
            }
            sys.set(r, c, k.sub(sys.get(r, c), k.one()));
            let mut b = k.zero();
            for i in 0..dim {
                if v[i].is_zero() {
                    continue;
                }
                for jj in i + 1..dim {
                    let jv = j.get(i, jj);
                    if !jv.is_zero() && !v[jj].is_zero() {
                        b = k.add(b, k.mul(k.mul(v[i], v[jj]), jv));
                    }
                }
            }
            // sum g_ik^2 Q_i - Q_k = -B(g e_k)
            sys.set(r, dim, k.neg(b));
        }
    }
    let (red, piv) = sys.rref();
    if piv.contains(&dim) {
        return Ok(FormResult::Inconsistent);
    }
    let mut values = vec![k.zero(); dim];
    for (row, &p) in piv.iter().enumerate() {
        values[p] = red.get(row, dim);
    }
    Ok(FormResult::FormFound {
        values,
        freedom: dim - piv.len(),
    })
}

/// The obstruction for a generator pair: `Inconsistent` means `<x, y>`
/// preserves no quadratic form with polar form `J`.
pub fn quadratic_form_obstruction(pair: &GeneratorPair) -> Result<FormResult, ClaimError> {
    invariant_form(&[pair.x.clone(), pair.y.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_general, field_of_order, pos};

    /// `Q(v) = sum Q_i v_i^2 + sum_{i<j} v_i v_j J_ij`.
    fn q_of(j: &Mat, qv: &[FieldElem], v: &[FieldElem]) -> FieldElem {
        let k = j.field();
        let mut s = k.zero();
        for i in 0..v.len() {
            s = k.add(s, k.mul(qv[i], k.mul(v[i], v[i])));
            for jj in i + 1..v.len() {
                s = k.add(s, k.mul(j.get(i, jj), k.mul(v[i], v[jj])));
            }
        }
        s
    }

    #[test]
    fn identity_pair_has_full_freedom() {
        let k = field_of_order(2).unwrap();
        let i = Mat::identity(&k, 8);
        match invariant_form(&[i.clone(), i]).unwrap() {
            FormResult::FormFound { freedom, .. } => assert_eq!(freedom, 8),
            r => panic!("{r:?}"),
        }
    }

    #[test]
    fn orthogonal_plus_type_swap_is_found() {
        // e1 <-> e2, e-1 <-> e-2 preserves Q = x1 x-1 + x2 x-2
        let k = field_of_order(2).unwrap();
        let n = 2;
        let mut s = Mat::zeros(&k, 4, 4);
        for (a, b) in [(1, 2), (2, 1), (-1, -2), (-2, -1)] {
            s.set(pos(n, b), pos(n, a), k.one());
        }
        let i = Mat::identity(&k, 4);
        let r = invariant_form(&[s.clone(), i]).unwrap();
        let FormResult::FormFound { values, .. } = r else {
            panic!("expected a form")
        };
        let j = gram(&k, n);
        let mut rng_vecs = Vec::new();
        for m in 0..16u32 {
            rng_vecs.push(
                (0..4)
                    .map(|b| k.from_int(((m >> b) & 1) as i64))
                    .collect::<Vec<_>>(),
            );
        }
        for v in rng_vecs {
            let sv = s.mul_vec(&v);
            assert_eq!(q_of(&j, &values, &v), q_of(&j, &values, &sv));
        }
    }

    #[test]
    fn n6_and_n8_over_f2_are_obstructed() {
        let k = field_of_order(2).unwrap();
        for n in [6, 8] {
            let pr = build_general(n, &k, k.one()).unwrap();
            assert_eq!(
                quadratic_form_obstruction(&pr).unwrap(),
                FormResult::Inconsistent,
                "n={n}"
            );
        }
    }

    #[test]
    fn odd_characteristic_is_rejected() {
        let k = field_of_order(3).unwrap();
        let pr = build_general(4, &k, k.one()).unwrap();
        assert!(matches!(
            quadratic_form_obstruction(&pr),
            Err(ClaimError::OddCharacteristic(3))
        ));
    }
}
