//! The minimal covariant bases: 69 covariants of a degree-8 form and 28
//! joint covariants of a pair of degree-4 forms, plus the two helper
//! covariants used by the joint-invariant tables.
//!
//! Each table row names an iterated transvectant; left slots written as
//! products (`f₃f₇`, `h²`) are plain polynomial products expanded before
//! transvecting. Rows only ever reference earlier rows, so a single
//! forward pass evaluates the whole table for a given input form; nothing
//! is computed symbolically in the input coefficients.
//!
//! The `degree` of a covariant counts the input coefficients (a pair for
//! the two-form table), the `order` its degree in `u, v`; every entry's
//! form has polynomial degree exactly equal to its listed order, and
//! scaling the input by `t` scales the covariant by `t^degree`.

use crate::binary::{transvectant, BinaryForm};
use crate::scalar::Scalar;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CovariantError {
    #[error("expected a binary form of degree {expected}, found degree {found}")]
    WrongDegree { expected: usize, found: usize },
}

/// Degree bookkeeping: a single count for the one-form table, a pair for
/// the two-form table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovariantDegree {
    Single(u8),
    Pair(u8, u8),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Covariant<S: Scalar> {
    pub id: &'static str,
    pub degree: CovariantDegree,
    pub order: u8,
    pub form: BinaryForm<S>,
}

/// The labeled covariants of one table, in table order.
#[derive(Debug, Clone, PartialEq)]
pub struct CovariantSet<S: Scalar> {
    entries: Vec<Covariant<S>>,
}

impl<S: Scalar> CovariantSet<S> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Covariant<S>> {
        self.entries.iter()
    }

    pub fn get(&self, id: &str) -> Option<&Covariant<S>> {
        self.entries.iter().find(|c| c.id == id)
    }

    /// The form of a known entry; panics on unknown ids, which would be a
    /// defect in the static tables, not in user input.
    pub fn form(&self, id: &str) -> &BinaryForm<S> {
        &self.get(id).expect("covariant id from a frozen table").form
    }

    fn push(&mut self, id: &'static str, degree: CovariantDegree, order: u8, form: BinaryForm<S>) {
        assert_eq!(
            form.degree(),
            order as usize,
            "covariant {id}: form degree must equal the listed order"
        );
        self.entries.push(Covariant {
            id,
            degree,
            order,
            form,
        });
    }
}

/// Left operand of a one-form table row: an earlier covariant or a product
/// of two earlier covariants.
#[derive(Clone, Copy)]
enum S8Left {
    One(usize),
    Prod(usize, usize),
}

/// Row `fᵢ = (left, f)^r` with listed degree and order.
struct S8Row {
    id: &'static str,
    left: S8Left,
    r: usize,
    degree: u8,
    order: u8,
}

use S8Left::{One, Prod};

#[rustfmt::skip]
const S8_ROWS: [S8Row; 68] = [
    S8Row { id: "f2",  left: One(1),      r: 8, degree: 2,  order: 0 },
    S8Row { id: "f3",  left: One(1),      r: 6, degree: 2,  order: 4 },
    S8Row { id: "f4",  left: One(1),      r: 4, degree: 2,  order: 8 },
    S8Row { id: "f5",  left: One(1),      r: 2, degree: 2,  order: 12 },
    S8Row { id: "f6",  left: One(4),      r: 8, degree: 3,  order: 0 },
    S8Row { id: "f7",  left: One(5),      r: 8, degree: 3,  order: 4 },
    S8Row { id: "f8",  left: One(5),      r: 7, degree: 3,  order: 6 },
    S8Row { id: "f9",  left: One(5),      r: 6, degree: 3,  order: 8 },
    S8Row { id: "f10", left: One(5),      r: 5, degree: 3,  order: 10 },
    S8Row { id: "f11", left: One(5),      r: 4, degree: 3,  order: 12 },
    S8Row { id: "f12", left: One(5),      r: 3, degree: 3,  order: 14 },
    S8Row { id: "f13", left: One(5),      r: 1, degree: 3,  order: 18 },
    S8Row { id: "f14", left: One(9),      r: 8, degree: 4,  order: 0 },
    S8Row { id: "f15", left: One(11),     r: 8, degree: 4,  order: 4 },
    S8Row { id: "f16", left: One(10),     r: 7, degree: 4,  order: 4 },
    S8Row { id: "f17", left: One(12),     r: 8, degree: 4,  order: 6 },
    S8Row { id: "f18", left: One(12),     r: 7, degree: 4,  order: 8 },
    S8Row { id: "f19", left: One(13),     r: 8, degree: 4,  order: 10 },
    S8Row { id: "f20", left: One(12),     r: 6, degree: 4,  order: 10 },
    S8Row { id: "f21", left: One(13),     r: 7, degree: 4,  order: 12 },
    S8Row { id: "f22", left: One(13),     r: 6, degree: 4,  order: 14 },
    S8Row { id: "f23", left: One(13),     r: 4, degree: 4,  order: 18 },
    S8Row { id: "f24", left: Prod(3, 3),  r: 8, degree: 5,  order: 0 },
    S8Row { id: "f25", left: One(20),     r: 8, degree: 5,  order: 2 },
    S8Row { id: "f26", left: One(21),     r: 8, degree: 5,  order: 4 },
    S8Row { id: "f27", left: One(20),     r: 7, degree: 5,  order: 4 },
    S8Row { id: "f28", left: One(22),     r: 8, degree: 5,  order: 6 },
    S8Row { id: "f29", left: One(21),     r: 7, degree: 5,  order: 6 },
    S8Row { id: "f30", left: One(22),     r: 7, degree: 5,  order: 8 },
    S8Row { id: "f31", left: One(23),     r: 8, degree: 5,  order: 10 },
    S8Row { id: "f32", left: One(22),     r: 6, degree: 5,  order: 10 },
    S8Row { id: "f33", left: One(21),     r: 5, degree: 5,  order: 10 },
    S8Row { id: "f34", left: One(23),     r: 6, degree: 5,  order: 14 },
    S8Row { id: "f35", left: Prod(3, 7),  r: 8, degree: 6,  order: 0 },
    S8Row { id: "f36", left: One(33),     r: 8, degree: 6,  order: 2 },
    S8Row { id: "f37", left: One(33),     r: 7, degree: 6,  order: 4 },
    S8Row { id: "f38", left: One(32),     r: 7, degree: 6,  order: 4 },
    S8Row { id: "f39", left: One(34),     r: 8, degree: 6,  order: 6 },
    S8Row { id: "f40", left: One(33),     r: 6, degree: 6,  order: 6 },
    S8Row { id: "f41", left: One(32),     r: 6, degree: 6,  order: 6 },
    S8Row { id: "f42", left: One(34),     r: 7, degree: 6,  order: 8 },
    S8Row { id: "f43", left: One(34),     r: 6, degree: 6,  order: 10 },
    S8Row { id: "f44", left: Prod(7, 7),  r: 8, degree: 7,  order: 0 },
    S8Row { id: "f45", left: One(43),     r: 8, degree: 7,  order: 2 },
    S8Row { id: "f46", left: One(42),     r: 7, degree: 7,  order: 2 },
    S8Row { id: "f47", left: One(43),     r: 7, degree: 7,  order: 4 },
    S8Row { id: "f48", left: One(42),     r: 6, degree: 7,  order: 4 },
    S8Row { id: "f49", left: One(43),     r: 6, degree: 7,  order: 6 },
    S8Row { id: "f50", left: One(42),     r: 5, degree: 7,  order: 6 },
    S8Row { id: "f51", left: One(41),     r: 4, degree: 7,  order: 6 },
    S8Row { id: "f52", left: Prod(7, 16), r: 8, degree: 8,  order: 0 },
    S8Row { id: "f53", left: One(51),     r: 6, degree: 8,  order: 2 },
    S8Row { id: "f54", left: One(50),     r: 6, degree: 8,  order: 2 },
    S8Row { id: "f55", left: One(51),     r: 5, degree: 8,  order: 4 },
    S8Row { id: "f56", left: One(50),     r: 5, degree: 8,  order: 4 },
    S8Row { id: "f57", left: One(51),     r: 4, degree: 8,  order: 6 },
    S8Row { id: "f58", left: One(50),     r: 4, degree: 8,  order: 6 },
    S8Row { id: "f59", left: Prod(15, 16), r: 8, degree: 9, order: 0 },
    S8Row { id: "f60", left: One(58),     r: 6, degree: 9,  order: 2 },
    S8Row { id: "f61", left: One(57),     r: 6, degree: 9,  order: 2 },
    S8Row { id: "f62", left: Prod(16, 17), r: 8, degree: 9, order: 2 },
    S8Row { id: "f63", left: One(58),     r: 5, degree: 9,  order: 4 },
    S8Row { id: "f64", left: Prod(17, 25), r: 8, degree: 10, order: 0 },
    S8Row { id: "f65", left: Prod(17, 27), r: 8, degree: 10, order: 2 },
    S8Row { id: "f66", left: Prod(17, 26), r: 8, degree: 10, order: 2 },
    S8Row { id: "f67", left: Prod(27, 29), r: 8, degree: 11, order: 2 },
    S8Row { id: "f68", left: Prod(27, 28), r: 8, degree: 11, order: 2 },
    S8Row { id: "f69", left: Prod(29, 38), r: 8, degree: 12, order: 2 },
];

/// The 69 covariants `f₁…f₆₉` of a degree-8 form, evaluated in dependency
/// order.
pub fn s8_covariant_basis<S: Scalar>(f: &BinaryForm<S>) -> Result<CovariantSet<S>, CovariantError> {
    if f.degree() != 8 {
        return Err(CovariantError::WrongDegree {
            expected: 8,
            found: f.degree(),
        });
    }
    let mut set = CovariantSet {
        entries: Vec::with_capacity(69),
    };
    // Index 0 is unused so that table references read as printed.
    let mut forms: Vec<BinaryForm<S>> = vec![BinaryForm::zero(0); 70];
    forms[1] = f.clone();
    set.push("f1", CovariantDegree::Single(1), 8, f.clone());
    for (num, row) in S8_ROWS.iter().enumerate() {
        let left = match row.left {
            One(i) => forms[i].clone(),
            Prod(i, j) => forms[i].mul(&forms[j]),
        };
        let value = transvectant(&left, f, row.r);
        forms[num + 2] = value.clone();
        set.push(row.id, CovariantDegree::Single(row.degree), row.order, value);
    }
    Ok(set)
}

/// Operand of a two-form table row.
#[derive(Clone, Copy)]
enum T3Operand {
    H,
    K,
    Cov(usize),
    HSquared,
    KSquared,
}

struct T3Row {
    id: &'static str,
    left: T3Operand,
    right: T3Operand,
    r: usize,
    d1: u8,
    d2: u8,
    order: u8,
}

use T3Operand::{Cov, HSquared, KSquared, H, K};

#[rustfmt::skip]
const T3_ROWS: [T3Row; 26] = [
    T3Row { id: "h3",  left: H,        right: H,       r: 4, d1: 2, d2: 0, order: 0 },
    T3Row { id: "h4",  left: K,        right: K,       r: 4, d1: 0, d2: 2, order: 0 },
    T3Row { id: "h5",  left: H,        right: K,       r: 4, d1: 1, d2: 1, order: 0 },
    T3Row { id: "h6",  left: H,        right: K,       r: 3, d1: 1, d2: 1, order: 2 },
    T3Row { id: "h7",  left: H,        right: H,       r: 2, d1: 2, d2: 0, order: 4 },
    T3Row { id: "h8",  left: K,        right: K,       r: 2, d1: 0, d2: 2, order: 4 },
    T3Row { id: "h9",  left: H,        right: K,       r: 2, d1: 1, d2: 1, order: 4 },
    T3Row { id: "h10", left: H,        right: K,       r: 1, d1: 1, d2: 1, order: 6 },
    T3Row { id: "h11", left: H,        right: Cov(7),  r: 4, d1: 3, d2: 0, order: 0 },
    T3Row { id: "h12", left: K,        right: Cov(8),  r: 4, d1: 0, d2: 3, order: 0 },
    T3Row { id: "h13", left: H,        right: Cov(8),  r: 4, d1: 1, d2: 2, order: 0 },
    T3Row { id: "h14", left: K,        right: Cov(7),  r: 4, d1: 2, d2: 1, order: 0 },
    T3Row { id: "h15", left: H,        right: Cov(8),  r: 3, d1: 1, d2: 2, order: 2 },
    T3Row { id: "h16", left: K,        right: Cov(7),  r: 3, d1: 2, d2: 1, order: 2 },
    T3Row { id: "h17", left: H,        right: Cov(8),  r: 2, d1: 1, d2: 2, order: 4 },
    T3Row { id: "h18", left: K,        right: Cov(7),  r: 2, d1: 2, d2: 1, order: 4 },
    T3Row { id: "h19", left: H,        right: Cov(7),  r: 1, d1: 3, d2: 0, order: 6 },
    T3Row { id: "h20", left: K,        right: Cov(8),  r: 1, d1: 0, d2: 3, order: 6 },
    T3Row { id: "h21", left: H,        right: Cov(8),  r: 1, d1: 1, d2: 2, order: 6 },
    T3Row { id: "h22", left: K,        right: Cov(7),  r: 1, d1: 2, d2: 1, order: 6 },
    T3Row { id: "h23", left: Cov(7),   right: Cov(8),  r: 4, d1: 2, d2: 2, order: 0 },
    T3Row { id: "h24", left: Cov(7),   right: Cov(8),  r: 3, d1: 2, d2: 2, order: 2 },
    T3Row { id: "h25", left: Cov(19),  right: K,       r: 4, d1: 3, d2: 1, order: 2 },
    T3Row { id: "h26", left: H,        right: Cov(20), r: 4, d1: 1, d2: 3, order: 2 },
    T3Row { id: "h27", left: HSquared, right: Cov(20), r: 6, d1: 2, d2: 3, order: 2 },
    T3Row { id: "h28", left: Cov(19),  right: KSquared, r: 6, d1: 3, d2: 2, order: 2 },
];

/// The 28 joint covariants `h₁…h₂₈` of a pair of degree-4 forms.
pub fn s4s4_covariant_basis<S: Scalar>(
    h: &BinaryForm<S>,
    k: &BinaryForm<S>,
) -> Result<CovariantSet<S>, CovariantError> {
    for input in [h, k] {
        if input.degree() != 4 {
            return Err(CovariantError::WrongDegree {
                expected: 4,
                found: input.degree(),
            });
        }
    }
    let mut set = CovariantSet {
        entries: Vec::with_capacity(28),
    };
    let mut forms: Vec<BinaryForm<S>> = vec![BinaryForm::zero(0); 29];
    forms[1] = h.clone();
    forms[2] = k.clone();
    set.push("h1", CovariantDegree::Pair(1, 0), 4, h.clone());
    set.push("h2", CovariantDegree::Pair(0, 1), 4, k.clone());
    for (num, row) in T3_ROWS.iter().enumerate() {
        let operand = |op: T3Operand| -> BinaryForm<S> {
            match op {
                H => h.clone(),
                K => k.clone(),
                Cov(i) => forms[i].clone(),
                HSquared => h.mul(h),
                KSquared => k.mul(k),
            }
        };
        let value = transvectant(&operand(row.left), &operand(row.right), row.r);
        forms[num + 3] = value.clone();
        set.push(
            row.id,
            CovariantDegree::Pair(row.d1, row.d2),
            row.order,
            value,
        );
    }
    Ok(set)
}

/// The helper covariants `(h,h)²` (degree 2, order 4) and `(h, (h,h)²)¹`
/// (degree 3, order 6) used by the joint-invariant tables.
pub fn helper_covariants<S: Scalar>(
    h: &BinaryForm<S>,
) -> Result<(BinaryForm<S>, BinaryForm<S>), CovariantError> {
    if h.degree() != 4 {
        return Err(CovariantError::WrongDegree {
            expected: 4,
            found: h.degree(),
        });
    }
    let h24 = transvectant(h, h, 2);
    let h36 = transvectant(h, &h24, 1);
    Ok((h24, h36))
}
