use serde::{Deserialize, Serialize};

use super::table::{CayleyTable, FiniteUnarySemigroup, UnaryAlgebra};

/// Data of the monogenic subsemigroup generated by one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicData {
    /// Least `i` with `x^i = x^(i+p)` for some `p >= 1`.
    pub index: usize,
    /// Least such `p`.
    pub period: usize,
    /// The idempotent power of `x`.
    pub omega: usize,
    /// The inverse of `x * omega` in the group with identity `omega`.
    pub pseudoinverse: usize,
}

/// Index, period, idempotent power and pseudoinverse of `x`.
///
/// The pseudoinverse is `x^j` for the least `j >= index` with
/// `j = -1 (mod period)`: then `x^j * x = x^(j+1)` is a multiple-of-period
/// power past the index, which is the idempotent.
pub fn cyclic_data(table: &CayleyTable, x: usize) -> CyclicData {
    let n = table.size();
    // first_seen[e] = k when x^k = e
    let mut first_seen = vec![0usize; n];
    let mut powers = vec![x];
    first_seen[x] = 1;
    let (index, period) = loop {
        let k = powers.len() + 1;
        let next = table.mul(*powers.last().unwrap(), x);
        if first_seen[next] != 0 {
            let i = first_seen[next];
            break (i, k - i);
        }
        first_seen[next] = k;
        powers.push(next);
    };
    let power = |j: usize| {
        let e = if j < index { j } else { index + (j - index) % period };
        powers[e - 1]
    };
    let omega_exp = index.div_ceil(period) * period;
    let pinv_exp = index + (period - 1 + period - index % period) % period;
    CyclicData { index, period, omega: power(omega_exp), pseudoinverse: power(pinv_exp) }
}

/// A finite semigroup with pseudoinversion as its unary operation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteEpigroup {
    table: CayleyTable,
    cyclic: Vec<CyclicData>,
    unary: Vec<usize>,
    group: Vec<bool>,
    index: usize,
}

impl FiniteEpigroup {
    pub fn new(table: CayleyTable) -> FiniteEpigroup {
        let cyclic: Vec<CyclicData> = (0..table.size()).map(|x| cyclic_data(&table, x)).collect();
        let unary = cyclic.iter().map(|c| c.pseudoinverse).collect();
        let group = (0..table.size()).map(|x| table.mul(cyclic[x].omega, x) == x).collect();
        let index = cyclic.iter().map(|c| c.index).max().unwrap_or(1);
        FiniteEpigroup { table, cyclic, unary, group, index }
    }

    pub fn cyclic(&self, x: usize) -> &CyclicData {
        &self.cyclic[x]
    }

    pub fn omega(&self, x: usize) -> usize {
        self.cyclic[x].omega
    }

    pub fn pseudoinverse(&self, x: usize) -> usize {
        self.unary[x]
    }

    pub fn is_group_element(&self, x: usize) -> bool {
        self.group[x]
    }

    pub fn group_elements(&self) -> Vec<usize> {
        (0..self.size()).filter(|&x| self.group[x]).collect()
    }

    /// Least `n` with every `x^n` a group element.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn unary_table(&self) -> &[usize] {
        &self.unary
    }

    pub fn into_table(self) -> CayleyTable {
        self.table
    }

    pub fn dual(&self) -> FiniteEpigroup {
        FiniteEpigroup::new(self.table.transpose())
    }

    /// Forgets that the unary operation is derived.
    pub fn as_unary_semigroup(&self) -> FiniteUnarySemigroup {
        FiniteUnarySemigroup::new(self.table.clone(), self.unary.clone()).expect("shapes agree")
    }
}

impl UnaryAlgebra for FiniteEpigroup {
    fn table(&self) -> &CayleyTable {
        &self.table
    }

    fn unary(&self, a: usize) -> usize {
        self.unary[a]
    }
}

/// An element where a declared unary operation differs from pseudoinversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnaryMismatch {
    pub element: usize,
    pub declared: usize,
    pub derived: usize,
}

/// Builds the epigroup on the same table and lists every element where the
/// declared unary operation is not the pseudoinverse.
pub fn derive_epigroup(s: &FiniteUnarySemigroup) -> (FiniteEpigroup, Vec<UnaryMismatch>) {
    let e = FiniteEpigroup::new(s.table().clone());
    let mismatches = (0..e.size())
        .filter(|&x| s.unary(x) != e.pseudoinverse(x))
        .map(|x| UnaryMismatch { element: x, declared: s.unary(x), derived: e.pseudoinverse(x) })
        .collect();
    (e, mismatches)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpigroupProfile {
    pub group_elements: Vec<usize>,
    pub index: usize,
    pub is_completely_regular: bool,
}

/// Group elements, index and complete regularity.
///
/// Complete regularity is computed both as "every element is a group
/// element" and as "`x = x''` holds pointwise"; the two must agree.
pub fn epigroup_profile(s: &FiniteEpigroup) -> EpigroupProfile {
    let group_elements = s.group_elements();
    let all_group = group_elements.len() == s.size();
    let double_bar = (0..s.size()).all(|x| s.unary(s.unary(x)) == x);
    assert_eq!(all_group, double_bar, "complete regularity criteria disagree");
    EpigroupProfile { group_elements, index: s.index(), is_completely_regular: all_group }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilProfile {
    pub is_nil: bool,
    pub zero: Option<usize>,
    /// Least `n` with `S^n = {0}`; present exactly when `is_nil`.
    pub nilpotency_degree: Option<usize>,
}

pub fn nil_profile(s: &FiniteEpigroup) -> NilProfile {
    let zero = s.table().zero();
    let Some(z) = zero else {
        return NilProfile { is_nil: false, zero, nilpotency_degree: None };
    };
    // some power of x is 0 iff the idempotent power of x is 0
    let is_nil = (0..s.size()).all(|x| s.omega(x) == z);
    if !is_nil {
        return NilProfile { is_nil, zero, nilpotency_degree: None };
    }
    let n = s.size();
    let mut current = vec![true; n];
    let mut degree = 1;
    while current.iter().enumerate().any(|(x, &on)| on && x != z) {
        let mut next = vec![false; n];
        for a in (0..n).filter(|&a| current[a]) {
            for b in 0..n {
                next[s.mul(a, b)] = true;
            }
        }
        current = next;
        degree += 1;
    }
    NilProfile { is_nil, zero, nilpotency_degree: Some(degree) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RightIdealCheck {
    pub holds: bool,
    /// `(x, y)` with `x` a group element and `x y` not one.
    pub witness: Option<(usize, usize)>,
}

/// Whether the group elements form a right ideal.
pub fn gr_right_ideal(s: &FiniteEpigroup) -> RightIdealCheck {
    let n = s.size();
    let witness = (0..n)
        .filter(|&x| s.is_group_element(x))
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| !s.is_group_element(s.mul(x, y)));
    RightIdealCheck { holds: witness.is_none(), witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::table::validate_table;

    fn names(s: &str) -> Vec<String> {
        s.split_whitespace().map(str::to_owned).collect()
    }

    fn p() -> FiniteEpigroup {
        let t = validate_table(names("e a 0"), vec![vec![0, 1, 2], vec![2, 2, 2], vec![2, 2, 2]]).unwrap();
        FiniteEpigroup::new(t)
    }

    fn c() -> FiniteEpigroup {
        let t = validate_table(names("e a 0"), vec![vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]]).unwrap();
        FiniteEpigroup::new(t)
    }

    fn z3() -> FiniteEpigroup {
        FiniteEpigroup::new(CayleyTable::from_fn(names("g0 g1 g2"), |a, b| (a + b) % 3).unwrap())
    }

    fn nil(k: usize) -> FiniteEpigroup {
        // elements a^1..a^k then 0 (index k)
        let mut ns: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
        ns.push("0".into());
        FiniteEpigroup::new(CayleyTable::from_fn(ns, |x, y| if x == k || y == k { k } else { (x + y + 1).min(k) }).unwrap())
    }

    #[test]
    fn cyclic_data_in_c() {
        let d = cyclic_data(c().table(), 1);
        assert_eq!(d, CyclicData { index: 2, period: 1, omega: 2, pseudoinverse: 2 });
    }

    #[test]
    fn pseudoinverses_in_p() {
        let s = p();
        assert_eq!(s.pseudoinverse(0), 0);
        assert_eq!(s.pseudoinverse(1), 2);
        assert_eq!(s.pseudoinverse(2), 2);
    }

    #[test]
    fn cyclic_group_generator() {
        let d = cyclic_data(z3().table(), 1);
        assert_eq!(d, CyclicData { index: 1, period: 3, omega: 0, pseudoinverse: 2 });
    }

    #[test]
    fn nil_pseudoinverse_is_zero() {
        let s = nil(2);
        assert_eq!(s.pseudoinverse(0), 2);
    }

    #[test]
    fn t_mismatch_at_e() {
        let t = validate_table(names("e 0"), vec![vec![0, 1], vec![1, 1]]).unwrap();
        let u = FiniteUnarySemigroup::new(t, vec![1, 1]).unwrap();
        let (e, mism) = derive_epigroup(&u);
        assert_eq!(e.pseudoinverse(0), 0);
        assert_eq!(mism, vec![UnaryMismatch { element: 0, declared: 1, derived: 0 }]);
    }

    #[test]
    fn profiles() {
        let pp = epigroup_profile(&p());
        assert_eq!(pp, EpigroupProfile { group_elements: vec![0, 2], index: 2, is_completely_regular: false });
        let zp = epigroup_profile(&z3());
        assert_eq!(zp, EpigroupProfile { group_elements: vec![0, 1, 2], index: 1, is_completely_regular: true });
        let np = epigroup_profile(&nil(3));
        assert_eq!((np.group_elements, np.index), (vec![3], 4));
    }

    #[test]
    fn nil_profiles() {
        assert_eq!(nil_profile(&nil(3)).nilpotency_degree, Some(4));
        assert!(!nil_profile(&p()).is_nil);
        assert_eq!(nil_profile(&nil(1)).nilpotency_degree, Some(2));
    }

    #[test]
    fn right_ideal() {
        assert_eq!(gr_right_ideal(&p()).witness, Some((0, 1)));
        assert_eq!(gr_right_ideal(&c()).witness, Some((0, 1)));
        assert!(gr_right_ideal(&z3()).holds);
    }

    #[test]
    fn dual_of_p() {
        let d = p().dual();
        assert_eq!(d.mul(1, 0), 1); // ae = a
        assert_eq!(d.mul(0, 1), 2); // ea = 0
        assert_eq!(c().dual(), c());
    }
}
