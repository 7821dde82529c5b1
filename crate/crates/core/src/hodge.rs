//! Hodge types of the motives attached to `GL(2)`, `GSp(4)` and `GSp(6)`
//! eigenforms, Künneth products, and the weight solver that pins down which
//! tensor products can look like a degree-3 motive.

use serde::Serialize;

use crate::error::{Error, Result};

/// Pure Hodge type: a multiset of `(p, q)` with `p + q = w`, closed under
/// `(p, q) -> (q, p)`. Pairs are stored sorted so equality is multiset
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HodgeType {
    weight: i64,
    pairs: Vec<(i64, i64)>,
}

impl HodgeType {
    pub fn new(mut pairs: Vec<(i64, i64)>) -> Result<Self> {
        let weight = match pairs.first() {
            Some(&(p, q)) => p + q,
            None => return Err(Error::ImpureHodge),
        };
        if pairs.iter().any(|&(p, q)| p + q != weight) {
            return Err(Error::ImpureHodge);
        }
        pairs.sort_unstable();
        let mut mirror: Vec<_> = pairs.iter().map(|&(p, q)| (q, p)).collect();
        mirror.sort_unstable();
        if mirror != pairs {
            return Err(Error::Domain("Hodge type is not symmetric".into()));
        }
        Ok(Self { weight, pairs })
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn rank(&self) -> usize {
        self.pairs.len()
    }
}

fn even_positive(w: u32, what: &str) -> Result<()> {
    if w == 0 || w % 2 == 1 {
        return Err(Error::InvalidWeight(format!("{what} weight {w} must be even and positive")));
    }
    Ok(())
}

/// `(0, k-1) + (k-1, 0)`.
pub fn hodge_gl2(k: u32) -> Result<HodgeType> {
    even_positive(k, "GL(2)")?;
    let w = k as i64 - 1;
    HodgeType::new(vec![(0, w), (w, 0)])
}

/// `(0, 2l-3) + (l-2, l-1) + (l-1, l-2) + (2l-3, 0)`.
pub fn hodge_gsp4(l: u32) -> Result<HodgeType> {
    even_positive(l, "GSp(4)")?;
    let l = l as i64;
    HodgeType::new(vec![(0, 2 * l - 3), (l - 2, l - 1), (l - 1, l - 2), (2 * l - 3, 0)])
}

/// `(0, 3K-6) + (K-3, 2K-3) + (K-2, 2K-4) + (K-1, 2K-5)` and mirrors.
pub fn hodge_gsp6(big_k: u32) -> Result<HodgeType> {
    even_positive(big_k, "GSp(6)")?;
    if big_k < 4 {
        return Err(Error::InvalidWeight(format!("GSp(6) weight {big_k} gives negative Hodge numbers")));
    }
    let k = big_k as i64;
    let half = [(0, 3 * k - 6), (k - 3, 2 * k - 3), (k - 2, 2 * k - 4), (k - 1, 2 * k - 5)];
    let pairs = half.iter().flat_map(|&(p, q)| [(p, q), (q, p)]).collect();
    HodgeType::new(pairs)
}

/// Künneth formula: `H^{p,q}(A ⊗ B) = sum H^{p1,q1}(A) ⊗ H^{p2,q2}(B)`.
pub fn kunneth_tensor(a: &HodgeType, b: &HodgeType) -> HodgeType {
    let pairs = a
        .pairs
        .iter()
        .flat_map(|&(p1, q1)| b.pairs.iter().map(move |&(p2, q2)| (p1 + p2, q1 + q2)))
        .collect();
    HodgeType::new(pairs).expect("tensor of pure symmetric types is pure and symmetric")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeightTriple {
    pub k: u32,
    pub l: u32,
    #[serde(rename = "K")]
    pub big_k: u32,
}

/// The degree-3 weight `K` whose Hodge type equals
/// `hodge_gl2(k) ⊗ hodge_gsp4(l)`, if there is one.
///
/// Only one `K` can match: purity forces `3K - 6 = (k - 1) + (2l - 3)`.
pub fn matching_weight(k: u32, l: u32) -> Result<Option<u32>> {
    let tensor = kunneth_tensor(&hodge_gl2(k)?, &hodge_gsp4(l)?);
    let w = tensor.weight();
    if (w + 6) % 3 != 0 {
        return Ok(None);
    }
    let big_k = (w + 6) / 3;
    if big_k < 4 || big_k % 2 == 1 {
        return Ok(None);
    }
    let big_k = big_k as u32;
    Ok((hodge_gsp6(big_k)? == tensor).then_some(big_k))
}

/// Every even `(k, l, K)` in `[min, max]` with
/// `hodge_gl2(k) ⊗ hodge_gsp4(l) = hodge_gsp6(K)`, by exhaustive multiset
/// comparison. Sorted ascending.
pub fn weight_solver(min: u32, max: u32) -> Vec<WeightTriple> {
    let evens: Vec<u32> = (min.max(1)..=max).filter(|w| w % 2 == 0).collect();
    let targets: Vec<(u32, HodgeType)> = evens
        .iter()
        .filter_map(|&kk| hodge_gsp6(kk).ok().map(|h| (kk, h)))
        .collect();
    let mut out = Vec::new();
    for &k in &evens {
        let a = hodge_gl2(k).expect("even positive");
        for &l in &evens {
            let t = kunneth_tensor(&a, &hodge_gsp4(l).expect("even positive"));
            for (big_k, h) in &targets {
                if *h == t {
                    out.push(WeightTriple { k, l, big_k: *big_k });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl2_types() {
        let h = hodge_gl2(12).unwrap();
        assert_eq!(h.pairs(), &[(0, 11), (11, 0)]);
        assert_eq!(hodge_gl2(26).unwrap().weight(), 25);
        assert!(hodge_gl2(13).is_err());
        assert!(hodge_gl2(0).is_err());
    }

    #[test]
    fn gsp4_types() {
        let h = hodge_gsp4(14).unwrap();
        assert_eq!(h.pairs(), &[(0, 25), (12, 13), (13, 12), (25, 0)]);
        assert_eq!(h.weight(), 25);
        assert_eq!(h.rank(), 4);
    }

    #[test]
    fn gsp6_types() {
        let h = hodge_gsp6(14).unwrap();
        assert_eq!(h.rank(), 8);
        assert_eq!(h.weight(), 36);
        assert!(h.pairs().contains(&(13, 23)));
        assert!(h.pairs().iter().all(|&(p, q)| p + q == 36));
    }

    #[test]
    fn kunneth_matches_listed_expansion() {
        let (k, l) = (12i64, 14i64);
        let t = kunneth_tensor(&hodge_gl2(12).unwrap(), &hodge_gsp4(14).unwrap());
        let want = HodgeType::new(vec![
            (0, 2 * l + k - 4),
            (l - 2, l + k - 2),
            (l - 1, l + k - 3),
            (2 * l - 3, k - 1),
            (k - 1, 2 * l - 3),
            (l + k - 3, l - 1),
            (l + k - 2, l - 2),
            (2 * l + k - 4, 0),
        ])
        .unwrap();
        assert_eq!(t, want);
        assert_eq!(t, hodge_gsp6(14).unwrap());
    }

    #[test]
    fn kunneth_unit_and_rank() {
        let unit = HodgeType::new(vec![(0, 0)]).unwrap();
        let b = hodge_gsp4(10).unwrap();
        assert_eq!(kunneth_tensor(&unit, &b), b);
        assert_eq!(kunneth_tensor(&hodge_gl2(8).unwrap(), &b).rank(), 8);
    }

    #[test]
    fn impure_or_asymmetric_rejected() {
        assert_eq!(HodgeType::new(vec![(0, 1), (1, 1)]), Err(Error::ImpureHodge));
        assert_eq!(HodgeType::new(vec![]), Err(Error::ImpureHodge));
        assert!(HodgeType::new(vec![(0, 2), (2, 0), (0, 2)]).is_err());
    }

    #[test]
    fn degenerate_weights_keep_multiplicity() {
        // l = 2: (0,1), (0,1), (1,0), (1,0)
        let h = hodge_gsp4(2).unwrap();
        assert_eq!(h.pairs(), &[(0, 1), (0, 1), (1, 0), (1, 0)]);
    }

    #[test]
    fn solver_family() {
        let sols = weight_solver(8, 40);
        let want: Vec<_> = (10..=40)
            .step_by(2)
            .map(|kk| WeightTriple { k: kk - 2, l: kk, big_k: kk })
            .collect();
        assert_eq!(sols, want);
        assert!(!sols.contains(&WeightTriple { k: 14, l: 14, big_k: 14 }));
        assert!(weight_solver(20, 10).is_empty());
    }

    #[test]
    fn matching_weight_cases() {
        assert_eq!(matching_weight(12, 14).unwrap(), Some(14));
        assert_eq!(matching_weight(14, 14).unwrap(), None);
        assert_eq!(matching_weight(16, 14).unwrap(), None);
        assert_eq!(matching_weight(14, 16).unwrap(), Some(16));
    }
}
