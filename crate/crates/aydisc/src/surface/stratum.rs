use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Orders of the zeros and poles of an Abelian or quadratic differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumSignature {
    pub orders: Vec<i64>,
    pub quadratic: bool,
}

impl StratumSignature {
    pub fn abelian(orders: &[i64]) -> Self {
        Self { orders: orders.to_vec(), quadratic: false }
    }

    pub fn quadratic(orders: &[i64]) -> Self {
        Self { orders: orders.to_vec(), quadratic: true }
    }

    /// Genus from Σ orders = 4g − 4 (quadratic) or 2g − 2 (abelian).
    pub fn genus(&self) -> Result<i64> {
        let sum: i64 = self.orders.iter().sum();
        let (num, den) = if self.quadratic { (sum + 4, 4) } else { (sum + 2, 2) };
        if num < 0 || num % den != 0 {
            return Err(Error::InvalidSignature(format!("order sum {sum} is not admissible")));
        }
        if self.orders.iter().any(|&k| k < -1 || (!self.quadratic && k < 0)) {
            return Err(Error::InvalidSignature("orders below the allowed minimum".into()));
        }
        Ok(num / den)
    }
}

/// Lists like "1,1,-1x6", where "kxN" repeats k N times.
impl FromStr for StratumSignature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut orders = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, n) = match part.split_once(['x', '^']) {
                Some((k, n)) => (k, n.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?),
                None => (part, 1),
            };
            let k: i64 = k.trim().parse().map_err(|e: std::num::ParseIntError| Error::Parse(e.to_string()))?;
            orders.extend(std::iter::repeat_n(k, n));
        }
        if orders.is_empty() {
            return Err(Error::Parse("empty signature".into()));
        }
        Ok(Self { orders, quadratic: true })
    }
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(i64::to_string).collect();
        write!(f, "{}({})", if self.quadratic { "Q" } else { "H" }, parts.join(","))
    }
}

/// Parity of the spin structure of the orientation double cover of a
/// quadratic differential: ⌊|n₊₁ − n₋₁| / 4⌋ mod 2, where n±₁ counts orders
/// ≡ ±1 mod 4. All other orders must be ≡ 0 mod 4. The order sum is not
/// checked, so the formula also evaluates on inadmissible lists.
pub fn spin_parity(sig: &StratumSignature) -> Result<u8> {
    if !sig.quadratic {
        return Err(Error::InvalidSignature("spin formula needs a quadratic signature".into()));
    }
    let (mut plus, mut minus) = (0i64, 0i64);
    for &k in &sig.orders {
        match k.rem_euclid(4) {
            0 => {}
            1 => plus += 1,
            3 => minus += 1,
            _ => return Err(Error::FormulaInapplicable),
        }
    }
    Ok((((plus - minus).abs() / 4) % 2) as u8)
}

/// Complex dimension: 2g + n − 2 for quadratic, 2g + n − 1 for abelian strata.
pub fn stratum_dim(sig: &StratumSignature) -> Result<i64> {
    let g = sig.genus()?;
    let n = sig.orders.len() as i64;
    Ok(if sig.quadratic { 2 * g + n - 2 } else { 2 * g + n - 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spins() {
        let q: StratumSignature = "1,1,-1x6".parse().unwrap();
        assert_eq!(q.orders, vec![1, 1, -1, -1, -1, -1, -1, -1]);
        assert_eq!(spin_parity(&q), Ok(1));
        assert_eq!(spin_parity(&StratumSignature::quadratic(&[1, -1, 1, -1])), Ok(0));
        assert_eq!(spin_parity(&StratumSignature::quadratic(&[4, -1, -1, -1, -1, 1])), Ok(0));
        assert_eq!(spin_parity(&StratumSignature::quadratic(&[2, -1, -1])), Err(Error::FormulaInapplicable));
    }

    #[test]
    fn dimensions() {
        assert_eq!(stratum_dim(&"1,1,-1x6".parse().unwrap()), Ok(6));
        assert_eq!(stratum_dim(&StratumSignature::quadratic(&[1, 1, 1, 1])), Ok(6));
        assert_eq!(stratum_dim(&StratumSignature::abelian(&[2, 2])), Ok(7));
        assert!(stratum_dim(&StratumSignature::abelian(&[1])).is_err());
    }
}
