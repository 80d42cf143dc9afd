use std::cmp::Ordering;
use std::fmt;

pub const MAX_VARS: usize = 12;

/// Exponent vector together with its weighted degree.
///
/// The weight is carried along so that comparisons never need the ring; it
/// is kept in sync by every constructor and by multiplication/division.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    weight: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        weight: 0,
    };

    pub fn new(exps: &[u32], weights: &[i32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        let mut e = [0u16; MAX_VARS];
        let mut w = 0;
        for (i, &x) in exps.iter().enumerate() {
            e[i] = u16::try_from(x).expect("exponent overflow");
            w += x as i32 * weights[i];
        }
        Monomial { exps: e, weight: w }
    }

    pub fn var(i: usize, weight: i32) -> Self {
        let mut e = [0u16; MAX_VARS];
        e[i] = 1;
        Monomial { exps: e, weight }
    }

    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    /// Plain exponent sum, ignoring weights.
    pub fn total_exp(&self) -> u32 {
        self.exps.iter().map(|&x| x as u32).sum()
    }

    /// Exponent sum over the variable range `range`.
    pub fn partial_exp(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&x| x as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        Monomial {
            exps: e,
            weight: self.weight + other.weight,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.weight <= other.weight && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.exps;
        for (a, b) in e.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        Some(Monomial {
            exps: e,
            weight: other.weight - self.weight,
        })
    }

    pub fn lcm(&self, other: &Monomial, weights: &[i32]) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        let mut w = 0;
        for i in 0..MAX_VARS {
            e[i] = self.exps[i].max(other.exps[i]);
            if e[i] > 0 {
                w += e[i] as i32 * weights[i];
            }
        }
        Monomial { exps: e, weight: w }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Graded reverse lexicographic comparison (weighted degree first).
    #[inline]
    pub fn cmp_degrevlex(&self, other: &Monomial) -> Ordering {
        match self.weight.cmp(&other.weight) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            if self.exps[i] != other.exps[i] {
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }

    /// Lexicographic comparison of exponent vectors; used for tie-breaking.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = names.get(i).cloned().unwrap_or_else(|| format!("v{i}"));
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&[]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_degrevlex(other)
    }
}

/// All exponent vectors in `nvars` variables of weighted degree `deg`.
pub fn monomials_of_degree(weights: &[i32], deg: i32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if deg < 0 {
        return out;
    }
    let n = weights.len();
    let mut exps = vec![0u32; n];
    fn rec(i: usize, rem: i32, weights: &[i32], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if rem == 0 {
                out.push(Monomial::new(exps, weights));
            }
            return;
        }
        let w = weights[i];
        let mut e = 0;
        while e * w <= rem {
            exps[i] = e as u32;
            rec(i + 1, rem - e * w, weights, exps, out);
            e += 1;
        }
        exps[i] = 0;
    }
    if n == 0 {
        if deg == 0 {
            out.push(Monomial::ONE);
        }
        return out;
    }
    rec(0, deg, weights, &mut exps, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_basics() {
        let w = [1, 1, 1];
        let x2 = Monomial::new(&[2, 0, 0], &w);
        let xy = Monomial::new(&[1, 1, 0], &w);
        let y2 = Monomial::new(&[0, 2, 0], &w);
        let xz = Monomial::new(&[1, 0, 1], &w);
        assert!(x2 > xy && xy > y2 && y2 > xz);
        assert_eq!(x2.lcm(&xy, &w), Monomial::new(&[2, 1, 0], &w));
        assert_eq!(
            xy.quotient_of(&x2.lcm(&xy, &w)),
            Some(Monomial::new(&[1, 0, 0], &w))
        );
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(monomials_of_degree(&[1, 1], 3).len(), 4);
        assert_eq!(monomials_of_degree(&[1, 2], 4).len(), 3);
        assert_eq!(monomials_of_degree(&[], 0).len(), 1);
        assert_eq!(monomials_of_degree(&[1, 1, 1], 2).len(), 6);
    }
}
