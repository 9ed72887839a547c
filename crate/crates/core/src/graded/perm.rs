use super::Degree;
use crate::error::{Error, Result};

/// A permutation of `0..k`. Acting on a sequence `s` it produces `t[m] = s[p[m]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &i in &images {
            if i >= k || seen[i] {
                return Err(Error::Shape(format!("{images:?} is not a permutation of 0..{k}")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds from images written in `1..=k`.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::Shape("one-based permutation contains 0".into()));
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    /// Exchanges positions `a` and `b`.
    pub fn transposition(k: usize, a: usize, b: usize) -> Result<Self> {
        if a >= k || b >= k {
            return Err(Error::Shape(format!("transposition ({a} {b}) out of range for {k}")));
        }
        let mut v: Vec<usize> = (0..k).collect();
        v.swap(a, b);
        Ok(Permutation(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn image(&self, m: usize) -> usize {
        self.0[m]
    }

    pub fn apply<T: Clone>(&self, seq: &[T]) -> Result<Vec<T>> {
        if seq.len() != self.0.len() {
            return Err(Error::Shape(format!(
                "permutation of {} letters applied to {} items",
                self.0.len(),
                seq.len()
            )));
        }
        Ok(self.0.iter().map(|&i| seq[i].clone()).collect())
    }

    /// `self.compose(sigma)` acts as `sigma` first, then `self`.
    pub fn compose(&self, sigma: &Permutation) -> Result<Permutation> {
        if self.len() != sigma.len() {
            return Err(Error::Shape("composing permutations of different sizes".into()));
        }
        Ok(Permutation(self.0.iter().map(|&m| sigma.0[m]).collect()))
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (m, &i) in self.0.iter().enumerate() {
            inv[i] = m;
        }
        Permutation(inv)
    }

    /// Block sum: `self` on the first letters, `other` on the rest.
    pub fn block_sum(&self, other: &Permutation) -> Permutation {
        let k = self.len();
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|i| i + k));
        Permutation(v)
    }

    /// Ordinary sign.
    pub fn sign(&self) -> i64 {
        parity_sign(&self.0)
    }
}

fn parity_sign(seq: &[usize]) -> i64 {
    let mut inversions = 0usize;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign of the permutation restricted to odd-degree entries.
pub fn graded_sign(rho: &Permutation, degrees: &[Degree]) -> Result<i64> {
    if degrees.len() != rho.len() {
        return Err(Error::Shape(format!(
            "{} degrees for a permutation of {} letters",
            degrees.len(),
            rho.len()
        )));
    }
    let parities = degrees.iter().map(|d| d.parity()).collect::<Result<Vec<_>>>()?;
    Ok(graded_sign_parities(rho.images(), &parities))
}

/// Same as [`graded_sign`] but on raw parities; `images[m]` is the source position of target slot `m`.
pub(crate) fn graded_sign_parities(images: &[usize], parities: &[u8]) -> i64 {
    let odd: Vec<usize> = images.iter().copied().filter(|&i| parities[i] % 2 == 1).collect();
    parity_sign(&odd)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degs(v: &[i64]) -> Vec<Degree> {
        v.iter().map(|&d| Degree::integer(d)).collect()
    }

    #[test]
    fn trivial_signs() {
        let id = Permutation::identity(3);
        assert_eq!(graded_sign(&id, &degs(&[1, 2, 1])).unwrap(), 1);
        let t = Permutation::transposition(2, 0, 1).unwrap();
        assert_eq!(graded_sign(&t, &degs(&[1, 1])).unwrap(), -1);
        assert_eq!(graded_sign(&t, &degs(&[2, 1])).unwrap(), 1);
        let c = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(graded_sign(&c, &degs(&[1, 1, 1])).unwrap(), 1);
    }

    #[test]
    fn odd_modulus_is_rejected() {
        let t = Permutation::identity(1);
        assert!(matches!(
            graded_sign(&t, &[Degree::new(1, 3)]),
            Err(Error::InvalidGrading(_))
        ));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::from_one_based(&[0, 1]).is_err());
        assert!(Permutation::identity(2).apply(&[1, 2, 3]).is_err());
    }

    #[test]
    fn compose_acts_right_to_left() {
        let rho = Permutation::from_one_based(&[2, 3, 1]).unwrap();
        let sigma = Permutation::from_one_based(&[2, 1, 3]).unwrap();
        let s = ['a', 'b', 'c'];
        let lhs = rho.compose(&sigma).unwrap().apply(&s).unwrap();
        let rhs = rho.apply(&sigma.apply(&s).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(rho.compose(&rho.inverse()).unwrap(), Permutation::identity(3));
    }
}
