use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One eigenvalue of a spectrum set together with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry<W> {
    pub value: Complex64,
    pub witness: W,
}

/// A set of complex eigenvalues, multiplicities discarded.
///
/// Values closer than `dedup_tol · max(1, max |λ|)` are single-linkage
/// clustered. Each cluster keeps the member with the smallest witness, so the
/// stored value is always one that its witness actually produced.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSet<W = ()> {
    entries: Vec<SpectrumEntry<W>>,
    dedup_tol: f64,
}

fn cmp_value(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

impl SpectrumSet<()> {
    pub fn from_values(values: impl IntoIterator<Item = Complex64>, dedup_tol: f64) -> Self {
        Self::from_entries(values.into_iter().map(|value| SpectrumEntry { value, witness: () }).collect(), dedup_tol)
    }
}

impl<W: Clone + Ord> SpectrumSet<W> {
    pub fn from_entries(mut raw: Vec<SpectrumEntry<W>>, dedup_tol: f64) -> Self {
        raw.sort_by(|a, b| cmp_value(&a.value, &b.value).then_with(|| a.witness.cmp(&b.witness)));
        let scale = raw.iter().map(|e| e.value.norm()).fold(1.0, f64::max);
        let threshold = dedup_tol * scale;

        let mut parent: Vec<usize> = (0..raw.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..raw.len() {
            for j in (0..i).rev() {
                if raw[i].value.re - raw[j].value.re > threshold {
                    break;
                }
                if (raw[i].value - raw[j].value).norm() <= threshold {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }

        let mut best: Vec<Option<usize>> = vec![None; raw.len()];
        for i in 0..raw.len() {
            let root = find(&mut parent, i);
            match best[root] {
                Some(b) if raw[b].witness <= raw[i].witness => {}
                _ => best[root] = Some(i),
            }
        }
        let mut entries: Vec<SpectrumEntry<W>> = best.into_iter().flatten().map(|i| raw[i].clone()).collect();
        entries.sort_by(|a, b| cmp_value(&a.value, &b.value));
        // Real parts within the threshold count as equal, so conjugate pairs
        // come out in the same order whatever the rounding of their real parts.
        let mut column = 0usize;
        let mut keyed: Vec<(usize, SpectrumEntry<W>)> = Vec::with_capacity(entries.len());
        for (i, e) in entries.into_iter().enumerate() {
            if i > 0 && e.value.re - keyed[i - 1].1.value.re > threshold {
                column += 1;
            }
            keyed.push((column, e));
        }
        keyed.sort_by(|(ca, a), (cb, b)| ca.cmp(cb).then(a.value.im.total_cmp(&b.value.im)));
        let entries = keyed.into_iter().map(|(_, e)| e).collect();
        SpectrumSet { entries, dedup_tol }
    }
}

impl<W> SpectrumSet<W> {
    pub fn entries(&self) -> &[SpectrumEntry<W>] {
        &self.entries
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dedup_tol(&self) -> f64 {
        self.dedup_tol
    }

    /// `max(1, max |λ|)`.
    pub fn scale(&self) -> f64 {
        self.entries.iter().map(|e| e.value.norm()).fold(1.0, f64::max)
    }

    /// Whether some stored value lies within `tol · scale` of `z`.
    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        let threshold = tol * self.scale().max(z.norm());
        self.entries.iter().any(|e| (e.value - z).norm() <= threshold)
    }

    pub fn is_subset_of<V>(&self, other: &SpectrumSet<V>, tol: f64) -> bool {
        self.entries.iter().all(|e| other.contains(e.value, tol))
    }

    pub fn set_eq<V>(&self, other: &SpectrumSet<V>, tol: f64) -> bool {
        self.is_subset_of(other, tol) && other.is_subset_of(self, tol)
    }

    pub fn max_modulus(&self) -> f64 {
        self.entries.iter().map(|e| e.value.norm()).fold(0.0, f64::max)
    }

    /// An entry of maximal modulus. Among values within the dedup tolerance
    /// of the maximum, one with nonnegative imaginary part is preferred, then
    /// the largest real part.
    pub fn max_modulus_entry(&self) -> Option<&SpectrumEntry<W>> {
        let rho = self.max_modulus();
        let threshold = self.dedup_tol * self.scale();
        self.entries.iter().filter(|e| rho - e.value.norm() <= threshold).max_by(|a, b| {
            (a.value.im >= -threshold)
                .cmp(&(b.value.im >= -threshold))
                .then(a.value.re.total_cmp(&b.value.re))
                .then(b.value.im.abs().total_cmp(&a.value.im.abs()))
        })
    }

    /// Values whose imaginary part is within `tol · scale` of zero.
    pub fn real_values(&self, tol: f64) -> Vec<f64> {
        let threshold = tol * self.scale();
        self.entries.iter().filter(|e| e.value.im.abs() <= threshold).map(|e| e.value.re).collect()
    }

    pub fn is_conjugate_closed(&self, tol: f64) -> bool {
        self.entries.iter().all(|e| self.contains(e.value.conj(), tol))
    }

    /// Minimum distance between stored values, `∞` for fewer than two.
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                best = best.min((a.value - b.value).norm());
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn clusters_near_duplicates() {
        let s = SpectrumSet::from_values([c(1.0, 0.0), c(1.0 + 1e-12, 0.0), c(3.0, 0.0), c(3.0, 1e-10)], 1e-8);
        assert_eq!(s.len(), 2);
        assert!(s.min_separation() > 1e-8 * s.scale());
    }

    #[test]
    fn single_linkage_chains() {
        // Each step is below the threshold, the ends are not.
        let step = 0.9e-8;
        let s = SpectrumSet::from_values((0..5).map(|i| c(i as f64 * step, 0.0)), 1e-8);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn witness_minimum_represents_cluster() {
        let entries = vec![
            SpectrumEntry { value: c(2.0 + 1e-13, 0.0), witness: 1u32 },
            SpectrumEntry { value: c(2.0, 0.0), witness: 5u32 },
        ];
        let s = SpectrumSet::from_entries(entries, 1e-8);
        assert_eq!(s.entries()[0].witness, 1);
        assert_eq!(s.entries()[0].value, c(2.0 + 1e-13, 0.0));
    }

    #[test]
    fn max_modulus_prefers_upper_half_plane() {
        let s = SpectrumSet::from_values([c(0.0, -2.0), c(0.0, 2.0), c(1.0, 0.0)], 1e-8);
        assert_eq!(s.max_modulus_entry().unwrap().value, c(0.0, 2.0));
        assert!(s.is_conjugate_closed(1e-9));
    }
}
