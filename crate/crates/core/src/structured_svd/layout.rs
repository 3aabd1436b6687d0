//! Block layout shared by every class: columns are ordered
//! `[ν | μ | δ | ν | μ | η]`, where the first ν+μ columns pair with the
//! ν+μ columns after the δ block, and δ/η hold single σ = 1 triplets.

use num_complex::Complex64;

use super::{Counts, SingleTag, TripletBlock};
use crate::kernel::{ComplexMatrix, I, ONE};
use crate::structures::StructureClass;

/// Column index of the partner of paired column `j < ν+μ`.
pub fn partner(counts: &Counts, j: usize) -> usize {
    j + counts.nu + counts.mu + counts.delta
}

/// Column indices holding single triplets, δ block first.
pub fn single_positions(counts: &Counts) -> Vec<usize> {
    let p = counts.nu + counts.mu;
    (p..p + counts.delta)
        .chain(2 * p + counts.delta..2 * p + counts.delta + counts.eta)
        .collect()
}

/// Splits single tags into the δ and η diagonals.
pub fn split_singles(tags: &[SingleTag], delta: usize) -> (Vec<SingleTag>, Vec<SingleTag>) {
    (tags[..delta].to_vec(), tags[delta..].to_vec())
}

/// `diag(S, I_μ, I_δ, S⁻¹, I_μ, I_η)` as a list; `s` holds the ν values.
pub fn sigma_layout(counts: &Counts, s: &[f64]) -> Vec<f64> {
    assert_eq!(s.len(), counts.nu);
    let mut sigma = Vec::with_capacity(counts.n());
    sigma.extend_from_slice(s);
    sigma.extend(std::iter::repeat_n(1.0, counts.mu + counts.delta));
    sigma.extend(s.iter().map(|x| 1.0 / x));
    sigma.extend(std::iter::repeat_n(1.0, counts.mu + counts.eta));
    sigma
}

/// Coupling matrix T of the class, so that `U = V·T` (similarity classes)
/// or `U = V̄·T` (con classes).
pub fn coupling_matrix(
    class: StructureClass,
    counts: &Counts,
    d: &[SingleTag],
    e: &[SingleTag],
) -> ComplexMatrix {
    let n = counts.n();
    let mut t = ComplexMatrix::zeros(n, n);
    let skew = matches!(
        class,
        StructureClass::SkewInvolutory | StructureClass::SkewConinvolutory
    );
    for j in 0..counts.nu + counts.mu {
        let p = partner(counts, j);
        t[(p, j)] = ONE;
        t[(j, p)] = if skew { -ONE } else { ONE };
    }
    let diag_scale = if class == StructureClass::SkewInvolutory { I } else { ONE };
    for (pos, tag) in single_positions(counts).into_iter().zip(d.iter().chain(e)) {
        t[(pos, pos)] = diag_scale * tag.value();
    }
    t
}

/// Triplet blocks in layout order: pairs, then singles.
pub fn blocks(counts: &Counts, s: &[f64], singles: &[SingleTag]) -> Vec<TripletBlock> {
    let mut out = Vec::with_capacity(counts.nu + counts.mu + singles.len());
    for (j, &sigma) in s.iter().enumerate() {
        out.push(TripletBlock::ReciprocalPair {
            sigma,
            columns: (j, partner(counts, j)),
        });
    }
    for j in counts.nu..counts.nu + counts.mu {
        out.push(TripletBlock::PairedOne {
            columns: (j, partner(counts, j)),
        });
    }
    for (column, tag) in single_positions(counts).into_iter().zip(singles) {
        out.push(TripletBlock::SingleOne { tag: *tag, column });
    }
    out
}

pub(crate) fn tag_value_list(tags: &[SingleTag]) -> Vec<Complex64> {
    tags.iter().map(SingleTag::value).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_positions() {
        let c = Counts::new(2, 1, 3, 2, 1);
        assert_eq!((c.delta, c.eta), (2, 1));
        assert_eq!(c.n(), 9);
        assert_eq!(partner(&c, 0), 5);
        assert_eq!(partner(&c, 2), 7);
        assert_eq!(single_positions(&c), vec![3, 4, 8]);
        assert_eq!(
            sigma_layout(&c, &[4.0, 2.0]),
            vec![4.0, 2.0, 1.0, 1.0, 1.0, 0.25, 0.5, 1.0, 1.0]
        );
    }

    #[test]
    fn coupling_is_involutory_for_signs() {
        let c = Counts::new(2, 1, 3, 2, 1);
        let tags = [SingleTag::Sign(1), SingleTag::Sign(-1), SingleTag::Sign(1)];
        let (d, e) = split_singles(&tags, c.delta);
        let t = coupling_matrix(StructureClass::Involutory, &c, &d, &e);
        assert_eq!(t.matmul(&t), ComplexMatrix::identity(9));
        let ts = coupling_matrix(StructureClass::SkewInvolutory, &c, &d, &e);
        assert_eq!(ts.matmul(&ts), ComplexMatrix::identity(9).scale_real(-1.0));
    }
}
