//! Sparse site-local operators shared by all step routines.
//!
//! A [`LocalOp`] maps each internal basis state `|k, x⟩` to a short list of
//! `coeff * |k', x + shift⟩` terms. Applying one is a single pass over the
//! dense amplitude vector.

use num_complex::Complex;

use crate::lattice::Lattice;
use crate::{Real, Result, WalkError};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Term<T> {
    pub to: usize,
    pub shift: isize,
    pub coeff: T,
}

#[derive(Debug, Clone)]
pub(crate) struct LocalOp<T> {
    /// `terms[k]` is the image of internal state `k`.
    terms: Vec<Vec<Term<T>>>,
}

impl<T: Real> LocalOp<T> {
    pub fn new(terms: Vec<Vec<Term<T>>>) -> Self {
        Self { terms }
    }

    pub fn internal_dim(&self) -> usize {
        self.terms.len()
    }

    fn moves(&self) -> bool {
        self.terms.iter().flatten().any(|t| t.shift != 0)
    }

    /// Applies the operator to an internal-major single-particle vector.
    pub fn apply(&self, lattice: Lattice, amps: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let n = lattice.sites();
        let dim = self.internal_dim();
        debug_assert_eq!(amps.len(), dim * n);
        if self.moves() {
            for k in 0..dim {
                check_edges(lattice, &amps[k * n..(k + 1) * n])?;
            }
        }
        let mut out = vec![Complex::default(); amps.len()];
        for (k, terms) in self.terms.iter().enumerate() {
            let src = &amps[k * n..(k + 1) * n];
            for term in terms {
                let dst = &mut out[term.to * n..(term.to + 1) * n];
                shifted_axpy(dst, src, term.shift, term.coeff);
            }
        }
        Ok(out)
    }

    /// Applies the operator to one particle of a pair vector laid out
    /// `((c1 * 2 + c2) * n + s1) * n + s2`. Requires a two-state coin.
    pub fn apply_to_particle(
        &self,
        lattice: Lattice,
        amps: &[Complex<T>],
        first: bool,
    ) -> Result<Vec<Complex<T>>> {
        assert_eq!(
            self.internal_dim(),
            2,
            "pair operators act on a two-state coin"
        );
        let n = lattice.sites();
        debug_assert_eq!(amps.len(), 4 * n * n);
        let row = |c1: usize, c2: usize, s1: usize| ((c1 * 2 + c2) * n + s1) * n;
        if self.moves() {
            for (i, a) in amps.iter().enumerate() {
                let site = if first { (i / n) % n } else { i % n };
                if (site == 0 || site == n - 1) && *a != Complex::default() {
                    return Err(WalkError::BoundaryOverflow {
                        position: lattice.position(site),
                    });
                }
            }
        }
        let mut out = vec![Complex::default(); amps.len()];
        for c1 in 0..2 {
            for c2 in 0..2 {
                let own = if first { c1 } else { c2 };
                for term in &self.terms[own] {
                    let (t1, t2) = if first { (term.to, c2) } else { (c1, term.to) };
                    for s1 in 0..n {
                        let src = &amps[row(c1, c2, s1)..row(c1, c2, s1) + n];
                        if first {
                            let Some(d1) = s1.checked_add_signed(term.shift).filter(|&d| d < n)
                            else {
                                continue;
                            };
                            let dst = &mut out[row(t1, t2, d1)..row(t1, t2, d1) + n];
                            shifted_axpy(dst, src, 0, term.coeff);
                        } else {
                            let dst = &mut out[row(t1, t2, s1)..row(t1, t2, s1) + n];
                            shifted_axpy(dst, src, term.shift, term.coeff);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

fn check_edges<T: Real>(lattice: Lattice, component: &[Complex<T>]) -> Result<()> {
    let last = component.len() - 1;
    for site in [0, last] {
        if component[site] != Complex::default() {
            return Err(WalkError::BoundaryOverflow {
                position: lattice.position(site),
            });
        }
    }
    Ok(())
}

/// `dst[i + shift] += coeff * src[i]` over every index that stays in range.
fn shifted_axpy<T: Real>(dst: &mut [Complex<T>], src: &[Complex<T>], shift: isize, coeff: T) {
    let n = src.len() as isize;
    let lo = (-shift).max(0);
    let hi = (n - shift).min(n);
    for i in lo..hi {
        let a = src[i as usize];
        let d = &mut dst[(i + shift) as usize];
        *d = *d + a.scale(coeff);
    }
}
