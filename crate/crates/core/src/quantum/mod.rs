//! Coset-state simulation of the CSS translation.
//!
//! Every state handled here is a uniform, phase-free superposition over an
//! affine subspace `offset + rowspace(generator)` of `F_q^n`, and every
//! operation is a change of basis on the labels of some subsystems. Both
//! preserve the class, so the simulation is exact linear algebra.

mod decoder;

use std::ops::Range;

use crate::codes::LinearScheme;
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg::{Matrix, Subspace};

pub use decoder::{
    available_subsystems, basis_recovery_check, brute_force_factorization, check_pattern,
    factorization_check, quantum_verdicts, synthesize_decoder, transcript_json, BRUTE_FORCE_CAP,
};

/// Named subsystems in coordinate order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsystemLayout {
    parts: Vec<(String, usize)>,
}

impl SubsystemLayout {
    pub fn new(parts: Vec<(String, usize)>) -> Result<Self> {
        for (i, (name, _)) in parts.iter().enumerate() {
            if parts[..i].iter().any(|(n, _)| n == name) {
                return Err(Error::LayoutMismatch(format!("subsystem {name} listed twice")));
            }
        }
        Ok(SubsystemLayout { parts })
    }

    /// `R` (message reference), `Q1..QN`, `B1..BNB` sized from the scheme.
    /// Without the reference when `with_reference` is false.
    pub fn for_scheme(scheme: &LinearScheme, with_reference: bool) -> Self {
        let s = &scheme.spec;
        let mut parts = Vec::new();
        if with_reference {
            parts.push(("R".to_string(), s.message_len()));
        }
        parts.extend((1..=s.params.n).map(|n| (format!("Q{n}"), s.kappa)));
        parts.extend((1..=s.params.nb).map(|i| (format!("B{i}"), s.sr_node_len())));
        SubsystemLayout { parts }
    }

    pub fn parts(&self) -> &[(String, usize)] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().map(|p| p.1).sum()
    }

    pub fn range(&self, name: &str) -> Result<Range<usize>> {
        let mut start = 0;
        for (n, len) in &self.parts {
            if n == name {
                return Ok(start..start + len);
            }
            start += len;
        }
        Err(Error::LayoutMismatch(format!("no subsystem named {name}")))
    }

    /// Coordinates of the listed subsystems, concatenated in the given order.
    pub fn coords(&self, names: &[String]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for n in names {
            out.extend(self.range(n)?);
        }
        Ok(out)
    }
}

/// `∝ Σ_{x ∈ offset + rowspace(generator)} |x⟩`, held canonically: the
/// generator is the RREF basis of the support's direction and the offset is
/// reduced against it. Equal states compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetState {
    layout: SubsystemLayout,
    space: Subspace,
    offset: Vec<Elem>,
}

impl CosetState {
    pub fn new(layout: SubsystemLayout, generator: &Matrix, offset: Vec<Elem>) -> Result<Self> {
        let n = layout.total();
        if generator.cols() != n || offset.len() != n {
            return Err(Error::LayoutMismatch(format!(
                "layout has {n} coordinates, generator {} and offset {}",
                generator.cols(),
                offset.len()
            )));
        }
        for &v in &offset {
            generator.field().check(v)?;
        }
        let space = generator.row_space();
        let offset = space.reduce(&offset);
        Ok(CosetState { layout, space, offset })
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn generator(&self) -> &Matrix {
        self.space.basis()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn offset(&self) -> &[Elem] {
        &self.offset
    }

    /// The support has `q^rank` elements.
    pub fn rank(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        let f = self.space.field();
        let d: Vec<Elem> = v.iter().zip(&self.offset).map(|(&a, &b)| f.sub(a, b)).collect();
        self.space.contains(&d)
    }
}

/// A basis permutation `|u⟩ ↦ |u M⟩` on the concatenated labels of
/// `targets`, everything else untouched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelUnitary {
    pub targets: Vec<String>,
    pub matrix: Matrix,
}

impl LabelUnitary {
    pub fn new(targets: Vec<String>, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.rank() != matrix.rows() {
            return Err(Error::NonInvertible);
        }
        Ok(LabelUnitary { targets, matrix })
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(LabelUnitary {
            targets: self.targets.clone(),
            matrix: self.matrix.inverse().map_err(|_| Error::NonInvertible)?,
        })
    }
}

/// Coset state of `R Q_1..Q_N B` for the maximally entangled message:
/// support `{(a, y(a, b, z), b)}` over all inputs.
///
/// Fails when `(a, b)` is not a function of the storage word, since the
/// encoder is then not an isometry.
pub fn css_encode_state(scheme: &LinearScheme) -> Result<CosetState> {
    let s = &scheme.spec;
    let f = scheme.field();
    let g = scheme.generator();
    let r = s.input_len();
    let m0 = s.message_len();
    let id = Matrix::identity(f, r);
    let pa = id.select_cols(&(0..m0).collect::<Vec<_>>())?;
    let pb = id.select_cols(&(m0..m0 + s.sr_len()).collect::<Vec<_>>())?;
    if Matrix::hstack(&[&g, &pa, &pb])?.rank() != g.rank() {
        return Err(Error::InfeasibleScheme(
            "message and SR are not determined by the storage word".into(),
        ));
    }
    let generator = Matrix::hstack(&[&pa, &g, &pb])?;
    let layout = SubsystemLayout::for_scheme(scheme, true);
    let n = layout.total();
    CosetState::new(layout, &generator, vec![0; n])
}

/// Coset state of `Q_1..Q_N B` for the basis message `|a0⟩`.
pub fn css_encode_basis_state(scheme: &LinearScheme, a0: &[Elem]) -> Result<CosetState> {
    let s = &scheme.spec;
    let f = scheme.field();
    let m0 = s.message_len();
    if a0.len() != m0 {
        return Err(Error::LengthMismatch(format!("message has {} dits, scheme expects {m0}", a0.len())));
    }
    for &v in a0 {
        f.check(v)?;
    }
    // reuse the isometry check
    css_encode_state(scheme)?;
    let g = scheme.generator();
    let r = s.input_len();
    let rest: Vec<usize> = (m0..r).collect();
    let pb = Matrix::identity(f, r).submatrix(&rest, &(m0..m0 + s.sr_len()).collect::<Vec<_>>())?;
    let generator = Matrix::hstack(&[&g.select_rows(&rest)?, &pb])?;
    let mut offset = scheme.a().vec_mul(a0)?;
    offset.resize(offset.len() + s.sr_len(), 0);
    CosetState::new(SubsystemLayout::for_scheme(scheme, false), &generator, offset)
}

pub fn apply_label_unitary(state: &CosetState, u: &LabelUnitary) -> Result<CosetState> {
    let coords = state.layout.coords(&u.targets)?;
    if u.matrix.rows() != coords.len() || u.matrix.cols() != coords.len() {
        return Err(Error::LayoutMismatch(format!(
            "{}x{} matrix on {} target coordinates",
            u.matrix.rows(),
            u.matrix.cols(),
            coords.len()
        )));
    }
    if u.matrix.rank() != coords.len() {
        return Err(Error::NonInvertible);
    }
    let transform = |v: &[Elem]| -> Result<Vec<Elem>> {
        let sub: Vec<Elem> = coords.iter().map(|&c| v[c]).collect();
        let image = u.matrix.vec_mul(&sub)?;
        let mut out = v.to_vec();
        for (&c, x) in coords.iter().zip(image) {
            out[c] = x;
        }
        Ok(out)
    };
    let g = state.generator();
    let rows = (0..g.rows()).map(|i| transform(g.row(i))).collect::<Result<Vec<_>>>()?;
    let generator = Matrix::from_rows_with_cols(g.field(), &rows, g.cols())?;
    CosetState::new(state.layout.clone(), &generator, transform(&state.offset)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{case2, fig1, Params};

    #[test]
    fn fig1_dimensions() {
        let s = fig1(2).unwrap();
        let st = css_encode_state(&s).unwrap();
        assert_eq!(st.rank(), 18);
        assert_eq!(st.layout().total(), 36);
    }

    #[test]
    fn case2_dimensions() {
        let s = case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap();
        let st = css_encode_state(&s).unwrap();
        assert_eq!(st.rank(), 4);
        assert_eq!(st.layout().total(), 8);
        assert_eq!(st.layout().range("Q2").unwrap(), 3..5);
        assert_eq!(st.layout().range("B1").unwrap(), 5..6);
    }

    #[test]
    fn zero_rate_state_has_no_reference() {
        let s = crate::codes::baseline(Params::new(4, 2, 0, 0).unwrap(), 2).unwrap();
        let st = css_encode_state(&s).unwrap();
        assert_eq!(st.layout().range("R").unwrap().len(), 0);
        assert_eq!(st.rank(), s.spec.input_len());
    }

    #[test]
    fn unitary_round_trip() {
        let s = case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap();
        let st = css_encode_state(&s).unwrap();
        let f = s.field();
        let m = Matrix::from_rows(f, &[[1, 3, 0], [0, 1, 0], [5, 0, 1]]).unwrap();
        let u = LabelUnitary::new(vec!["Q1".into(), "B2".into()], m).unwrap();
        let moved = apply_label_unitary(&st, &u).unwrap();
        assert_eq!(moved.rank(), st.rank());
        assert_ne!(moved, st);
        assert_eq!(apply_label_unitary(&moved, &u.inverse().unwrap()).unwrap(), st);
        let id = LabelUnitary::new(vec!["Q2".into()], Matrix::identity(f, 2)).unwrap();
        assert_eq!(apply_label_unitary(&st, &id).unwrap(), st);
    }

    #[test]
    fn singular_and_misfit_unitaries_rejected() {
        let s = case2(Params::new(2, 1, 3, 2).unwrap(), 8).unwrap();
        let f = s.field();
        let sing = Matrix::from_rows(f, &[[1, 1], [1, 1]]).unwrap();
        assert_eq!(LabelUnitary::new(vec!["Q1".into()], sing).unwrap_err(), Error::NonInvertible);
        let st = css_encode_state(&s).unwrap();
        let u = LabelUnitary::new(vec!["Q1".into()], Matrix::identity(f, 3)).unwrap();
        assert!(matches!(apply_label_unitary(&st, &u), Err(Error::LayoutMismatch(_))));
        let u = LabelUnitary::new(vec!["Q9".into()], Matrix::identity(f, 2)).unwrap();
        assert!(matches!(apply_label_unitary(&st, &u), Err(Error::LayoutMismatch(_))));
    }

    #[test]
    fn non_isometric_encoder_rejected() {
        // node stores only y0: SR is lost
        let f = crate::gf::Field::new(3).unwrap();
        let spec = crate::codes::CodeSpec {
            params: Params::new(1, 1, 1, 1).unwrap(),
            q: 3,
            kappa: 1,
            lambda0: crate::codes::ratio(1, 1),
            lambda_b: crate::codes::ratio(1, 1),
            l: 0,
        };
        let s = LinearScheme::new(
            spec,
            Matrix::from_rows(&f, &[[1]]).unwrap(),
            Matrix::zeros(&f, 1, 1),
            Matrix::zeros(&f, 0, 1),
        )
        .unwrap();
        assert!(matches!(css_encode_state(&s), Err(Error::InfeasibleScheme(_))));
    }
}
