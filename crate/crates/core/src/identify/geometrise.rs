//! First Geometrisation: a faithful Sym(n)-module of dimension `n - 2` satisfies the
//! recognition hypothesis after at most a sign twist, or (n = 6, q = 2) an outer twist.

use std::fmt;

use crate::gmodule::GModule;
use crate::linalg::image;
use crate::permgroup::{outer_automorphism_sym6, outer_automorphism_sym6_inverse, GroupKind, Perm};

use super::recognise::recognition_hypothesis;
use super::{IdentifyError, IdentifyOptions};

/// Twists to undo before recognition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Prescription {
    pub sign: bool,
    pub outer: bool,
}

impl Prescription {
    pub const NONE: Prescription = Prescription {
        sign: false,
        outer: false,
    };

    pub fn is_none(&self) -> bool {
        !self.sign && !self.outer
    }

    /// The module with the twists removed: `sgn ⊗ m` and/or `m ∘ φ⁻¹`.
    pub fn apply(&self, m: &GModule) -> Result<GModule, IdentifyError> {
        let mut out = m.clone();
        if self.sign {
            out = out.sign_twist()?;
        }
        if self.outer {
            out = out.compose_with(&outer_automorphism_sym6_inverse()?.images)?;
        }
        Ok(out)
    }

    /// The inverse operation, used to carry a model module back to the input's twists.
    pub fn reapply(&self, m: &GModule) -> Result<GModule, IdentifyError> {
        let mut out = m.clone();
        if self.outer {
            out = out.compose_with(&outer_automorphism_sym6()?.images)?;
        }
        if self.sign {
            out = out.sign_twist()?;
        }
        Ok(out)
    }

    pub fn twist_names(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.outer {
            v.push("outer".to_string());
        }
        if self.sign {
            v.push("sign".to_string());
        }
        v
    }
}

impl fmt::Display for Prescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.outer, self.sign) {
            (false, false) => f.write_str("none"),
            (false, true) => f.write_str("sign"),
            (true, false) => f.write_str("outer"),
            (true, true) => f.write_str("outer+sign"),
        }
    }
}

/// `dim B_(1 2)`, the quantity b of the quadraticity bound `2b <= d` in characteristic 2.
pub fn transposition_bracket_dim(m: &GModule) -> Result<usize, IdentifyError> {
    Ok(image(&m.ad(&Perm::transposition(m.n(), 1, 2))?)?.dim())
}

pub fn first_geometrise(
    m: &GModule,
    opts: &IdentifyOptions,
) -> Result<Prescription, IdentifyError> {
    if m.group() != GroupKind::Sym {
        return Err(IdentifyError::Precondition(
            "geometrisation needs a Sym(n)-module".into(),
        ));
    }
    if !m.ring().is_field() {
        return Err(IdentifyError::Precondition(format!(
            "ring {} is not a field",
            m.ring()
        )));
    }
    if !m.is_faithful()? {
        return Err(IdentifyError::Precondition("module is not faithful".into()));
    }
    let (n, d) = (m.n(), m.dim());
    let bound = n.saturating_sub(2);
    if d < bound {
        return Err(IdentifyError::DimensionTooSmall { d, bound });
    }
    let q = m.ring().char_value().unwrap_or(0);
    let mut candidates = vec![Prescription::NONE];
    if q != 2 {
        candidates.push(Prescription {
            sign: true,
            outer: false,
        });
    }
    if n == 6 && q == 2 {
        candidates.push(Prescription {
            sign: false,
            outer: true,
        });
    }
    let mut passing = Vec::new();
    for p in candidates {
        let t = p.apply(m)?;
        if recognition_hypothesis(&t, opts.exhaustive)?.is_none() {
            passing.push((p, transposition_bracket_dim(&t)?));
        }
    }
    // several branches can only pass together when the bound separates them
    passing.sort_by_key(|&(_, b)| 2 * b > d);
    match passing.first() {
        Some(&(p, _)) => Ok(p),
        None => Err(IdentifyError::NoBranchApplies(format!(
            "n = {n}, q = {q}, d = {d}: no twist makes [S'_t, B_t] vanish"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::standard::{build_rstd, outer_twist};

    #[test]
    fn prescriptions() {
        let opts = IdentifyOptions::default();
        let gf2 = Ring::prime_field(2).unwrap();
        let m = build_rstd(8, &gf2).unwrap();
        assert_eq!(first_geometrise(&m, &opts).unwrap(), Prescription::NONE);
        let s = build_rstd(9, &Ring::prime_field(3).unwrap())
            .unwrap()
            .sign_twist()
            .unwrap();
        assert_eq!(first_geometrise(&s, &opts).unwrap().to_string(), "sign");
        let o = outer_twist(&build_rstd(6, &gf2).unwrap()).unwrap();
        let p = first_geometrise(&o, &opts).unwrap();
        assert_eq!(p.to_string(), "outer");
        assert_eq!(p.reapply(&p.apply(&o).unwrap()).unwrap(), o);
    }
}
