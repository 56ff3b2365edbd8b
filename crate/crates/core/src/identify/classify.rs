//! The full pipeline: geometrisation, extension (Alt inputs), then recognition.

use crate::gmodule::GModule;
use crate::permgroup::GroupKind;

use super::extend::{alt_hypothesis, alt_threshold, extend_unchecked};
use super::geometrise::{first_geometrise, transposition_bracket_dim};
use super::recognise::{recognise_unchecked, screen};
use super::{ClassificationResult, IdentifyError, IdentifyOptions, Verdict};

fn sym_threshold(n: usize, d: usize) -> Option<String> {
    if n >= 7 || (n >= 5 && d + 2 == n) {
        None
    } else {
        Some(format!(
            "n = {n} is below the threshold n >= 7 (n = 5, 6 only at d = n - 2)"
        ))
    }
}

pub fn classify(
    m: &GModule,
    opts: &IdentifyOptions,
) -> Result<ClassificationResult, IdentifyError> {
    if let Some(why) = screen(m, opts).map_err(IdentifyError::at("screen"))? {
        return Ok(ClassificationResult::not_recognized(m, why));
    }
    let (n, d) = (m.n(), m.dim());
    if d >= n {
        return Ok(ClassificationResult::not_recognized(
            m,
            format!("d = {d} is not below n = {n}"),
        ));
    }
    let q = m.ring().char_value().unwrap_or(0);
    match m.group() {
        GroupKind::Sym => {
            if let Some(why) = sym_threshold(n, d) {
                return Ok(ClassificationResult::not_recognized(m, why));
            }
            classify_sym(m, opts)
        }
        GroupKind::Alt => {
            if let Some(why) = alt_threshold(n, q) {
                let mut r = ClassificationResult::not_recognized(m, why);
                if n == 6 {
                    r.notes.push(
                        "for n = 6 the lines L_(ij) are not well-defined (known counterexample)"
                            .into(),
                    );
                }
                return Ok(r);
            }
            if let Some(a) =
                alt_hypothesis(m, opts.exhaustive).map_err(IdentifyError::at("geometrise"))?
            {
                let why = format!("hypothesis [A_a, B_a] = 0 fails for a = {a}");
                return Ok(ClassificationResult::not_recognized(m, why));
            }
            let ext = extend_unchecked(m, opts).map_err(IdentifyError::at("extend"))?;
            let mut r = classify_sym(&ext.module, opts)?;
            // the sign character is trivial on Alt(n)
            r.verdict = match r.verdict {
                Verdict::SignTwistedRstd => Verdict::StandardRstd,
                Verdict::SignTwistedUstdCovered => Verdict::UstdCovered,
                v => v,
            };
            r.twists.retain(|t| t != "sign");
            r.source = r.source.map(|s| s.restrict_to_alt()).transpose()?;
            r.group = GroupKind::Alt;
            r.notes
                .push("Sym(n)-action reconstructed from the line system".into());
            r.notes.push(if ext.convention_vacuous {
                "q = 2: the extension is unique".into()
            } else {
                "extension sign convention: transpositions invert their lines".into()
            });
            r.extension = Some(ext.module);
            Ok(r)
        }
    }
}

fn classify_sym(
    m: &GModule,
    opts: &IdentifyOptions,
) -> Result<ClassificationResult, IdentifyError> {
    let p = first_geometrise(m, opts).map_err(IdentifyError::at("geometrise"))?;
    let t = p.apply(m)?;
    let mut r = recognise_unchecked(&t).map_err(IdentifyError::at("recognise"))?;
    if r.q == 0 && r.verdict == Verdict::UstdCovered && r.kernel_dim() == Some(0) {
        r.verdict = Verdict::StandardRstd;
        r.notes
            .push("over Q the center of ustd is 0, so rstd = ustd".into());
    }
    if r.q == 2 {
        let b = transposition_bracket_dim(&t)?;
        let ok = 2 * b <= r.d;
        r.notes.push(format!(
            "quadraticity 2b <= d with b = {b}: {}",
            if ok { "holds" } else { "fails" }
        ));
    }
    if p.sign {
        r.verdict = r.verdict.sign_twisted();
    }
    if p.outer {
        r.verdict = Verdict::OuterTwisted(Box::new(r.verdict));
    }
    r.source = r.source.map(|s| p.reapply(&s)).transpose()?;
    r.twists = p.twist_names();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::standard::{build_exceptional, build_rstd, outer_twist, ExceptionalTag};

    #[test]
    fn pipeline_examples() {
        let opts = IdentifyOptions::default();
        let a = build_rstd(10, &Ring::prime_field(2).unwrap())
            .unwrap()
            .restrict_to_alt()
            .unwrap();
        let r = classify(&a, &opts).unwrap();
        assert_eq!((r.verdict.clone(), r.d), (Verdict::StandardRstd, 8));
        assert!(r.verify_intertwiner(&a));

        let s = build_rstd(7, &Ring::prime_field(7).unwrap())
            .unwrap()
            .sign_twist()
            .unwrap();
        let r = classify(&s, &opts).unwrap();
        assert_eq!((r.verdict.clone(), r.d), (Verdict::SignTwistedRstd, 5));
        assert!(r.verify_intertwiner(&s));

        let x = build_exceptional(ExceptionalTag::Alt6Gf9AdjointDim3).unwrap();
        assert!(!classify(&x, &opts).unwrap().verdict.is_recognized());
    }

    #[test]
    fn outer_branch() {
        let opts = IdentifyOptions::default();
        let m = build_rstd(6, &Ring::prime_field(2).unwrap()).unwrap();
        assert_eq!(classify(&m, &opts).unwrap().verdict, Verdict::StandardRstd);
        let o = outer_twist(&m).unwrap();
        let r = classify(&o, &opts).unwrap();
        assert_eq!(r.verdict.to_string(), "OuterTwisted(StandardRstd)");
        assert!(r.verify_intertwiner(&o));
    }

    #[test]
    fn rational_round_trip() {
        let m = build_rstd(7, &Ring::rational()).unwrap();
        let r = classify(&m, &IdentifyOptions::default()).unwrap();
        assert_eq!(r.verdict, Verdict::StandardRstd);
        assert!(r.verify_intertwiner(&m));
    }
}
