//! On-disk certificate records.
//!
//! A record stores the rational certificate(s) for one identity together
//! with a fingerprint of the statement they certify, so a later `verify`
//! run can refuse to check a certificate against the wrong identity.
//! Serialization is plain JSON with string-encoded rationals; the files
//! are meant to be diffed, mailed, and checked into repositories.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use wz_algebra::{MultiPoly, Rat, RatFunc};
use wz_engine::{Certificate, Convention, MultiCert};

use crate::ast::IdentityAst;
use crate::error::DeskError;

/// Bumped only when the JSON layout changes incompatibly.
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct TermRecord {
    pub exponents: Vec<u32>,
    pub coefficient: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PolyRecord {
    pub vars: Vec<String>,
    pub terms: Vec<TermRecord>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct RatFuncRecord {
    pub num: PolyRecord,
    pub den: PolyRecord,
}

/// One certificate file: the fingerprint of the statement, the pairing
/// convention the certificate was checked under, and `r` rational
/// functions (one per summation variable).
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct CertRecord {
    pub format_version: u32,
    pub identity_hash: String,
    pub convention: String,
    pub r: usize,
    pub certificates: Vec<RatFuncRecord>,
    pub produced_by: String,
}

/// SHA-256 of the canonical statement, in lowercase hex.
pub fn identity_hash(statement: &str) -> String {
    let digest = Sha256::digest(statement.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// The first twelve hex digits, enough for run reports.
pub fn short_hash(hash: &str) -> &str {
    &hash[..hash.len().min(12)]
}

fn poly_record(p: &MultiPoly) -> PolyRecord {
    let terms = p
        .iter_terms()
        .map(|(m, c)| TermRecord {
            exponents: m.0.clone(),
            coefficient: c.to_string(),
        })
        .collect();
    PolyRecord {
        vars: p.vars().to_vec(),
        terms,
    }
}

fn poly_of_record(rec: &PolyRecord) -> Result<MultiPoly, DeskError> {
    let mut terms = Vec::with_capacity(rec.terms.len());
    for t in &rec.terms {
        if t.exponents.len() != rec.vars.len() {
            return Err(DeskError::Record(format!(
                "a term lists {} exponents for {} variables",
                t.exponents.len(),
                rec.vars.len()
            )));
        }
        let c: Rat = t.coefficient.parse().map_err(|_| {
            DeskError::Record(format!("unreadable coefficient `{}`", t.coefficient))
        })?;
        terms.push((c, t.exponents.clone()));
    }
    let vars: Vec<&str> = rec.vars.iter().map(String::as_str).collect();
    Ok(MultiPoly::from_terms(&vars, &terms))
}

fn ratfunc_record(r: &RatFunc) -> RatFuncRecord {
    RatFuncRecord {
        num: poly_record(r.num()),
        den: poly_record(r.den()),
    }
}

fn ratfunc_of_record(rec: &RatFuncRecord) -> Result<RatFunc, DeskError> {
    let num = poly_of_record(&rec.num)?;
    let den = poly_of_record(&rec.den)?;
    RatFunc::new(num, den)
        .map_err(|e| DeskError::Record(format!("bad rational function: {e}")))
}

impl CertRecord {
    pub fn from_certificate(cert: &Certificate, statement: &str) -> CertRecord {
        CertRecord {
            format_version: FORMAT_VERSION,
            identity_hash: identity_hash(statement),
            convention: cert.convention.label().to_string(),
            r: cert.rs.len(),
            certificates: cert.rs.iter().map(ratfunc_record).collect(),
            produced_by: produced_by(),
        }
    }

    pub fn from_multi(cert: &MultiCert, statement: &str) -> CertRecord {
        CertRecord {
            format_version: FORMAT_VERSION,
            identity_hash: identity_hash(statement),
            convention: cert.convention.label().to_string(),
            r: cert.rs.len(),
            certificates: cert.rs.iter().map(ratfunc_record).collect(),
            produced_by: produced_by(),
        }
    }

    pub fn to_certificate(&self) -> Result<Certificate, DeskError> {
        self.validate()?;
        if self.certificates.len() != 1 {
            return Err(DeskError::Record(format!(
                "expected a single-sum certificate, found {} components",
                self.certificates.len()
            )));
        }
        let convention = self.parse_convention()?;
        let r = ratfunc_of_record(&self.certificates[0])?;
        Ok(Certificate::with_convention(r, convention))
    }

    pub fn to_multi(&self) -> Result<MultiCert, DeskError> {
        self.validate()?;
        let convention = self.parse_convention()?;
        let rs = self
            .certificates
            .iter()
            .map(ratfunc_of_record)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MultiCert { rs, convention })
    }

    fn parse_convention(&self) -> Result<Convention, DeskError> {
        Convention::from_label(&self.convention).ok_or_else(|| {
            DeskError::Record(format!(
                "unknown pairing convention `{}`",
                self.convention
            ))
        })
    }

    fn validate(&self) -> Result<(), DeskError> {
        if self.format_version != FORMAT_VERSION {
            return Err(DeskError::Record(format!(
                "format version {} is not supported (this tool writes version {})",
                self.format_version, FORMAT_VERSION
            )));
        }
        if self.r != self.certificates.len() {
            return Err(DeskError::Record(format!(
                "r = {} but {} certificates are listed",
                self.r,
                self.certificates.len()
            )));
        }
        Ok(())
    }

    /// Does this record fingerprint the given identity?
    pub fn matches(&self, ast: &IdentityAst) -> bool {
        self.identity_hash == identity_hash(&ast.canonical_statement())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<CertRecord, DeskError> {
        serde_json::from_str(text)
            .map_err(|e| DeskError::Record(format!("unreadable JSON: {e}")))
    }
}

fn produced_by() -> String {
    format!("ekhad {}", env!("CARGO_PKG_VERSION"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_identity;
    use wz_algebra::rat;

    fn halved_row_certificate() -> Certificate {
        // R = -k / (2 (n - k + 1))
        let num = -MultiPoly::var("k");
        let den = MultiPoly::from_terms(
            &["k", "n"],
            &[
                (rat(-2, 1), vec![1, 0]),
                (rat(2, 1), vec![0, 1]),
                (rat(2, 1), vec![0, 0]),
            ],
        );
        Certificate::single(RatFunc::new(num, den).unwrap())
    }

    #[test]
    fn a_certificate_survives_the_round_trip() {
        let ast = parse_identity("sum k: binomial(n, k) / 2^n == 1").unwrap();
        let cert = halved_row_certificate();
        let rec = CertRecord::from_certificate(&cert, &ast.canonical_statement());
        let back = CertRecord::from_json(&rec.to_json()).unwrap();
        assert_eq!(back, rec);
        let cert2 = back.to_certificate().unwrap();
        assert_eq!(cert2.r().to_string(), cert.r().to_string());
        assert_eq!(cert2.convention, cert.convention);
        assert!(back.matches(&ast));
    }

    #[test]
    fn fingerprints_change_with_the_statement() {
        let a = identity_hash("sum k: binomial(n, k) / 2^n == 1");
        let b = identity_hash("sum k: binomial(n, k) / 2^n == 2");
        assert_ne!(a, b);
        assert_eq!(a.len(), 64);
        assert_eq!(short_hash(&a).len(), 12);
    }

    #[test]
    fn tampered_records_are_refused() {
        let ast = parse_identity("sum k: binomial(n, k) / 2^n == 1").unwrap();
        let cert = halved_row_certificate();
        let rec = CertRecord::from_certificate(&cert, &ast.canonical_statement());

        let mut wrong_r = rec.clone();
        wrong_r.r = 2;
        assert!(wrong_r.to_certificate().is_err());

        let mut wrong_version = rec.clone();
        wrong_version.format_version = 99;
        assert!(wrong_version.to_certificate().is_err());

        let mut wrong_convention = rec.clone();
        wrong_convention.convention = "sideways".into();
        assert!(wrong_convention.to_certificate().is_err());

        let mut wrong_coeff = rec;
        wrong_coeff.certificates[0].num.terms[0].coefficient = "one".into();
        assert!(wrong_coeff.to_certificate().is_err());
    }

    #[test]
    fn malformed_json_is_a_record_error() {
        let err = CertRecord::from_json("{ not json").unwrap_err();
        assert!(matches!(err, DeskError::Record(_)));
    }
}
