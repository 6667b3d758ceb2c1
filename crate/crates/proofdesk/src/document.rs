//! Proof documents: the human-readable output of a verification run.
//!
//! A document states the identity, exhibits the certificate(s), lists the
//! exact checks with their outcomes, and closes with the telescoping
//! argument and base case — or, when the verification failed, says so in
//! capital letters.  Rendering is deterministic: identical inputs yield
//! byte-identical text, with no timestamps anywhere.  The optional
//! trailer names the producing tool and can be suppressed for fully
//! reproducible output.

use std::fmt::Write as _;

use wz_engine::{CertReport, Certificate, Convention, MultiCert, Verdict, WzCheck};

use crate::ast::IdentityAst;

/// One named check with its outcome and a one-line detail.
#[derive(Clone, Debug)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

/// How the document ends.
#[derive(Clone, Debug)]
pub enum Closing {
    /// Telescoping argument plus the base case at this index.
    Proved { base_index: i64 },
    /// A concrete counterexample sentence.
    Refuted { counterexample: String },
    /// Nothing was established either way.
    Inconclusive,
}

/// A complete proof (or non-proof) document, independent of rendering.
#[derive(Clone, Debug)]
pub struct ProofDocument {
    pub title: String,
    pub statement: String,
    pub remarks: Vec<String>,
    pub verdict: Verdict,
    pub convention: Convention,
    pub n_var: String,
    pub sum_vars: Vec<String>,
    /// Display bodies of the certificate components, one per summation
    /// variable; empty when no certificate was available.
    pub certificate_lines: Vec<String>,
    pub checks: Vec<Check>,
    pub closing: Closing,
    pub notes: Vec<String>,
    /// Producing tool and version; `None` suppresses the trailer.
    pub metadata: Option<String>,
}

fn tool_signature() -> String {
    format!("ekhad {}", env!("CARGO_PKG_VERSION"))
}

fn title_for(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::Proved => "A ONE-LINE PROOF",
        Verdict::Refuted => "A REFUTED CERTIFICATE",
        Verdict::Inconclusive => "AN INCONCLUSIVE REPORT",
    }
}

/// The pairing identity spelled out in the given orientation.
fn pairing_equation(conv: Convention, n: &str, k: &str, rest: &[String]) -> String {
    let args = |mid: &str| {
        let mut a = vec![mid.to_string()];
        a.extend(rest.iter().cloned());
        a.join(", ")
    };
    let f_next = format!("F({}+1, {})", n, args(k));
    let f_here = format!("F({}, {})", n, args(k));
    let g = |shift: &str| format!("G({}, {})", n, args(shift));
    let k_up = format!("{k}+1");
    let k_down = format!("{k}-1");
    let (lhs_g, rhs_g) = match conv {
        Convention::ForwardMate => (g(&k_up), g(k)),
        Convention::NegatedForward => (g(k), g(&k_up)),
        Convention::BackwardMate => (g(k), g(&k_down)),
        Convention::NegatedBackward => (g(&k_down), g(k)),
    };
    format!("{f_next} - {f_here} = {lhs_g} - {rhs_g}")
}

/// The multi-variable pairing identity: one telescoped difference per
/// summation variable, in the certificate's orientation.
fn multi_pairing_equation(conv: Convention, n: &str, ks: &[String]) -> String {
    let all = ks.join(", ");
    let mut rhs_terms = Vec::new();
    for (i, k) in ks.iter().enumerate() {
        let shifted: Vec<String> = ks
            .iter()
            .map(|v| {
                if v == k {
                    match conv {
                        Convention::ForwardMate | Convention::NegatedForward => format!("{v}+1"),
                        Convention::BackwardMate | Convention::NegatedBackward => {
                            format!("{v}-1")
                        }
                    }
                } else {
                    v.clone()
                }
            })
            .collect();
        let gi = format!("G{}", i + 1);
        let at_shift = format!("{gi}({n}, {})", shifted.join(", "));
        let at_here = format!("{gi}({n}, {all})");
        let term = match conv {
            Convention::ForwardMate | Convention::NegatedBackward => {
                format!("({at_shift} - {at_here})")
            }
            Convention::NegatedForward | Convention::BackwardMate => {
                format!("({at_here} - {at_shift})")
            }
        };
        rhs_terms.push(term);
    }
    format!(
        "F({n}+1, {all}) - F({n}, {all}) = {}",
        rhs_terms.join(" + ")
    )
}

/// Builds the document for a single-sum certificate verification.
pub fn document_from_report(
    ast: &IdentityAst,
    n_var: &str,
    k_var: &str,
    cert: &Certificate,
    report: &CertReport,
    reproducible: bool,
) -> ProofDocument {
    let mut checks = Vec::new();

    let mut pairing_detail = pairing_equation(report.convention, n_var, k_var, &[]);
    if !report.rational_identity_holds {
        let _ = write!(pairing_detail, "; residual {}", report.residual);
    }
    checks.push(Check {
        label: "pairing identity".into(),
        passed: report.rational_identity_holds,
        detail: pairing_detail,
    });
    checks.push(Check {
        label: "compact support".into(),
        passed: report.boundary_ok,
        detail: report.boundary_evidence.clone(),
    });
    let base_detail = match &report.base_value {
        Some(v) if report.base_ok => format!("a({}) = {}", report.base_index, v),
        Some(v) => format!("a({}) = {}, expected 1", report.base_index, v),
        None => format!("a({}) could not be evaluated", report.base_index),
    };
    checks.push(Check {
        label: "base case".into(),
        passed: report.base_ok,
        detail: base_detail,
    });

    let closing = match report.verdict {
        Verdict::Proved => Closing::Proved {
            base_index: report.base_index,
        },
        Verdict::Refuted => {
            let sentence = match &report.counterexample {
                Some((i, v)) => {
                    format!("a({i}) = {v}, whereas the claim asserts a({i}) = 1")
                }
                None => "the certificate fails the checks above".to_string(),
            };
            Closing::Refuted {
                counterexample: sentence,
            }
        }
        Verdict::Inconclusive => Closing::Inconclusive,
    };

    ProofDocument {
        title: title_for(report.verdict).to_string(),
        statement: ast.canonical_statement(),
        remarks: ast.remarks.clone(),
        verdict: report.verdict,
        convention: report.convention,
        n_var: n_var.to_string(),
        sum_vars: vec![k_var.to_string()],
        certificate_lines: vec![cert.r().to_string()],
        checks,
        closing,
        notes: report.notes.clone(),
        metadata: (!reproducible).then(tool_signature),
    }
}

/// Builds the document for a multi-variable certificate verification.
///
/// `spot_checks` carries the exact grid evidence (label, outcome) the
/// driver gathered; the symbolic residual check comes first.
pub fn document_from_multi(
    ast: &IdentityAst,
    n_var: &str,
    ks: &[String],
    cert: &MultiCert,
    check: &WzCheck,
    spot_checks: &[(String, bool)],
    reproducible: bool,
) -> ProofDocument {
    let mut checks = Vec::new();
    let mut detail = multi_pairing_equation(cert.convention, n_var, ks);
    if !check.holds {
        let _ = write!(detail, "; residual {}", check.residual);
    }
    checks.push(Check {
        label: "pairing identity".into(),
        passed: check.holds,
        detail,
    });
    for (label, passed) in spot_checks {
        checks.push(Check {
            label: label.clone(),
            passed: *passed,
            detail: if *passed {
                "exact".into()
            } else {
                "failed".into()
            },
        });
    }

    let all_pass = checks.iter().all(|c| c.passed);
    let verdict = if all_pass {
        Verdict::Proved
    } else {
        Verdict::Inconclusive
    };
    let closing = if all_pass {
        Closing::Proved { base_index: 0 }
    } else {
        Closing::Inconclusive
    };

    ProofDocument {
        title: title_for(verdict).to_string(),
        statement: ast.canonical_statement(),
        remarks: ast.remarks.clone(),
        verdict,
        convention: cert.convention,
        n_var: n_var.to_string(),
        sum_vars: ks.to_vec(),
        certificate_lines: cert.rs.iter().map(|r| r.to_string()).collect(),
        checks,
        closing,
        notes: Vec::new(),
        metadata: (!reproducible).then(tool_signature),
    }
}

/// Builds the diagnostic document for a prove run that found no
/// certificate; `notes` explains what was tried instead.
pub fn document_without_certificate(
    ast: &IdentityAst,
    n_var: &str,
    sum_vars: &[String],
    notes: Vec<String>,
    reproducible: bool,
) -> ProofDocument {
    ProofDocument {
        title: title_for(Verdict::Inconclusive).to_string(),
        statement: ast.canonical_statement(),
        remarks: ast.remarks.clone(),
        verdict: Verdict::Inconclusive,
        convention: Convention::ForwardMate,
        n_var: n_var.to_string(),
        sum_vars: sum_vars.to_vec(),
        certificate_lines: Vec::new(),
        checks: Vec::new(),
        closing: Closing::Inconclusive,
        notes,
        metadata: (!reproducible).then(tool_signature),
    }
}

impl ProofDocument {
    fn args(&self) -> String {
        let mut parts = vec![self.n_var.clone()];
        parts.extend(self.sum_vars.iter().cloned());
        parts.join(", ")
    }

    fn sum_vars_prose(&self) -> String {
        self.sum_vars.join(", ")
    }

    /// The ASCII rendering; stable enough for golden-file comparison.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        let _ = writeln!(out, "{}", "=".repeat(self.title.len()));
        out.push('\n');
        let head = if self.verdict == Verdict::Proved {
            "Theorem."
        } else {
            "Claim."
        };
        let _ = writeln!(out, "{head}  {}", self.statement);
        out.push('\n');

        let args = self.args();
        if self.certificate_lines.is_empty() {
            let _ = writeln!(
                out,
                "Verification.  No certificate was available for this claim."
            );
        } else {
            let opening = if self.verdict == Verdict::Proved {
                "Proof."
            } else {
                "Verification."
            };
            let plural = if self.certificate_lines.len() == 1 {
                "certificate"
            } else {
                "certificates"
            };
            let _ = writeln!(
                out,
                "{opening}  Divide both sides by the right-hand side and write F({args})\n\
                 for the normalized summand, so the claim reads a({n}) = 1, where a({n})\n\
                 sums F({args}) over {ks}.  Under the {conv} pairing, take the\n\
                 {plural}",
                n = self.n_var,
                ks = self.sum_vars_prose(),
                conv = self.convention.label(),
            );
            out.push('\n');
            if self.certificate_lines.len() == 1 {
                let _ = writeln!(
                    out,
                    "    R({args}) = {}",
                    self.certificate_lines[0]
                );
            } else {
                for (i, line) in self.certificate_lines.iter().enumerate() {
                    let _ = writeln!(out, "    R{}({args}) = {}", i + 1, line);
                }
            }
            out.push('\n');
            let mates = if self.certificate_lines.len() == 1 {
                format!("G({args}) = R({args})*F({args})")
            } else {
                format!("Gi({args}) = Ri({args})*F({args})")
            };
            let _ = writeln!(
                out,
                "and set {mates}.  Exact rational arithmetic checks:"
            );
        }
        out.push('\n');
        for check in &self.checks {
            let mark = if check.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "  [{mark}] {}: {}", check.label, check.detail);
        }
        if !self.checks.is_empty() {
            out.push('\n');
        }

        match &self.closing {
            Closing::Proved { base_index } => {
                let n = &self.n_var;
                let since = format!("a({base_index}) = 1");
                let range = if *base_index == 0 {
                    format!("for all {n}")
                } else {
                    format!("for all {n} >= {base_index}")
                };
                let _ = writeln!(
                    out,
                    "Summing the pairing identity over {ks} telescopes the right side\n\
                     to zero, so a({n}+1) = a({n}) for every {n}.  Since {since} (check!),\n\
                     it follows that a({n}) = 1 {range}.  QED.",
                    ks = self.sum_vars_prose(),
                );
            }
            Closing::Refuted { counterexample } => {
                let _ = writeln!(
                    out,
                    "The checks above leave the claim false at a concrete index:\n{counterexample}."
                );
                out.push('\n');
                let _ = writeln!(out, "THIS DOCUMENT IS NOT A PROOF.");
            }
            Closing::Inconclusive => {
                let _ = writeln!(
                    out,
                    "The evidence above neither proves nor refutes the claim."
                );
                out.push('\n');
                let _ = writeln!(out, "THIS DOCUMENT IS NOT A PROOF.");
            }
        }

        if !self.notes.is_empty() {
            out.push('\n');
            let _ = writeln!(out, "Notes.");
            for note in &self.notes {
                let _ = writeln!(out, "  - {note}");
            }
        }
        for remark in &self.remarks {
            out.push('\n');
            let _ = writeln!(out, "Remark.  {remark}");
        }
        if let Some(meta) = &self.metadata {
            out.push('\n');
            let _ = writeln!(out, "--");
            let _ = writeln!(out, "Produced mechanically by {meta}.");
        }
        out
    }

    /// A small self-contained LaTeX article with the same content.
    pub fn render_latex(&self) -> String {
        let mut out = String::new();
        out.push_str("\\documentclass{article}\n");
        out.push_str("\\usepackage{amsmath,amsthm}\n");
        out.push_str("\\newtheorem{theorem}{Theorem}\n");
        let _ = writeln!(out, "\\title{{{}}}", latex_escape(&title_case(&self.title)));
        out.push_str("\\author{}\n\\date{}\n");
        out.push_str("\\begin{document}\n\\maketitle\n");
        out.push_str("\\begin{theorem}\n");
        let _ = writeln!(out, "\\texttt{{{}}}", latex_escape(&self.statement));
        out.push_str("\\end{theorem}\n");
        out.push_str("\\begin{proof}\n");
        let args = self.args();
        if self.certificate_lines.is_empty() {
            out.push_str("No certificate was available for this claim.\n");
        } else {
            let _ = writeln!(
                out,
                "Divide both sides by the right-hand side and write $F({args})$ for the \
                 normalized summand.  Under the \\emph{{{conv}}} pairing, take",
                conv = self.convention.label()
            );
            for (i, line) in self.certificate_lines.iter().enumerate() {
                let name = if self.certificate_lines.len() == 1 {
                    "R".to_string()
                } else {
                    format!("R_{{{}}}", i + 1)
                };
                let _ = writeln!(
                    out,
                    "\\[ {name}({args}) = \\texttt{{{}}} \\]",
                    latex_escape(line)
                );
            }
            out.push_str("with $G = R F$ componentwise.\n");
        }
        out.push_str("\\begin{itemize}\n");
        for check in &self.checks {
            let mark = if check.passed { "pass" } else { "fail" };
            let _ = writeln!(
                out,
                "\\item[\\textbf{{{mark}}}] {}: \\texttt{{{}}}",
                latex_escape(&check.label),
                latex_escape(&check.detail)
            );
        }
        out.push_str("\\end{itemize}\n");
        match &self.closing {
            Closing::Proved { base_index } => {
                let n = &self.n_var;
                let _ = writeln!(
                    out,
                    "Summing the pairing identity telescopes the right side to zero, so \
                     $a({n}+1) = a({n})$ for every ${n}$.  Since $a({base_index}) = 1$ \
                     (check!), it follows that $a({n}) = 1$ for all ${n}$."
                );
            }
            Closing::Refuted { counterexample } => {
                let _ = writeln!(
                    out,
                    "The claim is false at a concrete index: \\texttt{{{}}}.  \
                     \\textbf{{This document is not a proof.}}",
                    latex_escape(counterexample)
                );
            }
            Closing::Inconclusive => {
                out.push_str(
                    "The evidence neither proves nor refutes the claim.  \
                     \\textbf{This document is not a proof.}\n",
                );
            }
        }
        out.push_str("\\end{proof}\n");
        for note in &self.notes {
            let _ = writeln!(out, "\\noindent Note: \\texttt{{{}}}\n", latex_escape(note));
        }
        for remark in &self.remarks {
            let _ = writeln!(out, "\\noindent Remark: {}\n", latex_escape(remark));
        }
        if let Some(meta) = &self.metadata {
            let _ = writeln!(
                out,
                "\\vfill\\noindent\\small Produced mechanically by {}.",
                latex_escape(meta)
            );
        }
        out.push_str("\\end{document}\n");
        out
    }
}

fn title_case(upper: &str) -> String {
    let mut out = String::with_capacity(upper.len());
    let mut at_word_start = true;
    for c in upper.chars() {
        if c == ' ' {
            out.push(c);
            at_word_start = true;
        } else if at_word_start {
            out.push(c);
            at_word_start = false;
        } else {
            out.extend(c.to_lowercase());
        }
    }
    out
}

fn latex_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            '\\' => out.push_str("\\textbackslash{}"),
            '%' | '$' | '#' | '&' | '_' | '{' | '}' => {
                out.push('\\');
                out.push(c);
            }
            other => out.push(other),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lower::lower;
    use crate::parser::parse_identity;
    use wz_algebra::{rat, MultiPoly, RatFunc};
    use wz_engine::certify_identity;

    fn halved_row_cert() -> Certificate {
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

    fn document_for(src: &str, cert: &Certificate) -> ProofDocument {
        let ast = parse_identity(src).unwrap();
        let low = lower(&ast).unwrap();
        let report = certify_identity(&low.identity, cert, None).unwrap();
        document_from_report(&ast, &low.n_var, &low.sum_vars[0], cert, &report, false)
    }

    #[test]
    fn a_proved_document_reads_like_a_proof() {
        let doc = document_for("sum k: binomial(n, k) / 2^n == 1", &halved_row_cert());
        assert_eq!(doc.verdict, Verdict::Proved);
        let text = doc.render_text();
        assert!(text.contains("A ONE-LINE PROOF"), "{text}");
        assert!(text.contains("-k/(2*(n - k + 1))"), "{text}");
        assert!(text.contains("[PASS] pairing identity"), "{text}");
        assert!(text.contains("a(0) = 1"), "{text}");
        assert!(text.contains("QED"), "{text}");
        assert!(!text.contains("NOT A PROOF"), "{text}");
    }

    #[test]
    fn rendering_is_deterministic() {
        let a = document_for("sum k: binomial(n, k) / 2^n == 1", &halved_row_cert());
        let b = document_for("sum k: binomial(n, k) / 2^n == 1", &halved_row_cert());
        assert_eq!(a.render_text(), b.render_text());
        assert_eq!(a.render_latex(), b.render_latex());
    }

    #[test]
    fn a_false_claim_yields_a_refutation() {
        let doc = document_for("sum k: binomial(n, k) / 2^n == 2", &halved_row_cert());
        assert_eq!(doc.verdict, Verdict::Refuted);
        let text = doc.render_text();
        assert!(text.contains("A REFUTED CERTIFICATE"), "{text}");
        assert!(text.contains("THIS DOCUMENT IS NOT A PROOF."), "{text}");
        assert!(text.contains("a(0) = 1/2"), "{text}");
        assert!(!text.contains("QED"), "{text}");
    }

    #[test]
    fn a_wrong_certificate_is_flagged_inconclusive() {
        let num = MultiPoly::var("k");
        let den = MultiPoly::from_terms(&["k"], &[(rat(1, 1), vec![0])]);
        let wrong = Certificate::single(RatFunc::new(num, den).unwrap());
        let doc = document_for("sum k: binomial(n, k) / 2^n == 1", &wrong);
        assert_eq!(doc.verdict, Verdict::Inconclusive);
        let text = doc.render_text();
        assert!(text.contains("AN INCONCLUSIVE REPORT"), "{text}");
        assert!(text.contains("[FAIL]"), "{text}");
        assert!(text.contains("THIS DOCUMENT IS NOT A PROOF."), "{text}");
    }

    #[test]
    fn latex_output_is_a_complete_article_with_escaped_carets() {
        let doc = document_for("sum k: binomial(n, k) / 2^n == 1", &halved_row_cert());
        let tex = doc.render_latex();
        assert!(tex.starts_with("\\documentclass{article}"), "{tex}");
        assert!(tex.contains("\\begin{theorem}"), "{tex}");
        assert!(tex.contains("2\\^{}n"), "{tex}");
        assert!(tex.trim_end().ends_with("\\end{document}"), "{tex}");
    }

    #[test]
    fn reproducible_documents_carry_no_tool_trailer() {
        let ast = parse_identity("sum k: binomial(n, k) / 2^n == 1").unwrap();
        let low = lower(&ast).unwrap();
        let cert = halved_row_cert();
        let report = certify_identity(&low.identity, &cert, None).unwrap();
        let doc =
            document_from_report(&ast, &low.n_var, &low.sum_vars[0], &cert, &report, true);
        let text = doc.render_text();
        assert!(!text.contains("Produced mechanically"), "{text}");
    }

    #[test]
    fn remarks_are_carried_into_the_document() {
        let src = "@remark the half-row normalization\nsum k: binomial(n, k) / 2^n == 1";
        let ast = parse_identity(src).unwrap();
        let low = lower(&ast).unwrap();
        let cert = halved_row_cert();
        let report = certify_identity(&low.identity, &cert, None).unwrap();
        let doc =
            document_from_report(&ast, &low.n_var, &low.sum_vars[0], &cert, &report, false);
        let text = doc.render_text();
        assert!(
            text.contains("Remark.  the half-row normalization"),
            "{text}"
        );
    }
}
