//! Certificate files.
//!
//! JSON: `{"type": "sigma2" | "sigma1-rewrite", "graph_sha", "walk", "arcs",
//! "relators"?, "steps"?}`. `arcs` lists the arcs `(u, v)` stepped over an
//! odd number of times. For `sigma1-rewrite` the start word is not stored:
//! it is the signature word of `walk`, recomputed on verification.
//!
//! Text: one record per line. Rewrite steps read `FI pos u,v±`, `FD pos`,
//! `RI pos a b c d ±`, `RD pos a b c d ±`, `CS`.

use std::fmt::Write as _;

use oddsig_core::freesig::{
    check_certificate_detailed, sigma1_of_walk, Letter, RewriteCertificate, RewriteStep,
};
use oddsig_core::sig2::{
    assignment_of_walk, sigma2_raw, verify_certificate, Relator, Sigma2Certificate,
};
use oddsig_core::{ClosedWalk, Gf2Vector, Graph};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::formats::write_dimacs;

pub const SIGMA2: &str = "sigma2";
pub const SIGMA1_REWRITE: &str = "sigma1-rewrite";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    #[serde(rename = "type")]
    pub kind: String,
    pub graph_sha: String,
    pub walk: Vec<usize>,
    pub arcs: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relators: Option<Vec<[usize; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<Vec<String>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertError {
    #[error("unknown certificate type `{0}`")]
    UnknownType(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// Outcome of checking a certificate against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted,
    Rejected(String),
}

/// SHA-256 of the comment-free DIMACS form, hex encoded.
pub fn graph_sha(g: &Graph) -> String {
    hex::encode(Sha256::digest(write_dimacs(g, &[]).as_bytes()))
}

fn odd_arcs(g: &Graph, x: &Gf2Vector) -> Vec<[usize; 2]> {
    x.ones()
        .map(|a| {
            let arc = g.arc(a);
            [arc.tail, arc.head]
        })
        .collect()
}

pub fn sigma2_json(g: &Graph, c: &Sigma2Certificate) -> CertificateJson {
    CertificateJson {
        kind: SIGMA2.to_string(),
        graph_sha: graph_sha(g),
        walk: c.walk.vertices().to_vec(),
        arcs: odd_arcs(g, &c.assignment),
        relators: c
            .relators
            .as_ref()
            .map(|rs| rs.iter().map(Relator::quad).collect()),
        steps: None,
    }
}

/// `c.start` must be the signature word of `walk`.
pub fn sigma1_json(g: &Graph, walk: &ClosedWalk, c: &RewriteCertificate) -> CertificateJson {
    debug_assert_eq!(sigma1_of_walk(g, walk).as_ref(), Some(&c.start));
    CertificateJson {
        kind: SIGMA1_REWRITE.to_string(),
        graph_sha: graph_sha(g),
        walk: walk.vertices().to_vec(),
        arcs: odd_arcs(g, &assignment_of_walk(g, walk)),
        relators: None,
        steps: Some(c.steps.iter().map(|s| s.to_string()).collect()),
    }
}

/// `Err` only for an unknown `type`; every defect of a known type is a
/// rejection.
pub fn verify_json(g: &Graph, c: &CertificateJson) -> Result<Verdict, CertError> {
    let reject = |why: &str| Ok(Verdict::Rejected(why.to_string()));
    if c.kind != SIGMA2 && c.kind != SIGMA1_REWRITE {
        return Err(CertError::UnknownType(c.kind.clone()));
    }
    if c.graph_sha != graph_sha(g) {
        return reject("graph hash mismatch");
    }
    let walk = ClosedWalk::new(c.walk.clone());
    if c.walk.iter().any(|&v| v >= g.vertex_count()) || !g.validate_closed_walk(&walk) {
        return reject("walk is not a closed walk of the graph");
    }
    if !walk.is_odd() {
        return reject("walk has even length");
    }
    if c.arcs != odd_arcs(g, &assignment_of_walk(g, &walk)) {
        return reject("arcs do not match the walk");
    }
    if c.kind == SIGMA2 {
        if c.steps.is_some() {
            return reject("sigma2 certificate carries rewrite steps");
        }
        if let Some(rs) = &c.relators {
            let mut sum = Gf2Vector::zeros(g.arc_count());
            for &[a, b, cc, d] in rs {
                if [a, b, cc, d].iter().any(|&v| v >= g.vertex_count()) {
                    return reject("relator vertex out of range");
                }
                let r = Relator::new(a, b, cc, d);
                if !r.is_valid_in(g) {
                    return reject("relator is not a 4-cycle of the graph");
                }
                sum.xor_assign(&r.vector(g));
            }
            if Some(sum) != sigma2_raw(g, &walk).ok() {
                return reject("relators do not sum to the walk signature");
            }
        }
        let cert = Sigma2Certificate {
            component: 0,
            assignment: assignment_of_walk(g, &walk),
            walk,
            relators: None,
        };
        return Ok(if verify_certificate(g, &cert) {
            Verdict::Accepted
        } else {
            Verdict::Rejected("signature is not in the relator span".to_string())
        });
    }
    let Some(texts) = &c.steps else {
        return reject("rewrite certificate has no steps");
    };
    let mut steps = Vec::with_capacity(texts.len());
    for (i, t) in texts.iter().enumerate() {
        match parse_step(t) {
            Ok(s) => steps.push(s),
            Err(e) => return Ok(Verdict::Rejected(format!("step {i}: {e}"))),
        }
    }
    let start = sigma1_of_walk(g, &walk).expect("validated odd walk");
    Ok(
        match check_certificate_detailed(g, &RewriteCertificate { start, steps }) {
            Ok(()) => Verdict::Accepted,
            Err(e) => Verdict::Rejected(e.to_string()),
        },
    )
}

pub fn to_json(c: &CertificateJson) -> String {
    let mut s = serde_json::to_string_pretty(c).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<CertificateJson, serde_json::Error> {
    serde_json::from_str(text)
}

fn parse_sign(tok: &str) -> Option<bool> {
    match tok {
        "+" => Some(false),
        "-" => Some(true),
        _ => None,
    }
}

fn parse_letter(tok: &str) -> Option<Letter> {
    let (body, inverted) = match tok.char_indices().last()? {
        (i, '+') => (&tok[..i], false),
        (i, '-') => (&tok[..i], true),
        _ => return None,
    };
    let (t, h) = body.split_once(',')?;
    Some(Letter {
        tail: t.parse().ok()?,
        head: h.parse().ok()?,
        inverted,
    })
}

/// Inverse of `RewriteStep`'s `Display`.
pub fn parse_step(text: &str) -> Result<RewriteStep, String> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let num = |i: usize| -> Result<usize, String> {
        toks.get(i)
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| format!("bad number in `{text}`"))
    };
    let quad = || -> Result<([usize; 4], bool), String> {
        if toks.len() != 7 {
            return Err(format!("expected 6 fields in `{text}`"));
        }
        let inverse = parse_sign(toks[6]).ok_or_else(|| format!("bad sign in `{text}`"))?;
        Ok(([num(2)?, num(3)?, num(4)?, num(5)?], inverse))
    };
    match toks.first().copied() {
        Some("FI") if toks.len() == 3 => Ok(RewriteStep::FreeInsert {
            pos: num(1)?,
            letter: parse_letter(toks[2]).ok_or_else(|| format!("bad letter in `{text}`"))?,
        }),
        Some("FD") if toks.len() == 2 => Ok(RewriteStep::FreeDelete { pos: num(1)? }),
        Some("RI") => {
            let (q, inverse) = quad()?;
            Ok(RewriteStep::RelatorInsert {
                pos: num(1)?,
                quad: q,
                inverse,
            })
        }
        Some("RD") => {
            let (q, inverse) = quad()?;
            Ok(RewriteStep::RelatorDelete {
                pos: num(1)?,
                quad: q,
                inverse,
            })
        }
        Some("CS") if toks.len() == 1 => Ok(RewriteStep::CyclicShift),
        _ => Err(format!("unrecognised step `{text}`")),
    }
}

/// `start` header with the letters, then one step per line.
pub fn write_rewrite_text(c: &RewriteCertificate) -> String {
    let mut out = String::from("start");
    for x in &c.start {
        write!(out, " {x}").expect("string write");
    }
    out.push('\n');
    for s in &c.steps {
        writeln!(out, "{s}").expect("string write");
    }
    out
}

pub fn parse_rewrite_text(text: &str) -> Result<RewriteCertificate, CertError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or(CertError::Syntax {
        line: 1,
        message: "missing start line".to_string(),
    })?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("start") {
        return Err(CertError::Syntax {
            line: 1,
            message: "expected `start`".to_string(),
        });
    }
    let start = toks
        .map(|t| {
            parse_letter(t).ok_or_else(|| CertError::Syntax {
                line: 1,
                message: format!("bad letter `{t}`"),
            })
        })
        .collect::<Result<_, _>>()?;
    let steps = lines
        .map(|(i, l)| {
            parse_step(l).map_err(|message| CertError::Syntax {
                line: i + 1,
                message,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(RewriteCertificate { start, steps })
}

/// Line-oriented form of a σ₂ certificate.
pub fn write_sigma2_text(g: &Graph, c: &Sigma2Certificate) -> String {
    let mut out = String::new();
    writeln!(out, "type {SIGMA2}").expect("string write");
    writeln!(out, "graph_sha {}", graph_sha(g)).expect("string write");
    writeln!(out, "component {}", c.component).expect("string write");
    let walk: Vec<String> = c.walk.vertices().iter().map(|v| v.to_string()).collect();
    writeln!(out, "walk {}", walk.join(" ")).expect("string write");
    for [u, v] in odd_arcs(g, &c.assignment) {
        writeln!(out, "arc {u} {v}").expect("string write");
    }
    for r in c.relators.iter().flatten() {
        let [a, b, cc, d] = r.quad();
        writeln!(out, "relator {a} {b} {cc} {d}").expect("string write");
    }
    out
}
