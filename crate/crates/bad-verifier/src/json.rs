//! JSON forms for certificates, verdicts and battery reports. Same textual
//! conventions as the transcript format: decimal strings for big integers,
//! canonical `"p/q"` for rationals.

use num::{BigInt, BigRational};
use serde::{Deserialize, Serialize};
use theta_arith::{CircleInterval, LinearForm, ThetaSpec};

use crate::{BatteryReport, Certificate, Error, Result, Verdict};

pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_from_string(s: &str) -> Result<BigRational> {
    let bad = || Error::Malformed(format!("bad rational '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Serialize, Deserialize)]
struct CenterDoc {
    a: String,
    b: String,
}

#[derive(Serialize, Deserialize)]
struct WindowDoc {
    center: CenterDoc,
    radius: String,
}

#[derive(Serialize, Deserialize)]
pub struct CertificateDoc {
    pub label: String,
    pub theta: String,
    pub c: String,
    pub q_lo: String,
    pub q_hi: String,
    w_final: WindowDoc,
    pub transcript_ref: String,
}

pub fn certificate_to_doc(cert: &Certificate, label: &str) -> Result<CertificateDoc> {
    let a = cert.w_final.center.form().integer_theta_coeff().ok_or_else(|| {
        Error::Malformed("certificate window center must have integer theta coefficient".into())
    })?;
    Ok(CertificateDoc {
        label: label.to_string(),
        theta: cert.theta.to_string(),
        c: rational_to_string(&cert.c),
        q_lo: cert.q_lo.to_string(),
        q_hi: cert.q_hi.to_string(),
        w_final: WindowDoc {
            center: CenterDoc {
                a: a.to_string(),
                b: rational_to_string(&cert.w_final.center.form().constant),
            },
            radius: rational_to_string(&cert.w_final.radius),
        },
        transcript_ref: cert.transcript_ref.clone(),
    })
}

pub fn certificate_from_doc(doc: &CertificateDoc) -> Result<Certificate> {
    let theta = ThetaSpec::parse(&doc.theta)?;
    let a: BigInt =
        doc.w_final.center.a.parse().map_err(|_| Error::Malformed("bad center".into()))?;
    let b = rational_from_string(&doc.w_final.center.b)?;
    let center = theta_arith::reduce_mod_one(&LinearForm::new(a, b), &theta)?;
    let radius = rational_from_string(&doc.w_final.radius)?;
    let w_final = CircleInterval::new(center, radius)?;
    let parse_u64 = |s: &str| -> Result<u64> {
        s.parse().map_err(|_| Error::Malformed(format!("bad integer '{s}'")))
    };
    Ok(Certificate {
        theta,
        w_final,
        c: rational_from_string(&doc.c)?,
        q_lo: parse_u64(&doc.q_lo)?,
        q_hi: parse_u64(&doc.q_hi)?,
        transcript_ref: doc.transcript_ref.clone(),
    })
}

pub fn verdict_to_json(cert: &Certificate, verdict: &Verdict) -> serde_json::Value {
    match verdict {
        Verdict::Verified => serde_json::json!({
            "verdict": "verified",
            "range": [cert.q_lo, cert.q_hi],
            "c": rational_to_string(&cert.c),
        }),
        Verdict::Refuted { q, margin } => serde_json::json!({
            "verdict": "refuted",
            "q": q,
            "margin": rational_to_string(margin),
            "range": [cert.q_lo, cert.q_hi],
            "c": rational_to_string(&cert.c),
        }),
    }
}

pub fn battery_to_json(report: &BatteryReport) -> serde_json::Value {
    serde_json::json!({
        "theta": report.theta,
        "all_pass": report.all_pass(),
        "entries": report.entries.iter().map(|e| serde_json::json!({
            "fact": e.fact,
            "scope": e.scope,
            "pass": e.pass,
            "detail": e.detail,
        })).collect::<Vec<_>>(),
    })
}
