//! Invariants of canonical surface sections `S ∈ |lH|` of the Calabi-Yau
//! double cover, and where they sit among surfaces of general type.

use std::fmt::Write as _;
use std::io::Write;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{FanoError, Result};
use crate::extendability::l_y;
use crate::families::{n_l, FanoFamily};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub family: String,
    pub l: i64,
    /// Closed-form `χ` by index class; rational because the higher-index
    /// expression need not be integral.
    #[serde(with = "ratio_string")]
    pub chi_formula: Ratio<i64>,
    /// `1 + N_l`.
    pub chi_rr: i64,
    pub k2: i64,
    pub pg: i64,
    pub q: i64,
}

mod ratio_string {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl SurfaceInvariants {
    /// `chi_formula - chi_rr`, emitted whenever nonzero.
    pub fn chi_gap(&self) -> Ratio<i64> {
        self.chi_formula - Ratio::from_integer(self.chi_rr)
    }
}

/// The closed-form `χ`: for index 1 in terms of `-K^3`, otherwise in terms of
/// `H^3` and the index.
pub fn chi_closed_form(y: &FanoFamily, l: i64) -> Ratio<i64> {
    let d = Ratio::from_integer(y.degree_h3);
    let l = Ratio::from_integer(l);
    let i = Ratio::from_integer(y.index);
    if y.index == 1 {
        d * l * l * l / 3 + (d / 6 + 4) * l
    } else {
        d * l * l * l / 3 + (i - 1) / 2 * d * l * l + (d / 6 + 2) * l + 1
    }
}

/// Invariants for `l >= l_Y`.
pub fn invariants(y: &FanoFamily, l: i64) -> Result<SurfaceInvariants> {
    let threshold = l_y(y)?;
    if l < threshold {
        return Err(FanoError::BelowThreshold { family: y.id.clone(), l, threshold });
    }
    invariants_unchecked(y, l)
}

/// Invariants without the `l >= l_Y` guard; still needs `N_l` defined.
pub fn invariants_unchecked(y: &FanoFamily, l: i64) -> Result<SurfaceInvariants> {
    let n = n_l(y, l)?.value as i64;
    Ok(SurfaceInvariants {
        family: y.id.clone(),
        l,
        chi_formula: chi_closed_form(y, l),
        chi_rr: 1 + n,
        k2: 2 * y.degree_h3 * l * l * l,
        pg: n,
        q: 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeographyCheck {
    /// `K^2 >= 2 p_g - 4`
    pub noether: bool,
    /// `K^2 <= 9 χ`
    pub bmy: bool,
}

pub fn geography_check(inv: &SurfaceInvariants) -> GeographyCheck {
    GeographyCheck { noether: inv.k2 >= 2 * inv.pg - 4, bmy: inv.k2 <= 9 * inv.chi_rr }
}

/// Row flag: `ok`, or `;`-joined reasons.
pub fn row_flag(inv: &SurfaceInvariants, check: GeographyCheck) -> String {
    let mut reasons = Vec::new();
    if inv.chi_gap() != Ratio::from_integer(0) {
        reasons.push("chi_mismatch");
    }
    if !check.noether {
        reasons.push("noether_fails");
    }
    if !check.bmy {
        reasons.push("bmy_fails");
    }
    if reasons.is_empty() {
        "ok".to_string()
    } else {
        reasons.join(";")
    }
}

pub const CSV_HEADER: [&str; 10] = ["family", "l", "chi_formula", "chi_rr", "K2", "pg", "q", "noether", "bmy", "flag"];

pub fn write_csv<W: Write>(rows: &[SurfaceInvariants], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| FanoError::Io(std::io::Error::other(e));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        let c = geography_check(r);
        w.write_record([
            r.family.clone(),
            r.l.to_string(),
            r.chi_formula.to_string(),
            r.chi_rr.to_string(),
            r.k2.to_string(),
            r.pg.to_string(),
            r.q.to_string(),
            c.noether.to_string(),
            c.bmy.to_string(),
            row_flag(r, c),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Plot box: `viewBox="0 0 SVG_SIZE SVG_SIZE"` with a margin of `SVG_MARGIN`.
pub const SVG_SIZE: i64 = 1000;
pub const SVG_MARGIN: i64 = 50;

/// Points `(χ, K^2)` using `chi_rr`, scaled so the largest coordinates reach
/// the far edge, y pointing up. The Noether and BMY lines are drawn over the
/// same range.
pub fn render_svg(rows: &[SurfaceInvariants]) -> String {
    let span = SVG_SIZE - 2 * SVG_MARGIN;
    let max_chi = rows.iter().map(|r| r.chi_rr).max().unwrap_or(1).max(1);
    let max_k2 = rows.iter().map(|r| r.k2).max().unwrap_or(1).max(1);
    // integer arithmetic keeps the output byte-stable
    let x = |chi: i64| SVG_MARGIN + chi * span / max_chi;
    let y = |k2: i64| SVG_SIZE - SVG_MARGIN - k2.min(max_k2) * span / max_k2;
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">"#);
    let _ = writeln!(
        s,
        r#"<line class="noether" x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray"/>"#,
        x(0),
        y(0),
        x(max_chi),
        y((2 * max_chi - 6).max(0))
    );
    let bmy_chi = max_k2 / 9;
    let _ = writeln!(
        s,
        r#"<line class="bmy" x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray"/>"#,
        x(0),
        y(0),
        x(bmy_chi.min(max_chi)),
        y(9 * bmy_chi.min(max_chi))
    );
    for r in rows {
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="4" data-family="{}" data-l="{}" data-chi="{}" data-k2="{}"/>"#,
            x(r.chi_rr),
            y(r.k2),
            r.family,
            r.l,
            r.chi_rr,
            r.k2
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Rows for `l = l_Y ..= l_Y + extra` per family.
pub fn geography_rows(families: &[&FanoFamily], extra: i64) -> Result<Vec<SurfaceInvariants>> {
    let mut out = Vec::new();
    for y in families {
        let start = l_y(y)?;
        for l in start..=start + extra {
            out.push(invariants_unchecked(y, l)?);
        }
    }
    Ok(out)
}
