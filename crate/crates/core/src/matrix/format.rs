//! Rendering matrices for humans (tab-separated `a+bi`) and machines.

use serde::Serialize;

use super::CMatrix;

/// Row-major structured form of a matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixRecord {
    pub rows: usize,
    pub cols: usize,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

impl From<&CMatrix> for MatrixRecord {
    fn from(m: &CMatrix) -> Self {
        MatrixRecord {
            rows: m.rows(),
            cols: m.cols(),
            re: m.entries().iter().map(|z| z.re).collect(),
            im: m.entries().iter().map(|z| z.im).collect(),
        }
    }
}

/// `x` with `sig` significant digits, in the style of C's `%g`: trailing
/// zeros dropped, exponent form outside `1e-5 <= |x| < 10^sig`.
fn format_significant(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= sig as i32 {
        let mantissa = trim_fraction(mantissa);
        format!("{mantissa}e{exp}")
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn format_entry(re: f64, im: f64) -> String {
    let sign = if im.is_sign_negative() && im != 0.0 { '-' } else { '+' };
    format!(
        "{}{}{}i",
        format_significant(re, 12),
        sign,
        format_significant(im.abs(), 12)
    )
}

/// One row per line, entries `a+bi` with 12 significant digits, separated by
/// tabs. Every line ends with a newline.
pub fn format_matrix_text(m: &CMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|c| {
                let z = m.get(r, c);
                format_entry(z.re, z.im)
            })
            .collect();
        out.push_str(&row.join("\t"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(1.0, 12), "1");
        assert_eq!(format_significant(-0.5, 12), "-0.5");
        assert_eq!(format_significant(std::f64::consts::PI, 12), "3.14159265359");
        assert_eq!(format_significant(6.123233995736766e-17, 12), "6.12323399574e-17");
        assert_eq!(format_significant(123456789012345.0, 12), "1.23456789012e14");
        assert_eq!(format_significant(0.0001, 12), "0.0001");
        assert_eq!(format_significant(-0.0, 12), "0");
    }

    #[test]
    fn text_rendering_of_ix() {
        let ix = CMatrix::from_rows(&[&[(0.0, 0.0), (0.0, 1.0)], &[(0.0, 1.0), (0.0, 0.0)]]);
        assert_eq!(format_matrix_text(&ix), "0+0i\t0+1i\n0+1i\t0+0i\n");
        let neg = CMatrix::from_rows(&[&[(-1.5, -0.25)]]);
        assert_eq!(format_matrix_text(&neg), "-1.5-0.25i\n");
    }

    #[test]
    fn record_is_row_major() {
        let m = CMatrix::from_rows(&[&[(1.0, 2.0), (3.0, 4.0)]]);
        let rec = MatrixRecord::from(&m);
        assert_eq!((rec.rows, rec.cols), (1, 2));
        assert_eq!(rec.re, vec![1.0, 3.0]);
        assert_eq!(rec.im, vec![2.0, 4.0]);
    }
}
