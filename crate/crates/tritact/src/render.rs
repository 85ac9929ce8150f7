//! SVG rendering of layouts.
//!
//! All geometry stays rational through the viewport transform; coordinates
//! become decimals only when written into the SVG text, rounded to 12
//! significant digits.

use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use tritact_core::contact::Layout;
use tritact_core::geom::{ri, Rat};

/// Presentation knobs for [`render_svg`].
#[derive(Clone, Debug)]
pub struct RenderOptions {
    /// Viewport width in pixels; must be positive.
    pub width: u32,
    /// Viewport height in pixels; must be positive.
    pub height: u32,
    /// Stroke width of triangle outlines, in pixels.
    pub stroke_width: f64,
    /// Draw each vertex id at its triangle's centroid.
    pub labels: bool,
    /// Seed for the deterministic fill palette.
    pub palette_seed: u64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            width: 800,
            height: 600,
            stroke_width: 1.5,
            labels: false,
            palette_seed: 1,
        }
    }
}

/// The requested viewport cannot hold a drawing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderError(pub String);

impl fmt::Display for RenderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for RenderError {}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10).pow(k)
}

/// Round a rational to 12 significant digits and print it as a plain
/// decimal (no exponent), trailing zeros trimmed. Exact values shorter
/// than 12 digits print exactly: `1/2` is `"0.5"`, `3` is `"3"`.
pub fn decimal_12(r: &Rat) -> String {
    const DIGITS: u32 = 12;
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.numer().abs();
    let b = r.denom().clone();

    // Find e with 10^e <= a/b < 10^(e+1); compare via a*10^max(0,-e) vs
    // b*10^max(0,e) to stay in integers.
    let at_least = |e: i64| -> bool {
        if e >= 0 {
            a >= &b * pow10(e as u32)
        } else {
            &a * pow10((-e) as u32) >= b
        }
    };
    let mut e = a.to_string().len() as i64 - b.to_string().len() as i64;
    while !at_least(e) {
        e -= 1;
    }
    while at_least(e + 1) {
        e += 1;
    }

    // m = a/b * 10^(DIGITS-1-e), rounded half away from zero: a DIGITS-digit
    // integer mantissa (one more after a rounding carry).
    let shift = DIGITS as i64 - 1 - e;
    let num = if shift >= 0 {
        &a * pow10(shift as u32)
    } else {
        a.clone()
    };
    let den = if shift >= 0 {
        b.clone()
    } else {
        &b * pow10((-shift) as u32)
    };
    let mut m = (BigInt::from(2) * num + &den) / (BigInt::from(2) * den);
    if m == pow10(DIGITS) {
        m /= 10;
        e += 1;
    }
    let digits = m.to_string();
    debug_assert_eq!(digits.len(), DIGITS as usize);

    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e >= DIGITS as i64 - 1 {
        // Integer with trailing zeros beyond the mantissa.
        out.push_str(&digits);
        for _ in 0..(e - (DIGITS as i64 - 1)) {
            out.push('0');
        }
    } else if e >= 0 {
        let split = (e + 1) as usize;
        let frac = digits[split..].trim_end_matches('0');
        out.push_str(&digits[..split]);
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else {
        let frac = digits.trim_end_matches('0');
        out.push_str("0.");
        for _ in 0..(-e - 1) {
            out.push('0');
        }
        out.push_str(frac);
    }
    out
}

/// Deterministic pastel fill for a vertex id under a palette seed.
fn fill_color(seed: u64, vertex: usize) -> String {
    // SplitMix64 over (seed, vertex) for a stable, well-spread hue.
    let mut z = seed
        .wrapping_mul(0x9e3779b97f4a7c15)
        .wrapping_add(vertex as u64)
        .wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^= z >> 31;
    let hue = (z % 360) as f64;
    let (s, l) = (0.55, 0.78);
    // Standard HSL to RGB conversion.
    let c = (1.0 - (2.0 * l - 1.0).abs()) * s;
    let hp = hue / 60.0;
    let x = c * (1.0 - (hp % 2.0 - 1.0).abs());
    let (r1, g1, b1) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = l - c / 2.0;
    let byte = |v: f64| ((v + m) * 255.0).round().clamp(0.0, 255.0) as u8;
    format!("#{:02x}{:02x}{:02x}", byte(r1), byte(g1), byte(b1))
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Render a layout as a standalone SVG document: one `polygon` per
/// triangle and, with labels enabled, one `text` per vertex at its
/// triangle's centroid. The drawing is fitted into the viewport with a 5%
/// margin, preserving aspect ratio; the vertical axis is flipped so that
/// larger `y` is higher on screen.
pub fn render_svg(layout: &Layout, opts: &RenderOptions) -> Result<String, RenderError> {
    if opts.width == 0 || opts.height == 0 {
        return Err(RenderError("viewport dimensions must be positive".into()));
    }
    let w = ri(opts.width as i64);
    let h = ri(opts.height as i64);
    let margin = (if opts.width < opts.height { &w } else { &h }) * tritact_core::geom::rq(1, 20);

    // A rational point-to-viewport map, identity for the empty layout.
    type PointMap = Box<dyn Fn(&Rat, &Rat) -> (Rat, Rat)>;
    let transform: PointMap = if layout.is_empty() {
        Box::new(move |x: &Rat, y: &Rat| (x.clone(), y.clone()))
    } else {
        let mut xs: Vec<&Rat> = Vec::new();
        let mut ys: Vec<&Rat> = Vec::new();
        for tri in layout.triangles.values() {
            for p in tri.vertices() {
                xs.push(&p.x);
                ys.push(&p.y);
            }
        }
        let min_x = (*xs.iter().min().unwrap()).clone();
        let max_x = (*xs.iter().max().unwrap()).clone();
        let min_y = (*ys.iter().min().unwrap()).clone();
        let max_y = (*ys.iter().max().unwrap()).clone();
        let span_x = &max_x - &min_x;
        let span_y = &max_y - &min_y;
        let avail_x = &w - ri(2) * &margin;
        let avail_y = &h - ri(2) * &margin;
        let sx = &avail_x / &span_x;
        let sy = &avail_y / &span_y;
        let s = if sx < sy { sx } else { sy };
        let off_x = &margin + (&avail_x - &span_x * &s) / ri(2);
        let off_y = &margin + (&avail_y - &span_y * &s) / ri(2);
        let h_for_flip = h.clone();
        Box::new(move |x: &Rat, y: &Rat| {
            let px = &off_x + (x - &min_x) * &s;
            let py = &h_for_flip - (&off_y + (y - &min_y) * &s);
            (px, py)
        })
    };

    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
        opts.width, opts.height
    ));
    for (&v, tri) in &layout.triangles {
        let pts: Vec<String> = tri
            .vertices()
            .iter()
            .map(|p| {
                let (px, py) = transform(&p.x, &p.y);
                format!("{},{}", decimal_12(&px), decimal_12(&py))
            })
            .collect();
        svg.push_str(&format!(
            "  <polygon points=\"{}\" fill=\"{}\" stroke=\"#000000\" stroke-width=\"{}\"/>\n",
            pts.join(" "),
            fill_color(opts.palette_seed, v),
            opts.stroke_width
        ));
    }
    if opts.labels {
        for (&v, tri) in &layout.triangles {
            let c = tri.centroid();
            let (cx, cy) = transform(&c.x, &c.y);
            svg.push_str(&format!(
                "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" \
                 text-anchor=\"middle\" dominant-baseline=\"central\">{}</text>\n",
                decimal_12(&cx),
                decimal_12(&cy),
                escape_xml(&v.to_string())
            ));
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Count elements in an SVG document; used by tests and kept here so the
/// counting rule stays next to the writer.
pub fn count_tag(svg: &str, tag: &str) -> usize {
    svg.matches(&format!("<{tag} ")).count()
}
