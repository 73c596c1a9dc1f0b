//! Deterministic SVG rendering of the canonical curve diagrams: crosscaps
//! as shaded circles on a horizontal axis, each curve as a trunk with legs
//! dipping into its crosscaps.

use crosscap_core::surface::{canonical_curve, CurveName, CurveSymbol};
use crosscap_core::{Error, Result};

/// Every layout constant in one place. The diagrams are qualitative;
/// nothing downstream depends on the exact pixel values, only on their
/// determinism.
pub struct LayoutConfig {
    pub spacing: i64,
    pub margin: i64,
    pub crosscap_radius: i64,
    pub trunk_base: i64,
    pub trunk_step: i64,
    pub label_offset: i64,
    pub bottom: i64,
}

impl Default for LayoutConfig {
    fn default() -> Self {
        LayoutConfig {
            spacing: 80,
            margin: 40,
            crosscap_radius: 22,
            trunk_base: 36,
            trunk_step: 18,
            label_offset: 6,
            bottom: 70,
        }
    }
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// A curve to draw: its display name, id slug and index set.
pub struct RenderCurve {
    pub label: String,
    pub id: String,
    pub curve: CurveSymbol,
}

/// Parse a render argument: a named curve (`beta`, `mu4`, `alpha3`, ...) or
/// a literal index set `{1,3,5}`.
pub fn parse_curve_arg(arg: &str, genus: usize) -> Result<RenderCurve> {
    if let Some(inner) = arg.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
        let indices: Vec<usize> = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad index `{t}` in `{arg}`")))
            })
            .collect::<Result<_>>()?;
        let curve = CurveSymbol::positive(indices)?;
        curve.validate_for_genus(genus)?;
        let id = curve.indices().iter().map(|i| i.to_string()).collect::<Vec<_>>().join("-");
        Ok(RenderCurve { label: arg.to_string(), id: format!("curve-{id}"), curve })
    } else {
        let name = CurveName::parse(arg)?;
        let curve = canonical_curve(name, genus)?;
        Ok(RenderCurve { label: arg.to_string(), id: format!("curve-{arg}"), curve })
    }
}

fn span(c: &CurveSymbol) -> (usize, usize) {
    (*c.indices().first().unwrap(), *c.indices().last().unwrap())
}

fn contains_strictly(outer: (usize, usize), inner: (usize, usize)) -> bool {
    outer != inner && outer.0 <= inner.0 && inner.1 <= outer.1
}

/// Render the curves on a genus-`g` surface. Pure function of its inputs,
/// so repeated runs are byte-identical.
pub fn render(genus: usize, curves: &[RenderCurve], cfg: &LayoutConfig) -> String {
    // Elevation: curves whose span contains more of the others arc higher;
    // ties stack by input order.
    let spans: Vec<(usize, usize)> = curves.iter().map(|c| span(&c.curve)).collect();
    let elevations: Vec<i64> = (0..curves.len())
        .map(|i| {
            let containing = spans
                .iter()
                .enumerate()
                .filter(|&(j, &s)| j != i && contains_strictly(spans[i], s))
                .count() as i64;
            let earlier_same = spans[..i].iter().filter(|&&s| s == spans[i]).count() as i64;
            containing + earlier_same
        })
        .collect();
    let max_elev = elevations.iter().copied().max().unwrap_or(0);

    let cy = cfg.margin + cfg.trunk_base + cfg.trunk_step * (max_elev + 1);
    let width = cfg.margin * 2 + cfg.spacing * genus as i64;
    let height = cy + cfg.bottom;
    let cx = |i: usize| cfg.margin + cfg.spacing * (i as i64) - cfg.spacing / 2;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str(&format!(
        "  <line id=\"axis\" x1=\"{}\" y1=\"{cy}\" x2=\"{}\" y2=\"{cy}\" stroke=\"#bbbbbb\" \
         stroke-width=\"1\"/>\n",
        cfg.margin / 2,
        width - cfg.margin / 2
    ));
    for i in 1..=genus {
        out.push_str(&format!(
            "  <circle id=\"crosscap-{i}\" cx=\"{}\" cy=\"{cy}\" r=\"{}\" fill=\"#d9d9d9\" \
             stroke=\"#444444\" stroke-width=\"1\"/>\n",
            cx(i),
            cfg.crosscap_radius
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\" \
             fill=\"#444444\">{i}</text>\n",
            cx(i),
            cy + cfg.crosscap_radius + 16
        ));
    }
    for (k, rc) in curves.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let h = cy - cfg.trunk_base - cfg.trunk_step * elevations[k];
        let idx = rc.curve.indices();
        let (first, last) = span(&rc.curve);
        let mut d = format!("M {} {cy} V {h}", cx(first));
        if last != first {
            d.push_str(&format!(" H {}", cx(last)));
            d.push_str(&format!(" V {cy}",));
        }
        for &i in idx.iter().filter(|&&i| i != first && i != last) {
            d.push_str(&format!(" M {} {h} V {cy}", cx(i)));
        }
        let dash = if rc.curve.is_two_sided() {
            String::new()
        } else {
            " stroke-dasharray=\"6 3\"".to_string()
        };
        out.push_str(&format!(
            "  <path id=\"{}\" d=\"{d}\" fill=\"none\" stroke=\"{color}\" \
             stroke-width=\"1.5\"{dash}/>\n",
            rc.id
        ));
        out.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\" \
             fill=\"{color}\">{}</text>\n",
            (cx(first) + cx(last)) / 2,
            h - cfg.label_offset,
            rc.label
        ));
    }
    out.push_str("</svg>\n");
    out
}
