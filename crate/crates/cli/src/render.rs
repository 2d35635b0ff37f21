//! ASCII drawings of trapezoids in the usual two-row layout: row 1 above
//! row 2, both left-aligned, so that column `j` of one row sits over column
//! `j` of the other.

use gogmagog::bijection::{compute_pivot, find_smallest_bug};
use gogmagog::{cell_upper_bound, Entry, Result, Trapezoid};

#[derive(Debug, Clone)]
pub struct RenderSpec {
    pub instance: Trapezoid,
    /// Magog only: draw `\` between the columns of the smallest bug.
    pub mark_bug: bool,
    /// Gog only: draw `\` between the columns around the pivot.
    pub mark_pivot: bool,
    pub show_bounds: bool,
}

impl RenderSpec {
    pub fn plain(instance: Trapezoid) -> Self {
        RenderSpec {
            instance,
            mark_bug: false,
            mark_pivot: false,
            show_bounds: false,
        }
    }
}

fn draw_row(values: &[Entry], width: usize, marked_gap: Option<usize>) -> String {
    let mut line = String::new();
    for (idx, v) in values.iter().enumerate() {
        let j = idx + 1;
        line.push_str(&format!("{v:<width$}"));
        if j < values.len() {
            line.push(if marked_gap == Some(j) { '\\' } else { ' ' });
        }
    }
    line.trim_end().to_string()
}

pub fn render_ascii(spec: &RenderSpec) -> Result<String> {
    let t = &spec.instance;
    t.ensure_valid()?;
    let params = t.params();

    let mut gap = None;
    let mut note = None;
    match t {
        Trapezoid::Magog(m) if spec.mark_bug => {
            let bug = find_smallest_bug(m)?;
            gap = bug;
            note = Some(match bug {
                Some(k) => format!("bug k={k}"),
                None => "no bug".to_string(),
            });
        }
        Trapezoid::Gog(g) if spec.mark_pivot => {
            let k = compute_pivot(g)?;
            gap = Some(k);
            note = Some(format!("pivot k={k}"));
        }
        _ => {}
    }

    let bounds: Option<[Vec<Entry>; 2]> = if spec.show_bounds {
        let row_bounds = |row: usize| -> Result<Vec<Entry>> {
            (1..=t.row(row).len())
                .map(|j| cell_upper_bound(t.kind(), row, j, params))
                .collect()
        };
        Some([row_bounds(1)?, row_bounds(2)?])
    } else {
        None
    };

    let width = t
        .row1()
        .iter()
        .chain(t.row2())
        .chain(bounds.iter().flatten().flatten())
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);

    let mut out = String::new();
    for row in 1..=2 {
        out.push_str(&draw_row(t.row(row), width, gap));
        out.push('\n');
    }
    if let Some(note) = note {
        out.push_str(&note);
        out.push('\n');
    }
    if let Some([b1, b2]) = bounds {
        out.push_str("bounds:\n");
        out.push_str(&draw_row(&b1, width, None));
        out.push('\n');
        out.push_str(&draw_row(&b2, width, None));
        out.push('\n');
    }
    Ok(out)
}
