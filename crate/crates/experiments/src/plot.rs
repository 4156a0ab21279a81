//! gnuplot scripts over the emitted CSVs. Text only; nothing is rendered.

use std::fmt::Write as _;

use crate::runs::Report;

pub const PLOT_FILE: &str = "plot.gp";

fn preamble(out: &mut String, title: &str, xlabel: &str, ylabel: &str) {
    let _ = writeln!(out, "set datafile separator ','");
    let _ = writeln!(out, "set datafile commentschars '#'");
    let _ = writeln!(out, "set title '{title}'");
    let _ = writeln!(out, "set xlabel '{xlabel}'");
    let _ = writeln!(out, "set ylabel '{ylabel}'");
}

fn curves(out: &mut String, items: &[(String, usize, String, String)], style: &str) {
    let parts: Vec<String> = items
        .iter()
        .map(|(file, x, y, title)| {
            format!("'{file}' every ::1 using {x}:{y} with {style} title '{title}'")
        })
        .collect();
    let _ = writeln!(out, "plot {}", parts.join(", \\\n     "));
}

pub fn script(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Snapshots(r) => {
            preamble(
                &mut out,
                &format!("P(w), K={} N={}", r.kick, r.dim),
                "w",
                "P(w)",
            );
            let mut items: Vec<_> = r
                .snapshots
                .iter()
                .map(|s| (s.file.clone(), 1, "2".into(), format!("t={}", s.t)))
                .collect();
            items.push((r.reference_file.clone(), 1, "2".into(), "Gaussian".into()));
            curves(&mut out, &items, "lines");
        }
        Report::ExcessN(r) => {
            preamble(
                &mut out,
                &format!("excess, K={}", r.kick),
                "t / ln N",
                "excess",
            );
            let _ = writeln!(out, "set logscale y");
            let items: Vec<_> = r
                .cells
                .iter()
                .map(|c| {
                    (
                        c.file.clone(),
                        2,
                        "(abs($3))".into(),
                        format!("N={}", c.dim),
                    )
                })
                .collect();
            curves(&mut out, &items, "linespoints");
        }
        Report::ExcessK(r) => {
            preamble(
                &mut out,
                &format!("excess, N={}", r.dim),
                "lambda(K) t / ln N",
                "|excess|",
            );
            let _ = writeln!(out, "set logscale y");
            let items: Vec<_> = r
                .cells
                .iter()
                .map(|c| {
                    (
                        c.file.clone(),
                        5,
                        "(abs($3))".into(),
                        format!("K={}", c.kick),
                    )
                })
                .collect();
            curves(&mut out, &items, "linespoints");
        }
        Report::Negativity(r) => {
            preamble(
                &mut out,
                &format!("negative fraction, K={}", r.kick),
                "t / ln N",
                "P-",
            );
            let items: Vec<_> = r
                .cells
                .iter()
                .map(|c| (c.file.clone(), 2, "3".into(), format!("N={}", c.dim)))
                .collect();
            curves(&mut out, &items, "linespoints");
        }
        Report::Ensemble(r) => {
            preamble(
                &mut out,
                &format!("random states, N={}", r.dim),
                "w",
                "P(w)",
            );
            let items = vec![
                (
                    r.histogram_file.clone(),
                    1,
                    "2".into(),
                    "pooled".to_string(),
                ),
                (
                    r.reference_file.clone(),
                    1,
                    "2".into(),
                    "Gaussian".to_string(),
                ),
            ];
            curves(&mut out, &items, "lines");
        }
        Report::Wigner(r) => {
            preamble(&mut out, &format!("W(n, m), N={}", r.dim), "m", "n");
            let _ = writeln!(out, "set view map");
            let _ = writeln!(out, "plot '{}' matrix with image notitle", r.file);
        }
    }
    out
}
