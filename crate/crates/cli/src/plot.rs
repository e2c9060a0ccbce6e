//! Gnuplot script that shades motif occurrence spans over the series.

use std::fmt::Write;

use mta_core::engine::MotifPool;
use mta_core::preprocess::word_to_string;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

/// Two-column `index,value` data for the plot script.
pub fn series_csv(values: &[f64]) -> String {
    let mut out = String::with_capacity(values.len() * 12);
    out.push_str("index,value\n");
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{i},{v}");
    }
    out
}

/// Script plotting `data_file` with the first `max_motifs` motifs of the
/// pool highlighted, one colour per motif.
pub fn gnuplot_script(title: &str, data_file: &str, pool: &MotifPool, max_motifs: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# motif occurrence overlay; render with: gnuplot -p plot.gp");
    let _ = writeln!(out, "set datafile separator ','");
    let _ = writeln!(out, "set key off");
    let _ = writeln!(out, "set title \"{}\"", title.replace('"', "'"));
    let _ = writeln!(out, "set xlabel 'index'");
    let _ = writeln!(out, "set ylabel 'value'");
    let mut object = 1;
    for (k, motif) in pool.iter().take(max_motifs).enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        let _ = writeln!(
            out,
            "# motif {} word {} length {} occurrences {:?}",
            k + 1,
            word_to_string(&motif.word),
            motif.length_points,
            motif.occurrences
        );
        for &start in &motif.occurrences {
            let _ = writeln!(
                out,
                "set object {object} rect from {start}, graph 0 to {}, graph 1 behind fc rgb '{colour}' fs transparent solid 0.15 noborder",
                start + motif.length_points
            );
            object += 1;
        }
    }
    let _ = writeln!(out, "plot '{data_file}' using 1:2 skip 1 with lines lc rgb 'black'");
    out
}
