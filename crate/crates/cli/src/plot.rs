//! Gnuplot script for detection-count step curves.

use std::fmt::Write;

/// One curve: label and `(λ_1, count)` points in grid order.
pub struct Curve {
    pub n_qubits: usize,
    pub n_recycled: usize,
    pub points: Vec<(f64, usize)>,
}

/// Self-contained script (data in inline blocks) rendering `image` as PNG.
pub fn step_plot_script(curves: &[Curve], image: &str) -> String {
    let mut s = String::new();
    s.push_str("# detection count against first-round sharpness\n");
    s.push_str("set terminal pngcairo size 900,600\n");
    let _ = writeln!(s, "set output {image:?}");
    s.push_str("set xlabel \"lambda_1\"\n");
    s.push_str("set ylabel \"detection count\"\n");
    s.push_str("set key top right\n");
    s.push_str("set xrange [0:1]\n");
    for c in curves {
        let _ = writeln!(s, "$n{}_r{} << EOD", c.n_qubits, c.n_recycled);
        for (x, y) in &c.points {
            let _ = writeln!(s, "{x} {y}");
        }
        s.push_str("EOD\n");
    }
    let plots: Vec<String> = curves
        .iter()
        .map(|c| {
            format!(
                "$n{}_r{} using 1:2 with steps title \"N={}, N0={}\"",
                c.n_qubits, c.n_recycled, c.n_qubits, c.n_recycled
            )
        })
        .collect();
    if !plots.is_empty() {
        let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
    }
    s
}
