//! Plot-script emission: a gnuplot file per scenario that reproduces the
//! corresponding figure layout from the raw CSV artifacts.

use crate::scenario::RunArtifacts;

pub fn plot_script(name: &str, art: &RunArtifacts) -> String {
    let mut gp = String::new();
    gp.push_str("# gnuplot script; run from this directory: gnuplot plot.gp\n");
    gp.push_str("set datafile separator ','\n");
    gp.push_str("set terminal pngcairo size 900,1200 enhanced\n");
    gp.push_str(&format!("set output '{name}.png'\n"));
    let panels: Vec<&str> = art
        .outcomes
        .iter()
        .filter_map(|o| o.csv.as_ref().map(|(f, _)| f.as_str()))
        .collect();
    let rows = panels.len().max(1) + usize::from(art.fields_csv.is_some());
    gp.push_str(&format!("set multiplot layout {rows},1\n"));
    if art.fields_csv.is_some() {
        gp.push_str("set title 'densities'\n");
        gp.push_str(
            "plot 'fields.csv' skip 1 using 1:2 with lines title 'rho', \\\n     '' skip 1 using 1:3 with lines title 'tau', \\\n     '' skip 1 using 1:4 with lines title 'tau1', \\\n     '' skip 1 using 1:5 with lines title 'xi'\n",
        );
    }
    for f in panels {
        let title = f.trim_end_matches(".csv");
        gp.push_str(&format!("set title '{title}'\n"));
        gp.push_str(&format!(
            "plot '{f}' skip 1 using 1:2 with lines title 'lhs', \\\n     '{f}' skip 1 using 1:3 with lines dashtype 2 title 'rhs'\n"
        ));
    }
    gp.push_str("unset multiplot\n");
    gp
}
