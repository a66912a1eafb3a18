/// Gnuplot script drawing `arg(λ)` against `alpha` as points.
pub fn gnuplot_script(data_path: &str, image_path: &str) -> String {
    format!(
        "# Eigenvalue arguments of the evolution block against alpha = P/(4Q).
# Render with: gnuplot <this file>
set datafile separator ','
set datafile commentschars '#'
set key autotitle columnhead
set terminal pngcairo size 1600,1200
set output '{image_path}'
set xlabel 'alpha = P/(4Q)'
set ylabel 'arg(lambda)'
set xrange [0:1]
set yrange [-pi:pi]
set ytics ('-pi' -pi, '-pi/2' -pi/2, '0' 0, 'pi/2' pi/2, 'pi' pi)
plot '{data_path}' using 3:4 with dots linecolor rgb 'black' notitle
"
    )
}
