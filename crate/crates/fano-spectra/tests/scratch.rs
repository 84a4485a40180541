use fano_spectra::model::BundleInstance;
use fano_spectra::reduction::constraint_system;
use fano_spectra::rootfinder::{find_roots, Precision};

#[test]
fn debug_large_n() {
    for n in [199u32, 500] {
        let inst = BundleInstance::new_fano_only(n, 3).unwrap();
        let sys = constraint_system(&inst).unwrap();
        match find_roots(&sys, Precision::Auto, 1e-10) {
            Ok(set) => {
                let mods: Vec<f64> = set.roots().iter().map(|z| z.norm()).collect();
                let nan_count = set.roots().iter().filter(|z| !z.re.is_finite() || !z.im.is_finite()).count();
                let min = mods.iter().cloned().fold(f64::INFINITY, f64::min);
                let max = mods.iter().cloned().fold(0.0, f64::max);
                let worst_res = set.residuals().iter().cloned().fold(0.0, f64::max);
                println!(
                    "n={n}: len={} iters={} nan={} minmod={:.6} maxmod={:.6} worst_res={:.3e} conj_defect={:.3e}",
                    set.len(),
                    set.iterations(),
                    nan_count,
                    min,
                    max,
                    worst_res,
                    set.conjugation_defect()
                );
                // worst conjugation offenders
                let mut worst: Vec<(f64, usize)> = set
                    .roots()
                    .iter()
                    .enumerate()
                    .map(|(i, &r)| {
                        let c = r.conj();
                        let d = set
                            .roots()
                            .iter()
                            .map(|&s| (s - c).norm())
                            .fold(f64::INFINITY, f64::min);
                        (d, i)
                    })
                    .collect();
                worst.sort_by(|a, b| b.0.total_cmp(&a.0));
                for (d, i) in worst.iter().take(4) {
                    println!(
                        "   root[{i}] = {:?} |.|={:.8} defect {:.3e} residual {:.3e}",
                        set.roots()[*i],
                        set.roots()[*i].norm(),
                        d,
                        set.residuals()[*i]
                    );
                }
            }
            Err(e) => println!("n={n}: ERROR {e}"),
        }
    }
}
