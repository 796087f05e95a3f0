//! Kernel values and their reflection and period identities on the reference
//! scene, plus the large-beta expansion of Z_N at one angle.

use nnwedge::kernels::{h_nn, z_nn, zn_expansion, zn_series_eval, ZN_TERMS};
use nnwedge::WedgeScene;
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() {
    let s = WedgeScene::reference();
    println!("Phi = {:.6}, q = {:.6}", s.big_phi(), s.q());
    let i = Complex64::i();
    for b in [
        Complex64::new(0.3, 0.2),
        Complex64::new(-1.7, 2.5),
        Complex64::new(2.2, -4.0),
    ] {
        let h = h_nn(&s, b).unwrap();
        let refl = h_nn(&s, -b + i * PI).unwrap();
        let per = h_nn(&s, b + i * 2.0 * s.big_phi()).unwrap();
        println!(
            "beta = {b:.2}: H_N = {h:.6}, |H(-b+i pi) + H(b)| = {:.1e}, |H(b+2i Phi) - H(b)| = {:.1e}",
            (refl + h).norm(),
            (per - h).norm()
        );
    }

    let theta = 3.6;
    let exp = zn_expansion(&s, theta);
    println!("\ntheta = {theta}: z_m = {:?}", exp.z);
    println!("series valid for |beta| > {:.3}", exp.core_radius());
    for beta in [3.0, 6.0, 9.0, 12.0] {
        let exact = z_nn(&s, Complex64::new(beta, 0.0), theta).unwrap();
        let series = zn_series_eval(&exp, beta, ZN_TERMS).unwrap();
        println!(
            "beta = {beta:>4}: |Z_N| = {:.4e}, series error = {:.2e}",
            exact.norm(),
            (exact - series).norm()
        );
    }
}
