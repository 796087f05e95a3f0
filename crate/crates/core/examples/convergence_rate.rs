//! Large-t decay of the diffracted residual against its predicted power laws,
//! for a generic wedge, the reference wedge and the half-plane.

use nnwedge::amplitude::{geometric_grid, rate_fit, rate_prediction, rate_prediction_leading};
use nnwedge::{PolarPoint, QuadratureSpec, WedgeScene};
use std::f64::consts::PI;

fn main() {
    let spec = QuadratureSpec::tight();
    let scenes = [
        (
            "phi=pi/3 alpha=pi/4",
            WedgeScene::derive(PI / 3.0, PI / 4.0, 1.0).unwrap(),
            3.0,
        ),
        ("phi=pi/2 alpha=pi/4", WedgeScene::reference(), 3.3),
        (
            "half-plane alpha=pi",
            WedgeScene::half_plane(PI, 1.0).unwrap(),
            2.0,
        ),
    ];
    for (name, s, theta) in scenes {
        let p = PolarPoint::new(&s, 1.0, theta).unwrap();
        let first = rate_prediction(&s, &p);
        let lead = rate_prediction_leading(&s, &p);
        let fit = rate_fit(&s, &p, &geometric_grid(10.0, 1000.0, 16), &spec).unwrap();
        println!("{name}, theta = {theta}");
        println!(
            "    first term:   Im t^{:.4} (coeff {:.4e}), Re t^{:.4} (coeff {:.4e})",
            first.im_exponent, first.im_coeff, first.re_exponent, first.re_coeff
        );
        if lead.order != first.order {
            println!(
                "    leading (m={}): Im t^{:.4} (coeff {:.4e}), Re t^{:.4}",
                lead.order, lead.im_exponent, lead.im_coeff, lead.re_exponent
            );
        }
        println!(
            "    fitted:       Im t^{:.4} (sign {}), Re t^{:.4} (sign {})",
            fit.im_slope, fit.im_sign, fit.re_slope, fit.re_sign
        );
    }
}
