//! Products, norms and the bracketing that matters.

use woclct::octonion::split_identity_residuals;
use woclct::{Octonion, Quaternion};

fn main() {
    let e = Octonion::basis;
    println!("(e1 e2) e4 = {:?}", ((e(1) * e(2)) * e(4)).0);
    println!("e1 (e2 e4) = {:?}", (e(1) * (e(2) * e(4))).0);

    let x = Octonion([0.5, -1.0, 2.0, 0.25, 1.5, -0.5, 0.75, 1.0]);
    let y = Octonion([1.0, 0.5, -0.25, 2.0, 0.0, 1.0, -1.5, 0.5]);
    let z = Octonion([-0.3, 0.2, 0.9, -1.1, 0.4, 0.0, 0.6, -0.8]);
    println!(
        "|xy| - |x||y| = {:.3e}",
        (x * y).norm() - x.norm() * y.norm()
    );
    println!(
        "associator |(xy)z - x(yz)| = {:.3}",
        ((x * y) * z - x * (y * z)).norm()
    );
    println!(
        "alternative |(xx)y - x(xy)| = {:.3e}",
        ((x * x) * y - x * (x * y)).norm()
    );

    let (g, d) = (
        Quaternion::new(0.3, -1.0, 0.5, 2.0),
        Quaternion::new(1.0, 0.2, -0.7, 0.4),
    );
    println!("split identities: {:?}", split_identity_residuals(g, d));
}
