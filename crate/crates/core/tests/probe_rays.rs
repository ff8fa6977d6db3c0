// Temporary diagnostic: compare ray-interval lengths against dense membership
// sampling along each ray for the normalized L-shape.
use freeplate_core::iso::{normalize_volume, DomainSpec};

#[test]
fn probe_l_shape_rays() {
    let l = normalize_volume(
        &DomainSpec::polygon(vec![
            [0.0, 0.0],
            [2.0, 0.0],
            [2.0, 1.0],
            [1.0, 1.0],
            [1.0, 2.0],
            [0.0, 2.0],
        ])
        .unwrap(),
    )
    .unwrap();
    let v = [0.5f64, 0.5];
    let rmax = 4.0;
    let n = 256;
    let mut worst = (0.0f64, 0usize);
    for j in 0..n {
        let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.37) / n as f64;
        let u = [th.cos(), th.sin()];
        // dense sampling
        let m = 200000;
        let mut len_dense = 0.0;
        for i in 0..m {
            let t = rmax * (i as f64 + 0.5) / m as f64;
            if l.contains(&[v[0] + t * u[0], v[1] + t * u[1]]) {
                len_dense += rmax / m as f64;
            }
        }
        let len_ray = freeplate_core::iso::ray_interval_length_for_test(&l, &v, &u, rmax);
        let diff = (len_dense - len_ray).abs();
        if diff > worst.0 {
            worst = (diff, j);
        }
    }
    panic!("worst diff {} at ray {}", worst.0, worst.1);
}
