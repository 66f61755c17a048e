//! Values frozen from an independent 30-digit evaluation.

use cubic_core::fatou::{cubic_escape_root, dm_fatou_root, fatou_ball};
use cubic_core::infinity::{build_gamma_ij, escape_cascade, markoff_through, GammaStyle};
use cubic_core::{re, ParameterQuadruple, C64};

fn close(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs()
}

#[test]
fn escape_cascade_log_distances() {
    // (level, label, ln dist)
    let frozen = [
        (0, "gamma_2_1", -608.1393255394021),
        (0, "gamma_2_3", -451.563539385807),
        (0, "gamma_3_1", -178.9957867515373),
        (0, "gamma_3_2", -183.0476761465466),
        (1, "tau_2", -6798368057.022338),
        (1, "tau_3", -2755031006.251612),
        (2, "gamma_2_1", -3.737667059214965e38),
        (2, "gamma_2_3", -3.491442825835869e38),
        (2, "gamma_3_1", -1.133681463005378e38),
        (2, "gamma_3_2", -1.414903276941094e38),
        (3, "tau_2", -3.701824030966491e153),
        (3, "tau_3", -8.403782764407937e152),
    ];
    let q = [re(1e4), re(2.0), re(3.0)];
    let p = markoff_through(&q);
    let cert = escape_cascade(&p, &build_gamma_ij(GammaStyle::MarkoffCommutators), &q, 3).unwrap();
    assert!(close(cert.ln_dist_start, -7.927865693245415, 1e-14));
    assert_eq!(cert.steps.len(), frozen.len());
    for (s, (n, label, want)) in cert.steps.iter().zip(frozen) {
        assert_eq!((s.n, s.label.as_str()), (n, label));
        assert!(close(s.ln_dist, want, 1e-12), "{label} at level {n}: {} vs {want}", s.ln_dist);
        assert_eq!(s.reached, s.expected);
    }
}

#[test]
fn torus_family_escape_roots() {
    let frozen = [
        (re(-1.0), C64::new(-3.103803402735537, 0.0)),
        (re(10.0), C64::new(-2.246016650585908, 1.287506303134853)),
        (C64::new(0.0, 5.0), C64::new(-3.145223217481055, 0.4724682492967574)),
        (re(0.0), C64::new(-3.0, 0.0)),
    ];
    for (d, want) in frozen {
        let u = cubic_escape_root(d).unwrap();
        // complex D has a unique largest root; D = 10 has a conjugate pair
        let err = (u - want).norm().min((u - want.conj()).norm());
        assert!(err < 1e-13, "D = {d}: {u} vs {want}");
    }
}

#[test]
fn dm_fatou_roots() {
    for (a, want) in [(-1.5, -3.685206718579719), (0.0, -5.464101615137755), (1.2, -6.440282584420147)] {
        let u = dm_fatou_root(a).unwrap();
        assert!(close(u, want, 1e-14), "a = {a}: {u} vs {want}");
    }
}

#[test]
fn markoff_fatou_ball_radius() {
    let mk = ParameterQuadruple::markoff();
    let ball = fatou_ball(mk.a, mk.b, mk.c, 3.0).unwrap();
    assert!(close(ball.epsilon, 0.3944487245360107, 1e-15));
}
