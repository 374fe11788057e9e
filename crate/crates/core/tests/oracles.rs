//! Cross-checks of the closed forms against slower, independent computations.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ttqc::channels::{apply_channel, closed_form, NoiseKind, NoiseSpec};
use ttqc::qmat::{hermitian_eigen, kron, pauli, sqrt_psd, ComplexMatrix};
use ttqc::quantifiers::{
    bell_nonlocality, concurrence_general, concurrence_xstate, geometric_discord, steering,
    ChshEigenvalues,
};
use ttqc::spin_density::{xstate_direct, KinematicPoint, ProductionChannel, XState};
use ttqc::teleport::{
    fidelity_direct, input_density, teleport_output_closed, BellBasis, InputStateParams,
};

fn random_xstate(rng: &mut ChaCha8Rng) -> XState {
    let w: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.01..1.0));
    let n: f64 = w.iter().sum();
    let [r11, r22, r33, r44] = w.map(|v| v / n);
    let r14 = Complex64::from_polar(rng.gen::<f64>() * (r11 * r44).sqrt(), rng.gen_range(0.0..2.0 * PI));
    let r23 = Complex64::from_polar(rng.gen::<f64>() * (r22 * r33).sqrt(), rng.gen_range(0.0..2.0 * PI));
    XState::new(r11, r22, r33, r44, r14, r23).unwrap()
}

/// States produced by the physics pipeline, including noisy ones.
fn production_states() -> Vec<XState> {
    let mut out = Vec::new();
    for channel in [ProductionChannel::GluonFusion, ProductionChannel::QuarkAnnihilation] {
        for beta in [0.0, 0.3, 0.7, 0.95] {
            for z in [-0.8, 0.0, 0.45] {
                let x = xstate_direct(channel, &KinematicPoint::new(beta, z).unwrap()).unwrap();
                out.push(x);
                for kind in NoiseKind::ALL {
                    out.push(closed_form(&NoiseSpec::new(kind, 0.35).unwrap(), &x).unwrap());
                }
            }
        }
    }
    out
}

fn sample_states() -> Vec<XState> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut states = production_states();
    states.extend((0..60).map(|_| random_xstate(&mut rng)));
    states
}

/// T_ij = Tr[ρ σ_i ⊗ σ_j].
fn correlation_tensor(rho: &ComplexMatrix) -> [[f64; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let s = kron(&pauli(i + 1), &pauli(j + 1)).unwrap();
            rho.matmul(&s).unwrap().trace().re
        })
    })
}

/// Eigenvalues of a real symmetric 3×3 matrix by cyclic Jacobi rotations,
/// in descending order.
#[allow(clippy::needless_range_loop)]
fn symmetric_eigenvalues(mut a: [[f64; 3]; 3]) -> [f64; 3] {
    for _ in 0..50 {
        let off = a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2);
        if off < 1e-30 {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if a[p][q] == 0.0 {
                continue;
            }
            let tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
            let t = if tau == 0.0 { 1.0 } else { t };
            let c = 1.0 / (1.0 + t * t).sqrt();
            let s = t * c;
            for k in 0..3 {
                let (akp, akq) = (a[k][p], a[k][q]);
                a[k][p] = c * akp - s * akq;
                a[k][q] = s * akp + c * akq;
            }
            for k in 0..3 {
                let (apk, aqk) = (a[p][k], a[q][k]);
                a[p][k] = c * apk - s * aqk;
                a[q][k] = s * apk + c * aqk;
            }
        }
    }
    let mut e = [a[0][0], a[1][1], a[2][2]];
    e.sort_by(|x, y| y.total_cmp(x));
    e
}

#[test]
fn chsh_value_matches_horodecki_criterion() {
    for x in sample_states() {
        let t = correlation_tensor(&x.to_dense());
        let m: [[f64; 3]; 3] =
            std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| t[k][i] * t[k][j]).sum()));
        let u = symmetric_eigenvalues(m);
        let oracle = 2.0 * (u[0] + u[1]).sqrt();
        let got = ChshEigenvalues::of(&x).chsh_value();
        assert!((got - oracle).abs() < 1e-10, "{x:?}: {got} vs {oracle}");

        let want = ((oracle - 2.0) / (2.0 * 2f64.sqrt() - 2.0)).max(0.0);
        assert!((bell_nonlocality(&x).unwrap() - want).abs() < 1e-10);
    }
}

#[test]
fn steering_matches_frobenius_norm_of_correlation_tensor() {
    for x in sample_states() {
        let t = correlation_tensor(&x.to_dense());
        let f3 = t.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
        let want = ((f3 - 1.0) / (3f64.sqrt() - 1.0)).max(0.0);
        let got = steering(&x).unwrap();
        assert!((got - want).abs() < 1e-10, "{x:?}: {got} vs {want}");
    }
}

fn partial_transpose(rho: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(4).unwrap();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    out[(2 * a + b, 2 * c + d)] = rho[(2 * a + d, 2 * c + b)];
                }
            }
        }
    }
    out
}

#[test]
fn concurrence_agrees_with_wootters_and_ppt() {
    for x in sample_states() {
        let rho = x.to_dense();
        let c = concurrence_xstate(&x).unwrap();
        let wootters = concurrence_general(&rho).unwrap();
        assert!((c - wootters).abs() < 1e-7, "{x:?}: {c} vs {wootters}");

        let min_pt = *hermitian_eigen(&partial_transpose(&rho)).unwrap().values.last().unwrap();
        if min_pt < -1e-9 {
            assert!(c > 0.0, "{x:?}: NPT but zero concurrence");
        }
        if min_pt > 1e-9 {
            assert!(c < 1e-9, "{x:?}: PPT but concurrence {c}");
        }
    }
}

fn trace_norm(m: &ComplexMatrix) -> f64 {
    hermitian_eigen(m).unwrap().values.iter().map(|v| v.abs()).sum()
}

/// ½‖ρ − Π_n(ρ)‖₁ for a projective measurement along `n` on the first qubit.
fn measurement_disturbance(rho: &ComplexMatrix, theta: f64, phi: f64) -> f64 {
    let n = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
    let ns = (1..4).fold(ComplexMatrix::zeros(2).unwrap(), |acc, k| acc + pauli(k).scale_real(n[k - 1]));
    let id = pauli(0);
    let mut measured = ComplexMatrix::zeros(4).unwrap();
    for sign in [1.0, -1.0] {
        let proj = kron(&(id + ns.scale_real(sign)).scale_real(0.5), &id).unwrap();
        measured = measured + proj.matmul(rho).unwrap().matmul(&proj).unwrap();
    }
    0.5 * trace_norm(&(*rho - measured))
}

fn brute_force_discord(rho: &ComplexMatrix) -> f64 {
    let f = |t: f64, p: f64| measurement_disturbance(rho, t, p);
    let (nt, np) = (16, 32);
    let (mut bt, mut bp, mut best) = (0.0, 0.0, f(0.0, 0.0));
    for i in 0..=nt {
        for j in 0..np {
            let (t, p) = (PI * i as f64 / nt as f64, 2.0 * PI * j as f64 / np as f64);
            let v = f(t, p);
            if v < best {
                (bt, bp, best) = (t, p, v);
            }
        }
    }
    let mut step = PI / nt as f64;
    while step > 1e-10 {
        let mut moved = false;
        for (dt, dp) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let v = f(bt + dt, bp + dp);
            if v < best {
                (bt, bp, best) = (bt + dt, bp + dp, v);
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    best
}

#[test]
fn discord_matches_measurement_minimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut states = production_states();
    states.extend((0..12).map(|_| random_xstate(&mut rng)));
    for x in states {
        let want = brute_force_discord(&x.to_dense());
        let got = geometric_discord(&x).unwrap();
        assert!((got - want).abs() < 1e-8, "{x:?}: {got} vs {want}");
    }
}

#[test]
fn fidelity_matches_uhlmann_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for x in sample_states() {
        let s = InputStateParams::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI)).unwrap();
        let out = teleport_output_closed(&x, &s).unwrap();
        let root_in = sqrt_psd(&input_density(&s).unwrap()).unwrap();
        let inner = root_in.matmul(&out.to_dense()).unwrap().matmul(&root_in).unwrap();
        let inner = (inner + inner.adjoint()).scale_real(0.5);
        let uhlmann = sqrt_psd(&inner).unwrap().trace().re.powi(2);
        let got = fidelity_direct(&s, &out).unwrap();
        assert!((got - uhlmann).abs() < 1e-7, "{x:?} {s:?}: {got} vs {uhlmann}");
    }
}

#[test]
fn kraus_sums_match_closed_forms() {
    for x in sample_states() {
        for kind in NoiseKind::ALL {
            for p in [0.0, 0.2, 0.5, 0.9, 1.0] {
                let spec = NoiseSpec::new(kind, p).unwrap();
                let dense = apply_channel(&spec, &x.to_dense()).unwrap();
                let closed = closed_form(&spec, &x).unwrap().to_dense();
                assert!(dense.max_abs_diff(&closed) < 1e-14, "{kind:?} p={p} {x:?}");
            }
        }
    }
}

/// Teleports a two-qubit input through two copies of `resource` by explicit
/// Bell measurements and Pauli corrections, averaged over all outcomes.
///
/// Qubit order is (a1, a2) for the input and (c, b) for each resource copy;
/// Alice holds a and c, Bob holds b.
fn simulate_protocol(rho_in: &ComplexMatrix, resource: &ComplexMatrix) -> ComplexMatrix {
    let basis = BellBasis::new();
    let idx = |hi: usize, lo: usize| 2 * hi + lo;
    let mut total = ComplexMatrix::zeros(4).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let (ei, ej) = (&basis.projectors[i], &basis.projectors[j]);
            let mut bob = ComplexMatrix::zeros(4).unwrap();
            for bits in 0..1usize << 12 {
                let bit = |k: usize| (bits >> k) & 1;
                let (a1, a2, a1p, a2p) = (bit(0), bit(1), bit(2), bit(3));
                let (c1, c2, c1p, c2p) = (bit(4), bit(5), bit(6), bit(7));
                let (b1, b2, b1p, b2p) = (bit(8), bit(9), bit(10), bit(11));
                let w = ei[(idx(a1p, c1p), idx(a1, c1))]
                    * ej[(idx(a2p, c2p), idx(a2, c2))]
                    * rho_in[(idx(a1, a2), idx(a1p, a2p))]
                    * resource[(idx(c1, b1), idx(c1p, b1p))]
                    * resource[(idx(c2, b2), idx(c2p, b2p))];
                bob[(idx(b1, b2), idx(b1p, b2p))] += w;
            }
            let u = kron(&BellBasis::correction(i), &BellBasis::correction(j)).unwrap();
            total = total + u.matmul(&bob).unwrap().matmul(&u.adjoint()).unwrap();
        }
    }
    total
}

#[test]
fn closed_teleportation_matches_explicit_protocol() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut resources = production_states();
    resources.truncate(24);
    for x in resources {
        let s = InputStateParams::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI)).unwrap();
        let simulated = simulate_protocol(&input_density(&s).unwrap(), &x.to_dense());
        let closed = teleport_output_closed(&x, &s).unwrap().to_dense();
        assert!(simulated.max_abs_diff(&closed) < 1e-12, "{x:?} {s:?}");
    }
}

#[test]
fn maximally_entangled_reference_resource_teleports_perfectly() {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let reference = ComplexMatrix::outer(&[h, zero, zero, h]).unwrap();
    let resource = XState::from_dense(&reference, 1e-15).unwrap();
    for (varphi, phi) in [(0.3, 0.0), (PI / 2.0, 1.0), (2.5, 4.0)] {
        let s = InputStateParams::new(varphi, phi).unwrap();
        let rho_in = input_density(&s).unwrap();
        assert!(simulate_protocol(&rho_in, &reference).max_abs_diff(&rho_in) < 1e-12);
        let out = teleport_output_closed(&resource, &s).unwrap();
        assert!((fidelity_direct(&s, &out).unwrap() - 1.0).abs() < 1e-12);
    }
}
