//! Exit criteria for the rate-region library. Each criterion prints one
//! PASS/FAIL line; run with `--nocapture` to see them.

mod common;

use rand::Rng;
use twrc::discrete::{self, DmTwrc, InputDistribution, SearchConfig, X1, X2, XR, Y2, U1};
use twrc::geometry::{self, R1Grid, RatePoint};
use twrc::oracle::{self, RawBounds1};
use twrc::schemes::{self, IValues, RateConstraintSet, Scheme, SumBound};
use twrc::{GaussianTwrc, SplitParams};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ch(p1: f64, p2: f64, pr: f64, n1: f64, n2: f64, nr: f64) -> GaussianTwrc {
    GaussianTwrc::new(p1, p2, pr, n1, n2, nr).unwrap()
}

fn asym_pdf() -> GaussianTwrc {
    ch(20.0, 20.0, 20.0, 2.0, 30.0, 6.0)
}

fn within(got: (f64, f64), want: (f64, f64), tol: f64) -> bool {
    (got.0 - want.0).abs() <= tol && (got.1 - want.1).abs() <= tol
}

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn partial_df_corner() -> (f64, f64) {
    let set = schemes::partial_decode_forward(&asym_pdf(), &SplitParams::new(1.0, 0.5, 0.0).unwrap());
    (set.r1_max, set.max_r2_at(set.r1_max).unwrap())
}

fn c1_partial_df_point() -> Outcome {
    let got = partial_df_corner();
    check(within(got, (0.58, 1.47), 0.01), format!("corner = ({:.4}, {:.4}), target (0.58, 1.47) ± 0.01", got.0, got.1))
}

fn c2_outside_hull() -> Outcome {
    let c = asym_pdf();
    let mut pts = schemes::decode_forward(&c).corners();
    pts.extend(schemes::direct_transmission(&c).corners());
    let hull = geometry::convex_hull(&pts).map_err(|e| e.to_string())?;
    let (r1, r2) = partial_df_corner();
    let h = geometry::hull_height_at(&hull, r1).unwrap_or(0.0);
    check(
        r2 - h > 0.01 && !geometry::hull_contains(&hull, RatePoint::new(r1, r2), 0.0),
        format!("hull height at R1={r1:.4} is {h:.4}; point R2={r2:.4}; margin {:.4} > 0.01", r2 - h),
    )
}

fn c3_combined_asym() -> Outcome {
    let c = ch(50.0, 40.0, 20.0, 20.0, 40.0, 15.0);
    let (sp, set) = schemes::combined_best_gamma(&c, 0.5, 0.0, 101).map_err(|e| e.to_string())?;
    let got = (set.r1_max, set.r2_max);
    check(
        within(got, (0.678, 0.859), 0.01),
        format!("gamma={:.2}: ({:.4}, {:.4}), target (0.678, 0.859) ± 0.01", sp.gamma, got.0, got.1),
    )
}

fn c4_combined_sym() -> Outcome {
    let c = ch(20.0, 20.0, 20.0, 8.0, 8.0, 6.0);
    let (sp, set) = schemes::combined_best_gamma(&c, 0.48, 0.0, 101).map_err(|e| e.to_string())?;
    let got = (set.r1_max, set.r2_max);
    check(
        within(got, (0.69, 1.01), 0.02),
        format!("gamma={:.2}: ({:.4}, {:.4}), target (0.69, 1.01) ± 0.02", sp.gamma, got.0, got.1),
    )
}

fn c5_improvement() -> Outcome {
    let yes = asym_pdf();
    let no = ch(20.0, 20.0, 20.0, 12.0, 12.0, 6.0);
    let v_yes = schemes::pdf_improvement_condition(&yes);
    let v_no = schemes::pdf_improvement_condition(&no);

    let pdf = schemes::region_sweep(&yes, Scheme::PartialDf, 101).map_err(|e| e.to_string())?;
    let df = schemes::region_sweep(&yes, Scheme::Df, 101).map_err(|e| e.to_string())?;
    let grid = R1Grid::new(pdf.max_r1().max(df.max_r1()), 201).map_err(|e| e.to_string())?;
    let (mut pdf, mut df) = (pdf, df);
    pdf.compute_boundary(grid).map_err(|e| e.to_string())?;
    df.compute_boundary(grid).map_err(|e| e.to_string())?;
    let superset = geometry::dominates(&pdf, &df, geometry::DOMINANCE_TOL).map_err(|e| e.to_string())?;
    let (excess, at) = geometry::max_excess(pdf.boundary.as_ref().unwrap(), df.boundary.as_ref().unwrap())
        .map_err(|e| e.to_string())?
        .unwrap_or((0.0, 0.0));
    check(
        v_yes && !v_no && superset && excess > 0.05,
        format!("verdicts ({v_yes}, {v_no}); partial DF ⊇ DF: {superset}; max excess {excess:.4} at R1={at:.4}"),
    )
}

fn random_ivalues(rng: &mut rand::rngs::StdRng, k: usize) -> IValues {
    if k.is_multiple_of(2) {
        let c = common::random_channel(rng);
        let sp = SplitParams::new(rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0)).unwrap();
        IValues::evaluate(&c, &sp)
    } else {
        let mut u = || -> f64 { rng.random_range(0.0..2.0) };
        let (i1, i2) = (u(), u());
        let (i4, i5, i6, i7, i8, i9) = (u(), u(), u(), u(), u(), u());
        // MAC polymatroid: max(i1, i2) ≤ i3 ≤ i1 + i2
        let i3 = rng.random_range(i1.max(i2)..=i1 + i2);
        IValues { i1, i2, i3, i4, i5, i6, i7, i8, i9 }
    }
}

fn random_bounds1(rng: &mut rand::rngs::StdRng, k: usize) -> RawBounds1 {
    if k.is_multiple_of(5) {
        let dm = common::random_dm(rng);
        let dist = common::random_input(rng);
        discrete::theorem1_bounds(&dm, &dist).unwrap()
    } else {
        let mut u = || -> f64 { rng.random_range(0.0..2.0) };
        let (b_u1, b_u2) = (u(), u());
        let (b_x1_given, b_x2_given) = (u(), u());
        let (b_x1_total, b_x2_total) = (2.0 * u(), 2.0 * u());
        let b_u12 = rng.random_range(b_u1.max(b_u2)..=b_u1 + b_u2);
        RawBounds1 { b_u1, b_u2, b_u12, b_x1_given, b_x1_total, b_x2_given, b_x2_total }
    }
}

fn sample_point(rng: &mut rand::rngs::StdRng, set: &RateConstraintSet) -> RatePoint {
    let r1 = rng.random_range(0.0..=1.2 * set.r1_max + 1e-3);
    let r2 = rng.random_range(0.0..=1.2 * set.r2_max + 1e-3);
    RatePoint::new(r1, r2)
}

fn c6_fme_equivalence() -> Outcome {
    let mut rng = common::rng(6);
    let (mut checked2, mut bad2, mut inside2) = (0usize, 0usize, 0usize);
    for k in 0..1000 {
        let iv = random_ivalues(&mut rng, k);
        let region = iv.region();
        for _ in 0..100 {
            let p = sample_point(&mut rng, &region);
            let raw = oracle::theorem2_raw_feasible(&iv, p);
            let closed = geometry::contains(&region, p);
            checked2 += 1;
            inside2 += closed as usize;
            bad2 += (raw != closed) as usize;
        }
    }
    let (mut checked1, mut bad1, mut inside1) = (0usize, 0usize, 0usize);
    for k in 0..1000 {
        let b = random_bounds1(&mut rng, k);
        let region = discrete::theorem1_pentagon(&b);
        for _ in 0..100 {
            let p = sample_point(&mut rng, &region);
            let raw = oracle::theorem1_raw_feasible(&b, p);
            let closed = geometry::contains(&region, p);
            checked1 += 1;
            inside1 += closed as usize;
            bad1 += (raw != closed) as usize;
        }
    }
    check(
        bad1 == 0 && bad2 == 0 && inside1 > checked1 / 10 && inside2 > checked2 / 10,
        format!(
            "combined system: {bad2} disagreements / {checked2} ({inside2} inside); \
             partial-DF system: {bad1} / {checked1} ({inside1} inside)"
        ),
    )
}

fn c7_special_cases() -> Outcome {
    let mut rng = common::rng(7);
    let mut bad = 0;
    for _ in 0..100 {
        let c = common::random_channel(&mut rng);
        let g = rng.random_range(0.0..=1.0);
        if schemes::partial_decode_forward(&c, &SplitParams::new(1.0, 1.0, g).unwrap()) != schemes::decode_forward(&c) {
            bad += 1;
        }
        let cf = schemes::compute_forward(&c);
        if schemes::combined_df_cf(&c, &SplitParams::ZERO) != cf || cf.sum_max != SumBound::Unbounded {
            bad += 1;
        }
    }
    check(bad == 0, format!("{bad} field mismatches over 100 channels"))
}

fn c8_outer_bound() -> Outcome {
    let mut rng = common::rng(8);
    let tol = 1e-9;
    let mut worst = f64::NEG_INFINITY;
    let mut violations = 0;
    let mut points = 0;
    for _ in 0..50 {
        let c = common::random_channel(&mut rng);
        let outer = schemes::cutset_bound(&c, schemes::DEFAULT_GRID).map_err(|e| e.to_string())?;
        for (scheme, grid) in [
            (Scheme::Direct, 2),
            (Scheme::Df, 2),
            (Scheme::PartialDf, 21),
            (Scheme::Cf, 2),
            (Scheme::Combined, 11),
        ] {
            let region = schemes::region_sweep(&c, scheme, grid).map_err(|e| e.to_string())?;
            let boundary = geometry::union_boundary(&region.pentagons, 101).map_err(|e| e.to_string())?;
            let corners = region.pentagons.iter().flat_map(|s| s.corners());
            for p in boundary.into_iter().chain(corners) {
                points += 1;
                let excess = (p.r1 - outer.r1_max).max(p.r2 - outer.r2_max);
                worst = worst.max(excess);
                if excess > tol {
                    violations += 1;
                }
            }
        }
    }
    check(
        violations == 0,
        format!("{violations} violations over {points} boundary points; worst excess {worst:.3e}"),
    )
}

fn c9_dm_sanity() -> Outcome {
    let dm = DmTwrc::noiseless_binary();
    let dist = InputDistribution::auxiliary_equals_input(&[0.5; 2], &[0.5; 2], &[0.5; 2]).unwrap();
    let set = discrete::theorem1_region(&dm, &dist).map_err(|e| e.to_string())?;
    let sum = set.sum_max.value().unwrap_or(f64::NAN);
    let exact = (set.r1_max - 1.0).abs() < 1e-9 && (set.r2_max - 1.0).abs() < 1e-9 && (sum - 2.0).abs() < 1e-9;
    let region = discrete::exhaustive_search(&dm, &SearchConfig { steps: 2, ..Default::default() })
        .map_err(|e| e.to_string())?;
    let has_unit = region.contains(RatePoint::new(1.0, 1.0));
    check(
        exact && has_unit,
        format!("uniform U=X: ({}, {}, {sum}); search at 1/2 contains (1,1): {has_unit}", set.r1_max, set.r2_max),
    )
}

/// Monotone directions that hold at fixed split parameters.
fn c10a_monotonicity() -> usize {
    let mut rng = common::rng(101);
    let mut violations = 0;
    let sweep = |c: &GaussianTwrc, sp: &SplitParams| -> Vec<(Scheme, RateConstraintSet)> {
        [Scheme::Direct, Scheme::Df, Scheme::PartialDf, Scheme::Cf, Scheme::Combined, Scheme::Cutset]
            .into_iter()
            .map(|s| (s, s.evaluate(c, sp)))
            .collect()
    };
    for _ in 0..100 {
        let c = common::random_channel(&mut rng);
        let sp = SplitParams::new(rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0), rng.random_range(0.0..=1.0)).unwrap();
        let base = sweep(&c, &sp);
        let up = rng.random_range(1.0..3.0);
        for field in 0..6 {
            let mut bigger = c;
            match field {
                0 => bigger.p1 *= up,
                1 => bigger.p2 *= up,
                2 => bigger.pr *= up,
                3 => bigger.n1 *= up,
                4 => bigger.n2 *= up,
                _ => bigger.nr *= up,
            }
            let noise = field >= 3;
            for ((scheme, before), (_, after)) in base.iter().zip(sweep(&bigger, &sp)) {
                let power_monotone = match scheme {
                    Scheme::Direct | Scheme::Df | Scheme::Cutset => true,
                    Scheme::PartialDf | Scheme::Cf => field == 2,
                    Scheme::Combined => false,
                };
                let ok = if noise {
                    after.is_within(before, 1e-9)
                } else if power_monotone {
                    before.is_within(&after, 1e-9)
                } else {
                    true
                };
                violations += (!ok) as usize;
            }
        }
    }
    violations
}

fn c10b_refinement() -> usize {
    let mut rng = common::rng(102);
    let mut violations = 0;
    for _ in 0..100 {
        let c = common::random_channel(&mut rng);
        let region = schemes::region_sweep(&c, Scheme::PartialDf, 9).unwrap();
        let max = region.max_r1();
        let coarse = geometry::union_boundary_on(&region.pentagons, R1Grid::new(max, 21).unwrap()).unwrap();
        let fine = geometry::union_boundary_on(&region.pentagons, R1Grid::new(max, 41).unwrap()).unwrap();
        for (k, p) in coarse.points.iter().enumerate() {
            if fine.points.get(2 * k) != Some(p) {
                violations += 1;
            }
        }
        for k in 0..coarse.points.len().saturating_sub(1) {
            let (left, right) = (coarse.points[k].r2, coarse.points[k + 1].r2);
            match fine.points.get(2 * k + 1) {
                Some(mid) if mid.r2 <= left && mid.r2 >= right => {}
                _ => violations += 1,
            }
        }
    }
    violations
}

fn c10c_mutual_information() -> usize {
    let mut rng = common::rng(103);
    let mut violations = 0;
    for _ in 0..100 {
        let dims = vec![rng.random_range(1..=3), rng.random_range(1..=3), rng.random_range(1..=3)];
        let n: usize = dims.iter().product();
        let pmf = discrete::Pmf::new(dims.clone(), common::random_pmf(&mut rng, n)).unwrap();
        let ab_c = pmf.mutual_information(&[0], &[1], &[2]).unwrap();
        let ba_c = pmf.mutual_information(&[1], &[0], &[2]).unwrap();
        if ab_c < 0.0 || (ab_c - ba_c).abs() > 1e-12 {
            violations += 1;
        }

        // product with an independent variable leaves I(A;B) unchanged under conditioning
        let q = common::random_pmf(&mut rng, 2);
        let ab = pmf.marginal(&[0, 1]);
        let prod: Vec<f64> = ab.iter().flat_map(|&p| q.iter().map(move |&w| p * w)).collect();
        let joint = discrete::Pmf::new(vec![dims[0], dims[1], 2], prod).unwrap();
        let plain = joint.mutual_information(&[0], &[1], &[]).unwrap();
        let cond = joint.mutual_information(&[0], &[1], &[2]).unwrap();
        if (plain - cond).abs() > 1e-12 {
            violations += 1;
        }
    }
    violations
}

fn c10d_chain_rule() -> usize {
    let mut rng = common::rng(104);
    let mut violations = 0;
    for _ in 0..100 {
        let dm = common::random_dm(&mut rng);
        let dist = common::random_input_with_u1_function(&mut rng);
        let j = discrete::theorem1_joint(&dm, &dist).unwrap();
        let lhs = j.mutual_information(&[XR], &[Y2], &[X2]).unwrap()
            + j.mutual_information(&[U1, X1], &[Y2], &[X2, XR]).unwrap();
        let rhs = j.mutual_information(&[X1, XR], &[Y2], &[X2]).unwrap();
        if (lhs - rhs).abs() > 1e-10 {
            violations += 1;
        }
    }
    violations
}

fn c10_properties() -> Outcome {
    let mono = c10a_monotonicity();
    let refine = c10b_refinement();
    let mi = c10c_mutual_information();
    let chain = c10d_chain_rule();
    check(
        mono + refine + mi + chain == 0,
        format!("violations: monotonicity {mono}, refinement {refine}, MI {mi}, chain rule {chain} (100 instances each)"),
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 10] = [
        ("1 partial-DF reference point", c1_partial_df_point),
        ("2 outside DF/direct time-sharing hull", c2_outside_hull),
        ("3 combined reference point (asymmetric)", c3_combined_asym),
        ("4 combined reference point (symmetric)", c4_combined_sym),
        ("5 improvement condition verdicts", c5_improvement),
        ("6 FME oracle equivalence", c6_fme_equivalence),
        ("7 special-case reductions", c7_special_cases),
        ("8 cut-set outer-bound dominance", c8_outer_bound),
        ("9 DM noiseless binary sanity", c9_dm_sanity),
        ("10 property suites", c10_properties),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] criterion {name}: {detail}"),
            Err(detail) => {
                println!("[FAIL] criterion {name}: {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

