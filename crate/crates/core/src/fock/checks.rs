use super::{FockError, FockSpace, FockVector, OccupationMap, ParticleKind, Relation};

/// Every basis state on `levels` levels with at most `max_total` particles.
/// Fermionic states occupy each level at most once.
pub fn basis_kets(kind: ParticleKind, levels: usize, max_total: u32) -> Vec<OccupationMap> {
    let cap = match kind {
        ParticleKind::Boson => max_total,
        ParticleKind::Fermion => 1,
    };
    let mut out = Vec::new();
    let mut counts = vec![0u32; levels];
    fill(&mut counts, 0, max_total, cap, &mut out);
    out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
    out
}

fn fill(counts: &mut [u32], level: usize, remaining: u32, cap: u32, out: &mut Vec<OccupationMap>) {
    if level == counts.len() {
        let occ = OccupationMap::from_counts(counts.iter().enumerate().filter(|(_, &n)| n > 0).map(|(l, &n)| (l, n)))
            .expect("positive counts");
        out.push(occ);
        return;
    }
    for n in 0..=remaining.min(cap) {
        counts[level] = n;
        fill(counts, level + 1, remaining - n, cap, out);
    }
    counts[level] = 0;
}

/// One residual that exceeded the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// `None` for the number-operator identity.
    pub relation: Option<Relation>,
    pub alpha: usize,
    pub beta: usize,
    pub ket: OccupationMap,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub kind: ParticleKind,
    pub levels: usize,
    pub kets_checked: usize,
    pub max_residual: f64,
    pub max_number_residual: f64,
    pub tolerance: f64,
    /// Largest residual seen, whether or not it exceeded the tolerance.
    pub worst: Option<Violation>,
    pub violations: Vec<Violation>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every (anti)commutation relation for every pair of levels on
/// every basis state with at most `max_total` particles, plus the number
/// operator identity. Keeps at most `max_reported` violations.
pub fn check_commutators(
    space: &FockSpace,
    max_total: u32,
    tolerance: f64,
    max_reported: usize,
) -> Result<SweepReport, FockError> {
    let kind = space.kind();
    let levels = space.basis().len();
    let kets = basis_kets(kind, levels, max_total);
    let mut report = SweepReport {
        kind,
        levels,
        kets_checked: kets.len(),
        max_residual: 0.0,
        max_number_residual: 0.0,
        tolerance,
        worst: None,
        violations: Vec::new(),
    };
    let mut worst = -1.0f64;
    let mut record = |report: &mut SweepReport, v: Violation| {
        if v.residual > worst {
            worst = v.residual;
            report.worst = Some(v.clone());
        }
        if v.residual > tolerance && report.violations.len() < max_reported.max(1) {
            report.violations.push(v);
        }
    };
    for occ in &kets {
        let v = FockVector::basis_ket(occ.clone());
        for alpha in 0..levels {
            for beta in 0..levels {
                for relation in Relation::ALL {
                    let r = space.residual(relation, alpha, beta, &v)?.max_abs_coeff();
                    report.max_residual = report.max_residual.max(r);
                    record(&mut report, Violation { relation: Some(relation), alpha, beta, ket: occ.clone(), residual: r });
                }
            }
            let r = space.number_residual(alpha, &v)?.max_abs_coeff();
            report.max_number_residual = report.max_number_residual.max(r);
            record(&mut report, Violation { relation: None, alpha, beta: alpha, ket: occ.clone(), residual: r });
        }
    }
    Ok(report)
}
