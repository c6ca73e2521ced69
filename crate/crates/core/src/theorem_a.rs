//! Staged machine check that the Alexander dual `Aₖ` of `Cl(Δ²ₖ)` is
//! 4-decomposable.
//!
//! With `γⱼ` the private vertices of copy `j`, the chain
//! `D⁰ = Aₖ`, `Dʲ = del_{Dʲ⁻¹}(γⱼ)`, `Lʲ = link_{Dʲ⁻¹}(γⱼ)` is walked for
//! `j ≤ min(3, k)`. Each `Lᵏⱼ` is the relabeled `Dᵏ⁻¹ⱼ₋₁` (copy `j` removed,
//! later copies shifted down), with `D¹₀ = D¹₁ = A₁` since `γ₁` is not a
//! face of the 3-dimensional `A₁`. The terminal complex is handled by a
//! vertex-decomposition search for `k = 2` and by the disjoint non-face
//! decomposition for `k ≥ 3`.

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::constructions::{binomial, delta2, dual_c2_shelling, dual_of_clique, GluedFamily};
use crate::decomposability::{
    certificate_from_shelling, disjoint_nonface_vd, is_k_decomposable, is_shedding_face, verify_decomposition,
    DecompNode, DecompositionCertificate,
};
use crate::error::{Error, Result};
use crate::face::Face;
use crate::report::Verdict;
use crate::search::{Budget, SearchOutcome};

/// Shed-face dimension bound being certified.
pub const SHED_BOUND: isize = 4;

/// Number of facets of `Dᵏ₃` for every `k ≥ 3`.
pub const TERMINAL_FACETS: usize = 125;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StageStatus {
    Passed,
    Failed,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub stage: char,
    pub name: &'static str,
    pub status: StageStatus,
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremAReport {
    pub k: usize,
    pub vertices: usize,
    pub dimension: isize,
    pub facet_count: usize,
    pub expected_facet_count: u128,
    pub gammas: Vec<Face>,
    pub terminal_facet_count: Option<usize>,
    pub terminal_method: Option<&'static str>,
    pub stages: Vec<StageReport>,
    pub verdict: Verdict,
    pub failed_stage: Option<char>,
    pub certificate: Option<DecompositionCertificate>,
}

/// Deletions `D₀..D_m` and links `L₁..L_m` along a shedding chain.
#[derive(Clone, Debug)]
pub struct ShedChain {
    pub deletions: Vec<SimplicialComplex>,
    pub links: Vec<SimplicialComplex>,
}

/// Walks `D₀ = d0`, `Dⱼ = del(Dⱼ₋₁, γⱼ)`, requiring each `γⱼ` to be a
/// shedding face of `Dⱼ₋₁`.
pub fn check_shedding_chain(d0: &SimplicialComplex, gammas: &[Face]) -> Result<ShedChain> {
    let mut deletions = vec![d0.clone()];
    let mut links = Vec::with_capacity(gammas.len());
    for (j, &gamma) in gammas.iter().enumerate() {
        let prev = &deletions[j];
        if !is_shedding_face(prev, gamma)? {
            return Err(Error::Precondition(format!("γ{} = {gamma:?} is not a shedding face", j + 1)));
        }
        links.push(prev.link(gamma)?);
        deletions.push(prev.deletion(gamma)?);
    }
    Ok(ShedChain { deletions, links })
}

/// `Dᵏ₃` written out directly: complements of the transversals of `γ₁, γ₂, γ₃`.
pub fn terminal_complex(n: usize, gammas: &[Face]) -> Result<SimplicialComplex> {
    let [g1, g2, g3] = gammas[..3] else {
        return Err(Error::InvalidArgument("need three blocks".into()));
    };
    let full = Face::full(n);
    let mut facets = Vec::new();
    for a in g1.vertices() {
        for b in g2.vertices() {
            for c in g3.vertices() {
                facets.push(full.difference(Face::of(&[a, b, c])));
            }
        }
    }
    SimplicialComplex::from_faces(facets, n)
}

/// Map from labels of `Δ²ₖ₋₁` to labels of `Δ²ₖ` skipping copy `j`.
fn skip_copy_map(small: &GluedFamily, big: &GluedFamily, j: usize) -> Vec<usize> {
    let n_small = small.complex.ground_set_size();
    let mut map: Vec<usize> = (0..=n_small).collect();
    for (h, block) in small.copy_private_vertices.iter().enumerate() {
        let target = if h + 1 < j { big.copy_private_vertices[h] } else { big.copy_private_vertices[h + 1] };
        for (v, w) in block.vertices().zip(target.vertices()) {
            map[v] = w;
        }
    }
    map
}

struct Level {
    family: GluedFamily,
    chain: ShedChain,
}

impl Level {
    fn dual(&self) -> &SimplicialComplex {
        &self.chain.deletions[0]
    }

    /// `Dⱼ`, with `D₁ = D₀` at `k = 1`.
    fn d(&self, j: usize) -> &SimplicialComplex {
        &self.chain.deletions[j.min(self.chain.deletions.len() - 1)]
    }

    fn chain_len(&self) -> usize {
        self.chain.links.len()
    }
}

fn chain_length(k: usize) -> usize {
    if k == 1 { 0 } else { k.min(3) }
}

fn build_level(k: usize) -> Result<Level> {
    let family = delta2(k)?;
    let dual = dual_of_clique(&family.complex)?;
    let m = chain_length(k);
    let chain = check_shedding_chain(&dual, &family.copy_private_vertices[..m])?;
    Ok(Level { family, chain })
}

enum Terminal {
    Cert(DecompNode),
    Refuted,
    Unknown,
}

struct Pipeline {
    levels: HashMap<usize, Level>,
    certs: HashMap<(usize, usize), DecompNode>,
    budget: Budget,
}

impl Pipeline {
    fn level(&mut self, k: usize) -> Result<&Level> {
        if let std::collections::hash_map::Entry::Vacant(e) = self.levels.entry(k) {
            let level = build_level(k)?;
            e.insert(level);
        }
        Ok(&self.levels[&k])
    }

    fn terminal(&mut self, k: usize) -> Result<Terminal> {
        let level = self.level(k)?;
        let dm = level.d(level.chain_len()).clone();
        if k == 2 {
            return Ok(match is_k_decomposable(&dm, 0, &mut self.budget)? {
                SearchOutcome::Found(c) => Terminal::Cert(c.root),
                SearchOutcome::Refuted => Terminal::Refuted,
                SearchOutcome::Unknown => Terminal::Unknown,
            });
        }
        Ok(match disjoint_nonface_vd(&dm) {
            Some(c) => Terminal::Cert(c.root),
            None => Terminal::Refuted,
        })
    }

    /// Certificate tree for `Dᵏⱼ`.
    fn cert(&mut self, k: usize, j: usize) -> Result<Option<DecompNode>> {
        if let Some(c) = self.certs.get(&(k, j)) {
            return Ok(Some(c.clone()));
        }
        let node = if k == 1 {
            let a1 = self.level(1)?.dual().clone();
            certificate_from_shelling(&a1, &dual_c2_shelling())?.root
        } else if j == chain_length(k) {
            match self.terminal(k)? {
                Terminal::Cert(c) => c,
                _ => return Ok(None),
            }
        } else {
            let Some(link) = self.cert(k - 1, j)? else { return Ok(None) };
            let Some(deletion) = self.cert(k, j + 1)? else { return Ok(None) };
            self.level(k - 1)?;
            self.level(k)?;
            let map = skip_copy_map(&self.levels[&(k - 1)].family, &self.levels[&k].family, j + 1);
            let gamma = self.levels[&k].family.copy_private_vertices[j];
            DecompNode::Shed { face: gamma, link: Box::new(link.relabel(&map)), deletion: Box::new(deletion) }
        };
        self.certs.insert((k, j), node.clone());
        Ok(Some(node))
    }
}

struct Recorder {
    stages: Vec<StageReport>,
}

impl Recorder {
    fn run(&mut self, stage: char, name: &'static str, f: impl FnOnce() -> Result<(StageStatus, String)>) -> StageStatus {
        let start = Instant::now();
        let (status, detail) = match f() {
            Ok(r) => r,
            Err(e) => (StageStatus::Failed, e.to_string()),
        };
        log::info!("stage ({stage}) {name}: {status:?} {detail}");
        self.stages.push(StageReport { stage, name, status, detail, elapsed_ms: start.elapsed().as_millis() });
        status
    }
}

fn pass_if(ok: bool, detail: String) -> Result<(StageStatus, String)> {
    Ok((if ok { StageStatus::Passed } else { StageStatus::Failed }, detail))
}

/// Runs stages (a)–(e) for `k ≥ 2`. `budget` bounds the vertex-decomposition
/// search of the `k = 2` terminal complex. A failing stage stops the run and
/// is named in the report.
pub fn theorem_a_certificate(k: usize, budget: u64) -> Result<TheoremAReport> {
    if k < 2 {
        return Err(Error::InvalidArgument("k must be at least 2".into()));
    }
    let n = 5 * k + 2;
    if n > crate::face::MAX_VERTICES {
        return Err(Error::GroundSetTooLarge(n));
    }
    let mut pipe = Pipeline { levels: HashMap::new(), certs: HashMap::new(), budget: Budget::new(budget) };
    let mut rec = Recorder { stages: Vec::new() };
    let expected = binomial(n, 3) - 13 * k as u128;

    let family = delta2(k)?;
    let a = dual_of_clique(&family.complex)?;
    let gammas = family.copy_private_vertices.clone();
    let m = chain_length(k);
    let mut report = TheoremAReport {
        k,
        vertices: n,
        dimension: a.dim(),
        facet_count: a.facet_count(),
        expected_facet_count: expected,
        gammas: gammas[..m].to_vec(),
        terminal_facet_count: None,
        terminal_method: None,
        stages: Vec::new(),
        verdict: Verdict::Verified,
        failed_stage: None,
        certificate: None,
    };

    let finish = |mut report: TheoremAReport, rec: Recorder, stage: char, status: StageStatus| {
        report.stages = rec.stages;
        report.failed_stage = Some(stage);
        report.verdict = if status == StageStatus::Unknown { Verdict::Unknown } else { Verdict::Refuted };
        report
    };

    let status = rec.run('a', "dual is pure of the expected size", || {
        let ok = a.is_pure() && a.dim() == 5 * k as isize - 2 && a.facet_count() as u128 == expected;
        pass_if(ok, format!("dim {} with {} facets, expected dim {} with {expected}", a.dim(), a.facet_count(), 5 * k - 2))
    });
    if status != StageStatus::Passed {
        return Ok(finish(report, rec, 'a', status));
    }

    let status = rec.run('b', "private blocks form a shedding chain", || {
        let level = pipe.level(k)?;
        let sizes: Vec<usize> = level.chain.deletions.iter().map(|d| d.facet_count()).collect();
        pass_if(true, format!("γ1..γ{m} shed; deletion facet counts {sizes:?}"))
    });
    if status != StageStatus::Passed {
        return Ok(finish(report, rec, 'b', status));
    }

    let status = rec.run('c', "links are relabeled smaller deletions", || {
        pipe.level(k - 1)?;
        let small = &pipe.levels[&(k - 1)];
        let big = &pipe.levels[&k];
        for j in 1..=m {
            let map = skip_copy_map(&small.family, &big.family, j);
            let expected = small.d(j - 1).relabel(&map, n)?;
            if expected != big.chain.links[j - 1] {
                return pass_if(false, format!("L{j} differs from relabeled D^{}_{}", k - 1, j - 1));
            }
        }
        pass_if(true, format!("L1..L{m} match D^{}_0..D^{}_{}", k - 1, k - 1, m - 1))
    });
    if status != StageStatus::Passed {
        return Ok(finish(report, rec, 'c', status));
    }

    let terminal = pipe.level(k)?.d(m).clone();
    report.terminal_facet_count = Some(terminal.facet_count());
    report.terminal_method = Some(if k == 2 { "vertex_decomposition_search" } else { "disjoint_minimal_nonfaces" });
    let status = rec.run('d', "terminal deletion is vertex-decomposable", || {
        if k >= 3 {
            let direct = terminal_complex(n, &gammas)?;
            if direct != terminal || terminal.facet_count() != TERMINAL_FACETS {
                return pass_if(false, format!("terminal complex has {} facets", terminal.facet_count()));
            }
            let nonfaces = terminal.minimal_nonfaces();
            if nonfaces != gammas[..3] {
                return pass_if(false, format!("minimal non-faces {nonfaces:?}"));
            }
        }
        // lower levels feed the link certificates, so their terminals are checked here too
        for level in (2..=k).rev() {
            match pipe.terminal(level)? {
                Terminal::Cert(c) => {
                    pipe.certs.insert((level, chain_length(level)), c);
                }
                Terminal::Refuted => return pass_if(false, format!("terminal complex at k={level} refuted")),
                Terminal::Unknown => {
                    return Ok((StageStatus::Unknown, format!("budget exhausted at k={level}")));
                }
            }
        }
        pass_if(true, format!("{} facets, 0-decomposition certified", terminal.facet_count()))
    });
    if status != StageStatus::Passed {
        return Ok(finish(report, rec, 'd', status));
    }

    let mut cert = None;
    let status = rec.run('e', "assembled certificate verifies", || {
        let Some(root) = pipe.cert(k, 0)? else {
            return pass_if(false, "a sub-certificate is missing".into());
        };
        let c = DecompositionCertificate::new(root);
        let ok = c.max_shed_dim == SHED_BOUND && verify_decomposition(&a, &c, SHED_BOUND);
        let detail = format!("{} shed nodes, max shed dimension {}", c.root.shed_count(), c.max_shed_dim);
        cert = Some(c);
        pass_if(ok, detail)
    });
    if status != StageStatus::Passed {
        return Ok(finish(report, rec, 'e', status));
    }

    report.stages = rec.stages;
    report.certificate = cert;
    Ok(report)
}
