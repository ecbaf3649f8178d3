//! Task execution: resolve a parsed config into algebras, a setup, and
//! enumerated universes, then run each declared task and collect a
//! deterministic per-task report.

use anyhow::{anyhow, bail, Result};
use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use cotorsion::algebra::{
    direct_product, from_quiver_over, Algebra, AlgebraReport, Arrow, ProductLayout,
    QuiverPresentation,
};
use cotorsion::cat::{ExtCat, ModCat};
use cotorsion::error::EngineError;
use cotorsion::extcat::{
    ext_dim_ext, ext_injective_dimension, ext_projective_dimension, t_obj, to_coext, to_ext,
    z_obj, ExtObject, Setup,
};
use cotorsion::functor::{Bimodule, BimoduleMul};
use cotorsion::linalg::Matrix;
use cotorsion::module::{
    enumerate_modules, enumerate_product_modules, ext_dim, is_injective, is_projective, tor_dim,
    Depth, Module,
};
use cotorsion::pairs::{
    ext_family_contains, ext_family_mask, gorenstein_window_report, mod_family_contains,
    mod_family_mask, transport_hovey_triple, transport_pair, BasePair, DefectKind, ExtFamily,
    ModFamily, PairDefect, PairOptions, PairReport, TransportOptions, TripleFamilies,
};
use cotorsion::presets;
use cotorsion::rings::{comma_bridge, pair_to_lambda, lambda_to_pair, trivial_extension_ring, CommaSpec};

use crate::config::{
    AlgebraDecl, BimoduleDecl, ConfigFile, EtaDecl, FamilyDecl, TaskDecl,
};

// ---------------------------------------------------------------------------
// Task reports
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn word(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of one task, with ordered key/value details and re-checkable
/// witnesses for failures.
#[derive(Clone, Debug)]
pub struct TaskReport {
    pub name: String,
    pub kind: &'static str,
    pub status: Status,
    pub details: Vec<(String, String)>,
    pub witnesses: Vec<String>,
    /// Wall-clock seconds; rendered only in the human-readable report.
    pub seconds: f64,
}

/// Exit code for a set of task outcomes: 1 on any fail, else 2 on any
/// inconclusive, else 0.
pub fn exit_code(tasks: &[TaskReport]) -> i32 {
    if tasks.iter().any(|t| t.status == Status::Fail) {
        1
    } else if tasks.iter().any(|t| t.status == Status::Inconclusive) {
        2
    } else {
        0
    }
}

// ---------------------------------------------------------------------------
// Session: resolved config
// ---------------------------------------------------------------------------

enum UniverseState {
    Ready {
        base: Vec<Module>,
        ext: Vec<ExtObject>,
    },
    /// Enumeration refused; `budget` says whether it was a budget refusal
    /// (inconclusive) rather than a structural error (fail).
    Blocked { reason: String, budget: bool },
    /// No `[universe]` section, or no setup to enumerate over.
    Absent,
}

/// A fully resolved configuration, ready to run tasks.
pub struct Session {
    pub modulus: u64,
    algebra_reports: BTreeMap<String, AlgebraReport>,
    /// Why the setup/universe could not be built, when they could not.
    prep_error: Option<String>,
    setup: Option<Arc<Setup>>,
    mcat: Option<ModCat>,
    ecat: Option<ExtCat>,
    universe: UniverseState,
    family_decls: BTreeMap<String, FamilyDecl>,
    pub window: usize,
    pub budget: u64,
}

fn is_budget_refusal(err: &cotorsion::Error) -> bool {
    matches!(
        err,
        cotorsion::Error::Engine(EngineError::EnumerationBlowup { .. })
    )
}

impl Session {
    /// Resolves declarations into live objects. Structural errors in the
    /// declarations themselves (unknown names, bad shapes) are hard
    /// errors; algebra-axiom failures and enumeration refusals are
    /// recorded and surfaced by the affected tasks instead.
    pub fn new(file: &ConfigFile, window: usize, budget: u64) -> Result<Session> {
        let modulus = file.field.modulus;
        let (algebras, product_info) = build_algebras(modulus, &file.algebras)?;
        let algebra_reports: BTreeMap<String, AlgebraReport> = algebras
            .iter()
            .map(|(name, a)| (name.clone(), a.validate()))
            .collect();
        let invalid: Vec<&String> = algebra_reports
            .iter()
            .filter(|(_, r)| !r.is_ok())
            .map(|(n, _)| n)
            .collect();

        let mut prep_error = None;
        let mut setup = None;
        let mut factors = None;
        if !invalid.is_empty() {
            prep_error = Some(format!(
                "algebra axioms fail for: {}",
                invalid
                    .iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        } else if let Some(sec) = &file.setup {
            match build_setup(modulus, &algebras, &file.bimodules, sec) {
                Ok(s) => {
                    factors = product_factors(&algebras, &product_info, &sec.algebra);
                    setup = Some(s);
                }
                Err(e) => prep_error = Some(format!("setup construction failed: {e}")),
            }
        }

        let universe = match (&setup, &file.universe) {
            (Some(s), Some(u)) => {
                build_universe(s, &factors, u.component_max_dim, u.max_dim, budget)
            }
            _ => UniverseState::Absent,
        };

        let mcat = setup.as_ref().map(|s| ModCat::new(s.algebra().clone()));
        let ecat = setup.as_ref().map(|s| ExtCat::new(s.clone()));

        Ok(Session {
            modulus,
            algebra_reports,
            prep_error,
            setup,
            mcat,
            ecat,
            universe,
            family_decls: file.families.clone(),
            window,
            budget,
        })
    }

    pub fn universe_sizes(&self) -> Option<(usize, usize)> {
        match &self.universe {
            UniverseState::Ready { base, ext } => Some((base.len(), ext.len())),
            _ => None,
        }
    }

    /// Runs the declared tasks (optionally filtered by kind or 0-based
    /// index), sequentially or with one thread per task.
    pub fn run(
        &self,
        tasks: &[TaskDecl],
        filter: Option<&[String]>,
        parallel: bool,
    ) -> Vec<TaskReport> {
        let selected: Vec<(usize, &TaskDecl)> = tasks
            .iter()
            .enumerate()
            .filter(|(i, t)| match filter {
                None => true,
                Some(tokens) => tokens
                    .iter()
                    .any(|tok| tok == t.kind() || tok.parse::<usize>() == Ok(*i)),
            })
            .collect();
        if parallel {
            let mut out: Vec<Option<TaskReport>> = Vec::new();
            out.resize_with(selected.len(), || None);
            std::thread::scope(|scope| {
                let mut handles = Vec::new();
                for (slot, (i, decl)) in selected.iter().enumerate() {
                    let (i, decl) = (*i, *decl);
                    handles.push((slot, scope.spawn(move || self.run_task(i, decl))));
                }
                for (slot, h) in handles {
                    out[slot] = Some(h.join().expect("task thread panicked"));
                }
            });
            out.into_iter().map(|r| r.expect("slot filled")).collect()
        } else {
            selected
                .iter()
                .map(|(i, decl)| self.run_task(*i, decl))
                .collect()
        }
    }

    fn run_task(&self, index: usize, decl: &TaskDecl) -> TaskReport {
        let start = Instant::now();
        let kind = decl.kind();
        let name = format!("{index}-{kind}");
        let mut details = Vec::new();
        let mut witnesses = Vec::new();
        let status = match self.dispatch(decl, &mut details, &mut witnesses) {
            Ok(status) => status,
            Err(e) => {
                details.push(("error".to_string(), e.to_string()));
                Status::Fail
            }
        };
        TaskReport {
            name,
            kind,
            status,
            details,
            witnesses,
            seconds: start.elapsed().as_secs_f64(),
        }
    }

    fn dispatch(
        &self,
        decl: &TaskDecl,
        details: &mut Vec<(String, String)>,
        witnesses: &mut Vec<String>,
    ) -> Result<Status> {
        match decl {
            TaskDecl::Validate { targets } => self.task_validate(targets.as_deref(), details, witnesses),
            TaskDecl::Ext {
                from,
                to,
                degree,
                expect,
            } => self.task_ext(from, to, *degree, *expect, details),
            TaskDecl::Tor { x, degree, expect } => self.task_tor(x, *degree, *expect, details),
            TaskDecl::TransportPair {
                left,
                right,
                heredity,
                approx,
            } => self.task_transport_pair(left, right, *heredity, approx.as_deref(), details, witnesses),
            TaskDecl::TransportHovey {
                cofibrant,
                trivial,
                fibrant,
            } => self.task_transport_hovey(cofibrant, trivial, fibrant, details, witnesses),
            TaskDecl::Approx { pair } => self.task_approx(pair, details, witnesses),
            TaskDecl::Gorenstein {
                window,
                spli_max,
                silp_max,
            } => self.task_gorenstein(*window, *spli_max, *silp_max, details, witnesses),
            TaskDecl::BridgeRoundtrip { max_degree } => {
                self.task_bridge_roundtrip(*max_degree, details, witnesses)
            }
        }
    }

    // -- prerequisites ------------------------------------------------------

    fn need_setup(&self) -> Result<(&Arc<Setup>, &ModCat, &ExtCat)> {
        if let Some(reason) = &self.prep_error {
            bail!("{reason}");
        }
        match (&self.setup, &self.mcat, &self.ecat) {
            (Some(s), Some(m), Some(e)) => Ok((s, m, e)),
            _ => bail!("no [setup] section declared"),
        }
    }

    fn need_universe(&self) -> std::result::Result<(&[Module], &[ExtObject]), (String, bool)> {
        match &self.universe {
            UniverseState::Ready { base, ext } => Ok((base, ext)),
            UniverseState::Blocked { reason, budget } => Err((reason.clone(), *budget)),
            UniverseState::Absent => Err(("no [universe] section declared".to_string(), false)),
        }
    }

    /// Universe gate shared by universe-dependent tasks: on a budget
    /// refusal the task is inconclusive rather than failed.
    fn universe_or_status(
        &self,
        details: &mut Vec<(String, String)>,
    ) -> std::result::Result<(&[Module], &[ExtObject]), Status> {
        match self.need_universe() {
            Ok(pair) => Ok(pair),
            Err((reason, budget)) => {
                details.push(("blocked".to_string(), reason));
                Err(if budget { Status::Inconclusive } else { Status::Fail })
            }
        }
    }

    // -- name resolution ----------------------------------------------------

    fn resolve_base(&self, base: &[Module], name: &str) -> Result<Module> {
        if let Some(rest) = name.strip_prefix('x') {
            if let Ok(i) = rest.parse::<usize>() {
                return base
                    .get(i)
                    .cloned()
                    .ok_or_else(|| anyhow!("base universe has no member '{name}'"));
            }
        }
        bail!("'{name}' is not a base universe name (expected x<i>)")
    }

    fn resolve_ext_obj(
        &self,
        setup: &Arc<Setup>,
        base: &[Module],
        ext: &[ExtObject],
        name: &str,
    ) -> Result<ExtObject> {
        if let Some(rest) = name.strip_prefix("t:x") {
            if let Ok(i) = rest.parse::<usize>() {
                return base
                    .get(i)
                    .map(|x| t_obj(setup, x))
                    .ok_or_else(|| anyhow!("base universe has no member 'x{i}'"));
            }
        }
        if let Some(rest) = name.strip_prefix("z:x") {
            if let Ok(i) = rest.parse::<usize>() {
                return base
                    .get(i)
                    .map(|x| z_obj(setup, x))
                    .ok_or_else(|| anyhow!("base universe has no member 'x{i}'"));
            }
        }
        if let Some(rest) = name.strip_prefix('e') {
            if let Ok(i) = rest.parse::<usize>() {
                return ext
                    .get(i)
                    .cloned()
                    .ok_or_else(|| anyhow!("extension universe has no member '{name}'"));
            }
        }
        bail!("'{name}' is not an extension object name (expected e<i>, t:x<i> or z:x<i>)")
    }

    fn resolve_family(&self, name: &str, base: &[Module], depth: usize) -> Result<ModFamily> {
        if depth > 8 {
            bail!("family '{name}' nests too deeply (cycle?)");
        }
        match name {
            "all" => return Ok(ModFamily::All),
            "projectives" => return Ok(ModFamily::Projectives),
            "injectives" => return Ok(ModFamily::Injectives),
            _ => {}
        }
        let decl = self
            .family_decls
            .get(name)
            .ok_or_else(|| anyhow!("unknown family '{name}'"))?;
        Ok(match decl {
            FamilyDecl::All => ModFamily::All,
            FamilyDecl::Projectives => ModFamily::Projectives,
            FamilyDecl::Injectives => ModFamily::Injectives,
            FamilyDecl::And { of } => {
                if of.len() != 2 {
                    bail!("family '{name}': 'and' takes exactly two family names");
                }
                ModFamily::And(
                    Box::new(self.resolve_family(&of[0], base, depth + 1)?),
                    Box::new(self.resolve_family(&of[1], base, depth + 1)?),
                )
            }
            FamilyDecl::Listed { members } => ModFamily::Listed(
                members
                    .iter()
                    .map(|m| self.resolve_base(base, m))
                    .collect::<Result<_>>()?,
            ),
            FamilyDecl::Add { members } => ModFamily::Add(
                members
                    .iter()
                    .map(|m| self.resolve_base(base, m))
                    .collect::<Result<_>>()?,
            ),
            FamilyDecl::LeftPerp { of, window } => ModFamily::LeftPerpOf(
                Box::new(self.resolve_family(of, base, depth + 1)?),
                *window,
            ),
            FamilyDecl::RightPerp { of, window } => ModFamily::RightPerpOf(
                Box::new(self.resolve_family(of, base, depth + 1)?),
                *window,
            ),
        })
    }

    // -- tasks --------------------------------------------------------------

    fn task_validate(
        &self,
        targets: Option<&[String]>,
        details: &mut Vec<(String, String)>,
        witnesses: &mut Vec<String>,
    ) -> Result<Status> {
        let names: Vec<String> = match targets {
            Some(t) => t.to_vec(),
            None => self.algebra_reports.keys().cloned().collect(),
        };
        let mut ok = true;
        for name in &names {
            let report = self
                .algebra_reports
                .get(name)
                .ok_or_else(|| anyhow!("unknown algebra '{name}'"))?;
            if report.is_ok() {
                details.push((format!("algebra_{name}"), "associative, unital".to_string()));
            } else {
                ok = false;
                details.push((
                    format!("algebra_{name}"),
                    format!(
                        "{} associativity failure(s), {} unit failure(s)",
                        report.associativity_failures.len(),
                        report.unit_failures.len()
                    ),
                ));
                for (i, j, k) in report.associativity_failures.iter().take(8) {
                    witnesses.push(format!(
                        "algebra '{name}': (b{i} b{j}) b{k} != b{i} (b{j} b{k})"
                    ));
                }
                for i in report.unit_failures.iter().take(8) {
                    witnesses.push(format!("algebra '{name}': unit does not fix b{i}"));
                }
            }
        }
        Ok(if ok { Status::Pass } else { Status::Fail })
    }

    fn task_ext(
        &self,
        from: &str,
        to: &str,
        degree: usize,
        expect: Option<usize>,
        details: &mut Vec<(String, String)>,
    ) -> Result<Status> {
        let (setup, mcat, _) = self.need_setup()?;
        let (base, ext) = match self.universe_or_status(details) {
            Ok(u) => u,
            Err(s) => return Ok(s),
        };
        let base_side = from.starts_with('x') && to.starts_with('x');
        let value = if base_side {
            let x = self.resolve_base(base, from)?;
            let y = self.resolve_base(base, to)?;
            ext_dim(mcat.ctx(), degree, &x, &y)
        } else {
            let e1 = self.resolve_ext_obj(setup, base, ext, from)?;
            let e2 = self.resolve_ext_obj(setup, base, ext, to)?;
            ext_dim_ext(setup, degree, &e1, &e2)
        };
        details.push((
            "ext".to_string(),
            format!("dim Ext^{degree}({from}, {to}) = {value}"),
        ));
        Ok(match expect {
            None => Status::Pass,
            Some(want) => {
                details.push(("expected".to_string(), want.to_string()));
                if value == want {
                    Status::Pass
                } else {
                    Status::Fail
                }
            }
        })
    }

    fn task_tor(
        &self,
        x_name: &str,
        degree: usize,
        expect: Option<usize>,
        details: &mut Vec<(String, String)>,
    ) -> Result<Status> {
        let (setup, mcat, _) = self.need_setup()?;
        let (base, _) = match self.universe_or_status(details) {
            Ok(u) => u,
            Err(s) => return Ok(s),
        };
        let x = self.resolve_base(base, x_name)?;
        let w_right = setup.bimodule().as_right_module();
        let value = tor_dim(mcat.ctx(), degree, &w_right, &x);
        details.push((
            "tor".to_string(),
            format!("dim L_{degree}F({x_name}) = {value}"),
        ));
        Ok(match expect {
            None => Status::Pass,
            Some(want) => {
                details.push(("expected".to_string(), want.to_string()));
                if value == want {
                    Status::Pass
                } else {
                    Status::Fail
                }
            }
        })
    }

    fn task_transport_pair(
        &self,
        left: &str,
        right: &str,
        heredity: bool,
        approx: Option<&str>,
        details: &mut Vec<(String, String)>,
        witnesses: &mut Vec<String>,
    ) -> Result<Status> {
        let (setup, mcat, ecat) = self.need_setup()?;
        let (base, ext) = match self.universe_or_status(details) {
            Ok(u) => u,
            Err(s) => return Ok(s),
        };
        let left_fam = self.resolve_family(left, base, 0)?;
        let right_fam = self.resolve_family(right, base, 0)?;
        details.push(("left_family".to_string(), left_fam.describe()));
        details.push(("right_family".to_string(), right_fam.describe()));

        let opts = TransportOptions {
            pair: PairOptions {
                window: self.window,
                heredity,
                ses_budget: self.budget,
            },
            approx: approx.map(parse_base_pair).transpose()?,
        };
        let rep = transport_pair(ecat, mcat, &left_fam, &right_fam, base, ext, &opts)
            .map_err(|e| anyhow!("transport failed: {e}"))?;

        describe_pair_report("base", &rep.base, details);
        describe_pair_report("ext", &rep.ext, details);
        push_defect_witnesses("x", &rep.base.defects, witnesses);
        push_defect_witnesses("e", &rep.ext.defects, witnesses);

        // Heredity biconditional: the transported pair is hereditary
        // exactly when the base pair is.
        let heredity_biconditional = if heredity {
            let agree = rep.base.hereditary.is_some() && rep.base.hereditary == rep.ext.hereditary;
            details.push(("heredity_biconditional".to_string(), agree.to_string()));
            agree
        } else {
            true
        };

        // The collapse hypothesis: Ext¹(X, F(X)) = 0 for every member of
        // the base left class. When it holds, the structure-exact class
        // must coincide with the induced-image class.
        let left_mask_base = mod_family_mask(mcat, &left_fam, base)
            .map_err(|e| anyhow!("left family membership failed: {e}"))?;
        let mut hypothesis = true;
        for (i, x) in base.iter().enumerate() {
            if left_mask_base[i] && ext_dim(mcat.ctx(), 1, x, &setup.f_obj(x)) != 0 {
                hypothesis = false;
            }
        }
        details.push((
            "ext1_into_f_vanishes_on_left".to_string(),
            hypothesis.to_string(),
        ));
        details.push((
            "left_equals_t_image".to_string(),
            rep.left_equals_t_image.to_string(),
        ));
        let collapse_ok = !hypothesis || rep.left_equals_t_image;
        if !collapse_ok {
            for i in 0..ext.len() {
                if rep.left_mask[i] != rep.t_image_mask[i] {
                    witnesses.push(format!(
                        "e{i}: structure-exact {} but induced-image {}",
                        rep.left_mask[i], rep.t_image_mask[i]
                    ));
                }
            }
        }

        // Containment: the Ext¹-perp of the transported left class sits
        // inside the underlying-membership right class.
        let perp = ext_family_mask(
            ecat,
            mcat,
            &ExtFamily::RightPerpOf(Box::new(ExtFamily::Delta(left_fam.clone())), 1),
            ext,
            Some(base),
        )
        .map_err(|e| anyhow!("perp sweep failed: {e}"))?;
        let contained = perp.iter().zip(&rep.right_mask).all(|(p, r)| !p || *r);
        details.push(("left_perp_within_right".to_string(), contained.to_string()));
        if !contained {
            for i in 0..ext.len() {
                if perp[i] && !rep.right_mask[i] {
                    witnesses.push(format!(
                        "e{i}: Ext-orthogonal to the left class but its underlying module is outside the right family"
                    ));
                }
            }
        }

        if let Some(n) = rep.approximations_verified {
            details.push(("approximations_verified".to_string(), n.to_string()));
            for f in &rep.approximation_failures {
                witnesses.push(format!("approximation: {f}"));
            }
        }

        let pass = rep.transported_pair_holds()
            && heredity_biconditional
            && collapse_ok
            && contained
            && rep.approximation_failures.is_empty();
        Ok(if pass { Status::Pass } else { Status::Fail })
    }

    fn task_transport_hovey(
        &self,
        cofibrant: &str,
        trivial: &str,
        fibrant: &str,
        details: &mut Vec<(String, String)>,
        witnesses: &mut Vec<String>,
    ) -> Result<Status> {
        let (_, mcat, ecat) = self.need_setup()?;
        let (base, ext) = match self.universe_or_status(details) {
            Ok(u) => u,
            Err(s) => return Ok(s),
        };
        let families = TripleFamilies {
            cofibrant: self.resolve_family(cofibrant, base, 0)?,
            trivial: self.resolve_family(trivial, base, 0)?,
            fibrant: self.resolve_family(fibrant, base, 0)?,
        };
        details.push(("cofibrant".to_string(), families.cofibrant.describe()));
        details.push(("trivial".to_string(), families.trivial.describe()));
        details.push(("fibrant".to_string(), families.fibrant.describe()));
        let opts = PairOptions {
            window: self.window,
            heredity: true,
            ses_budget: self.budget,
        };
        let rep = transport_hovey_triple(ecat, mcat, &families, base, ext, &opts)
            .map_err(|e| anyhow!("triple transport failed: {e}"))?;
        details.push(("base_triple".to_string(), rep.base.is_triple().to_string()));
        details.push(("ext_triple".to_string(), rep.ext.is_triple().to_string()));
        details.push((
            "delta_intersection_identity".to_string(),
            rep.intersection_identity.to_string(),
        ));
        details.push((
            "t_image_intersection_identity".to_string(),
            rep.t_image_intersection_identity.to_string(),
        ));
        details.push((
            "u_inv_intersection_identity".to_string(),
            rep.u_inv_intersection_identity.to_string(),
        ));
        for side in [("base", &rep.base), ("ext", &rep.ext)] {
            let prefix = if side.0 == "base" { "x" } else { "e" };
            push_defect_witnesses(prefix, &side.1.pair_cw_f.defects, witnesses);
            push_defect_witnesses(prefix, &side.1.pair_c_wf.defects, witnesses);
            for t in side.1.thickness_defects.iter().take(8) {
                witnesses.push(format!(
                    "{} thickness: sequence {prefix}{} -> {prefix}{} -> {prefix}{} violates two-out-of-three",
                    side.0, t.sub, t.mid, t.quot
                ));
            }
        }
        Ok(if rep.transported_triple_holds() {
            Status::Pass
        } else {
            Status::Fail
        })
    }

    fn task_approx(
        &self,
        pair_name: &str,
        details: &mut Vec<(String, String)>,
        witnesses: &mut Vec<String>,
    ) -> Result<Status> {
        let (setup, mcat, ecat) = self.need_setup()?;
        let (base, ext) = match self.universe_or_status(details) {
            Ok(u) => u,
            Err(s) => return Ok(s),
        };
        let pair = parse_base_pair(pair_name)?;
        let left_fam = pair.left_family();
        let right_fam = pair.right_family();
        details.push(("left_family".to_string(), left_fam.describe()));
        details.push(("right_family".to_string(), right_fam.describe()));

        // Hypothesis 1: the endofunctor has no first derived functor on
        // the universe.
        let w_right = setup.bimodule().as_right_module();
        let mut l1f_zero = true;
        for (i, x) in base.iter().enumerate() {
            if tor_dim(mcat.ctx(), 1, &w_right, x) != 0 {
                l1f_zero = false;
                witnesses.push(format!("L_1F(x{i}) != 0"));
            }
        }
        details.push(("l1f_vanishes".to_string(), l1f_zero.to_string()));

        // Hypothesis 2: the endofunctor lands in the right class.
        let mut f_in_right = true;
        for (i, x) in base.iter().enumerate() {
            let fx = setup.f_obj(x);
            if !mod_family_contains(mcat, &right_fam, &fx, Some(base))
                .map_err(|e| anyhow!("membership check failed: {e}"))?
            {
                f_in_right = false;
                witnesses.push(format!("F(x{i}) lies outside the right family"));
            }
        }
        details.push(("f_lands_in_right".to_string(), f_in_right.to_string()));

        if !(l1f_zero && f_in_right) {
            return Ok(Status::Fail);
        }

        // Build and verify a special left approximation for every
        // extension object: 0 -> e -> mid -> quot -> 0 with mid in the
        // underlying-membership right class and quot structure-exact over
        // the left class.
        let mid_fam = ExtFamily::UInv(right_fam.clone());
        let quot_fam = ExtFamily::Delta(left_fam.clone());
        let mut verified = 0usize;
        for (i, e) in ext.iter().enumerate() {
            match cotorsion::pairs::ext_left_approx(ecat, mcat, pair, e) {
                Err(err) => witnesses.push(format!("e{i}: construction failed: {err}")),
                Ok(seq) => {
                    let mut ok = seq.is_exact(ecat);
                    if !ok {
                        witnesses.push(format!("e{i}: sequence is not exact"));
                    }
                    let anchored = ext_obj_eq(&seq.base(ecat), e);
                    if !anchored {
                        witnesses.push(format!("e{i}: sequence does not start at e{i}"));
                        ok = false;
                    }
                    let mid = seq.mid(ecat);
                    let quot = seq.quotient(ecat);
                    // Rebuild the middle object through the validating
                    // constructor: its structure map must satisfy the
                    // extension axiom (composite with its own image under
                    // the endofunctor equals the unit action).
                    if ExtObject::new(setup, mid.x().clone(), mid.f().mat.clone()).is_err() {
                        witnesses.push(format!("e{i}: middle structure map violates the axiom"));
                        ok = false;
                    }
                    if !ext_family_contains(ecat, mcat, &mid_fam, &mid, Some(ext), Some(base))
                        .map_err(|e| anyhow!("membership check failed: {e}"))?
                    {
                        witnesses.push(format!("e{i}: middle object outside the right class"));
                        ok = false;
                    }
                    if !ext_family_contains(ecat, mcat, &quot_fam, &quot, Some(ext), Some(base))
                        .map_err(|e| anyhow!("membership check failed: {e}"))?
                    {
                        witnesses.push(format!("e{i}: quotient outside the left class"));
                        ok = false;
                    }
                    if ok {
                        verified += 1;
                    }
                }
            }
        }
        details.push(("approximations_verified".to_string(), verified.to_string()));
        details.push(("universe_size".to_string(), ext.len().to_string()));
        Ok(if verified == ext.len() {
            Status::Pass
        } else {
            Status::Fail
        })
    }

    fn task_gorenstein(
        &self,
        window: Option<usize>,
        spli_max: usize,
        silp_max: usize,
        details: &mut Vec<(String, String)>,
        witnesses: &mut Vec<String>,
    ) -> Result<Status> {
        let (setup, _, ecat) = self.need_setup()?;
        let (_, ext) = match self.universe_or_status(details) {
            Ok(u) => u,
            Err(s) => return Ok(s),
        };
        let window = window.unwrap_or(self.window);
        details.push(("window".to_string(), window.to_string()));
        let rep = match gorenstein_window_report(ecat, ext, window, self.budget) {
            Ok(r) => r,
            Err(e) if is_budget_refusal(&e) => {
                details.push(("blocked".to_string(), e.to_string()));
                return Ok(Status::Inconclusive);
            }
            Err(e) => return Err(anyhow!("report failed: {e}")),
        };
        details.push(("spli".to_string(), rep.spli.to_string()));
        details.push(("silp".to_string(), rep.silp.to_string()));
        let spli_ok = matches!(rep.spli, Depth::Finite(d) if d <= spli_max);
        let silp_ok = matches!(rep.silp, Depth::Finite(d) if d <= silp_max);
        details.push((
            "gp_members".to_string(),
            rep.gp_mask.iter().filter(|b| **b).count().to_string(),
        ));
        details.push((
            "structure_exact_members".to_string(),
            rep.delta_all_mask.iter().filter(|b| **b).count().to_string(),
        ));
        details.push((
            "gp_equals_structure_exact".to_string(),
            rep.gp_equals_delta_all.to_string(),
        ));
        if !rep.gp_equals_delta_all {
            for i in 0..ext.len() {
                if rep.gp_mask[i] != rep.delta_all_mask[i] {
                    witnesses.push(format!(
                        "e{i}: window-Gorenstein-projective {} but structure-exact {}",
                        rep.gp_mask[i], rep.delta_all_mask[i]
                    ));
                }
            }
        }

        // Six-way agreement of the finite-dimension classes: projective
        // dimension < inf, <= 1, underlying projective, underlying
        // injective, injective dimension <= 1, < inf.
        let mut masks: [Vec<bool>; 6] = Default::default();
        for e in ext.iter() {
            let pd = ext_projective_dimension(setup, e, window);
            let id = ext_injective_dimension(setup, e, window)
                .map_err(|e| anyhow!("injective dimension failed: {e}"))?;
            masks[0].push(matches!(pd, Depth::Finite(_)));
            masks[1].push(matches!(pd, Depth::Finite(d) if d <= 1));
            masks[2].push(is_projective(e.x()).map_err(|e| anyhow!("{e}"))?);
            masks[3].push(is_injective(e.x()).map_err(|e| anyhow!("{e}"))?);
            masks[4].push(matches!(id, Depth::Finite(d) if d <= 1));
            masks[5].push(matches!(id, Depth::Finite(_)));
        }
        let six_way = masks.iter().all(|m| *m == masks[0]);
        let labels = [
            "finite_proj_dim",
            "proj_dim_le_1",
            "underlying_projective",
            "underlying_injective",
            "inj_dim_le_1",
            "finite_inj_dim",
        ];
        for (label, mask) in labels.iter().zip(&masks) {
            details.push((
                (*label).to_string(),
                mask.iter().filter(|b| **b).count().to_string(),
            ));
        }
        details.push(("six_way_classes_agree".to_string(), six_way.to_string()));
        if !six_way {
            for i in 0..ext.len() {
                let row: Vec<bool> = masks.iter().map(|m| m[i]).collect();
                if row.iter().any(|b| *b != row[0]) {
                    witnesses.push(format!("e{i}: class memberships disagree: {row:?}"));
                }
            }
        }

        let pass = rep.gp_equals_delta_all && spli_ok && silp_ok && six_way;
        Ok(if pass { Status::Pass } else { Status::Fail })
    }

    fn task_bridge_roundtrip(
        &self,
        max_degree: Option<usize>,
        details: &mut Vec<(String, String)>,
        witnesses: &mut Vec<String>,
    ) -> Result<Status> {
        let (setup, _, _) = self.need_setup()?;
        let (base, ext) = match self.universe_or_status(details) {
            Ok(u) => u,
            Err(s) => return Ok(s),
        };
        if !setup.eta_is_zero() {
            bail!("the ring comparison requires the square-zero (zero unit) setup");
        }
        let max_degree = max_degree.unwrap_or(self.window);
        let ring = trivial_extension_ring(setup.algebra(), setup.bimodule(), None)
            .map_err(|e| anyhow!("extension ring construction failed: {e}"))?;
        details.push(("ring_dim".to_string(), ring.lambda().dim().to_string()));
        details.push(("degrees".to_string(), format!("0..={max_degree}")));
        let lctx = cotorsion::module::ModCtx::new(ring.lambda().clone());
        let lam: Vec<Module> = ext
            .iter()
            .map(|e| pair_to_lambda(&ring, e))
            .collect::<cotorsion::Result<_>>()
            .map_err(|e| anyhow!("module translation failed: {e}"))?;

        let mut mismatches = 0usize;
        for (i, e1) in ext.iter().enumerate() {
            for (j, e2) in ext.iter().enumerate() {
                for d in 0..=max_degree {
                    let upstairs = ext_dim_ext(setup, d, e1, e2);
                    let over_ring = ext_dim(&lctx, d, &lam[i], &lam[j]);
                    if upstairs != over_ring {
                        mismatches += 1;
                        if witnesses.len() < 16 {
                            witnesses.push(format!(
                                "[[tasks]]\nkind = \"ext\"\nfrom = \"e{i}\"\nto = \"e{j}\"\ndegree = {d}\nexpect = {over_ring}  # extension category gave {upstairs}"
                            ));
                        }
                    }
                }
            }
        }
        details.push((
            "pairs_checked".to_string(),
            (ext.len() * ext.len()).to_string(),
        ));
        details.push(("dimension_mismatches".to_string(), mismatches.to_string()));

        // Transpose round-trip: extension -> coextension -> extension must
        // reproduce the object on the nose.
        let mut transpose_ok = true;
        for (i, e) in ext.iter().enumerate() {
            let back = to_ext(setup, &to_coext(setup, e));
            if !ext_obj_eq(&back, e) {
                transpose_ok = false;
                witnesses.push(format!("e{i}: transpose round-trip altered the object"));
            }
        }
        details.push(("transpose_roundtrip".to_string(), transpose_ok.to_string()));

        // Ring dictionary round-trip: module translation back to a pair
        // reproduces the object up to isomorphism.
        let mut dictionary_ok = true;
        for (i, v) in lam.iter().enumerate() {
            let back = lambda_to_pair(&ring, v).map_err(|e| anyhow!("translation failed: {e}"))?;
            let same = ext_obj_eq(&back, &ext[i])
                || cotorsion::extcat::find_ext_iso(setup, &back, &ext[i])
                    .map_err(|e| anyhow!("isomorphism search failed: {e}"))?
                    .is_some();
            if !same {
                dictionary_ok = false;
                witnesses.push(format!("e{i}: ring dictionary round-trip lost the object"));
            }
        }
        details.push(("dictionary_roundtrip".to_string(), dictionary_ok.to_string()));

        // Zero unit forces zero counit.
        let mut zeta_zero = true;
        for (i, x) in base.iter().enumerate() {
            if !setup.zeta(x).is_zero() {
                zeta_zero = false;
                witnesses.push(format!("x{i}: counit is nonzero despite zero unit"));
            }
        }
        details.push(("zeta_zero".to_string(), zeta_zero.to_string()));

        let pass = mismatches == 0 && transpose_ok && dictionary_ok && zeta_zero;
        Ok(if pass { Status::Pass } else { Status::Fail })
    }
}

/// Content equality of extension objects (same underlying action, same
/// structure matrix).
fn ext_obj_eq(a: &ExtObject, b: &ExtObject) -> bool {
    a.x().content_key() == b.x().content_key() && a.f().mat == b.f().mat
}

fn parse_base_pair(s: &str) -> Result<BasePair> {
    match s {
        "proj_all" => Ok(BasePair::ProjectivesAll),
        "all_inj" => Ok(BasePair::AllInjectives),
        other => bail!("unknown stock pair '{other}' (expected proj_all or all_inj)"),
    }
}

fn describe_pair_report(side: &str, rep: &PairReport, details: &mut Vec<(String, String)>) {
    details.push((
        format!("{side}_pair"),
        if rep.is_cotorsion_pair() {
            "cotorsion pair".to_string()
        } else {
            format!("not a cotorsion pair ({} defect(s))", rep.defects.len())
        },
    ));
    if let Some(h) = rep.hereditary {
        details.push((format!("{side}_hereditary"), h.to_string()));
    }
    if let Some(c) = rep.closed_along_sequences {
        details.push((format!("{side}_closed_along_sequences"), c.to_string()));
    }
}

/// Renders pair defects as witnesses; Ext-valued defects come out as
/// re-runnable task stanzas.
fn push_defect_witnesses(prefix: &str, defects: &[PairDefect], witnesses: &mut Vec<String>) {
    for d in defects.iter().take(12) {
        match d.kind {
            DefectKind::Orthogonality | DefectKind::Heredity => witnesses.push(format!(
                "[[tasks]]\nkind = \"ext\"\nfrom = \"{prefix}{}\"\nto = \"{prefix}{}\"\ndegree = {}\nexpect = 0  # found {}",
                d.left, d.right, d.degree, d.value
            )),
            DefectKind::LeftMaximality => witnesses.push(format!(
                "{} {prefix}{}: left-class membership disagrees with Ext-orthogonality to the right class",
                d.kind, d.left
            )),
            DefectKind::RightMaximality => witnesses.push(format!(
                "{} {prefix}{}: right-class membership disagrees with Ext-orthogonality to the left class",
                d.kind, d.right
            )),
            DefectKind::KernelClosure => witnesses.push(format!(
                "{}: kernel of {prefix}{} -> {prefix}{} leaves the left class",
                d.kind, d.left, d.right
            )),
            DefectKind::CokernelClosure => witnesses.push(format!(
                "{}: cokernel of {prefix}{} -> {prefix}{} leaves the right class",
                d.kind, d.left, d.right
            )),
        }
    }
    if defects.len() > 12 {
        witnesses.push(format!("... and {} more defect(s)", defects.len() - 12));
    }
}

// ---------------------------------------------------------------------------
// Declaration building
// ---------------------------------------------------------------------------

type ProductInfo = BTreeMap<String, (Vec<String>, ProductLayout)>;

fn build_algebras(
    modulus: u64,
    decls: &BTreeMap<String, AlgebraDecl>,
) -> Result<(BTreeMap<String, Arc<Algebra>>, ProductInfo)> {
    let mut done: BTreeMap<String, Arc<Algebra>> = BTreeMap::new();
    let mut products: ProductInfo = BTreeMap::new();
    loop {
        let mut progressed = false;
        for (name, decl) in decls {
            if done.contains_key(name) {
                continue;
            }
            let built = match decl {
                AlgebraDecl::Field => Some(presets::prime_field(modulus)),
                AlgebraDecl::DualNumbers => Some(presets::dual_numbers(modulus)),
                AlgebraDecl::Table { mul, unit, labels } => Some(
                    Algebra::new(modulus, mul.clone(), unit.clone(), labels.clone())
                        .map_err(|e| anyhow!("algebra '{name}': {e}"))?,
                ),
                AlgebraDecl::Quiver {
                    vertices,
                    arrows,
                    relations,
                    max_path_length,
                } => {
                    let q = QuiverPresentation {
                        vertices: *vertices,
                        arrows: arrows
                            .iter()
                            .map(|a| Arrow {
                                label: a.label.clone(),
                                from: a.from,
                                to: a.to,
                            })
                            .collect(),
                        relations: relations.clone(),
                        max_path_length: *max_path_length,
                    };
                    Some(from_quiver_over(&q, modulus).map_err(|e| anyhow!("algebra '{name}': {e}"))?)
                }
                AlgebraDecl::Product { factors } => {
                    if factors.len() != 2 {
                        bail!("algebra '{name}': products take exactly two factors");
                    }
                    match (done.get(&factors[0]), done.get(&factors[1])) {
                        (Some(a), Some(b)) => {
                            let (prod, layout) =
                                direct_product(a, b).map_err(|e| anyhow!("algebra '{name}': {e}"))?;
                            products.insert(name.clone(), (factors.clone(), layout));
                            Some(prod)
                        }
                        _ => None, // factor not built yet; try next pass
                    }
                }
            };
            if let Some(a) = built {
                done.insert(name.clone(), a);
                progressed = true;
            }
        }
        if done.len() == decls.len() {
            return Ok((done, products));
        }
        if !progressed {
            let unresolved: Vec<&str> = decls
                .keys()
                .filter(|n| !done.contains_key(*n))
                .map(String::as_str)
                .collect();
            bail!(
                "unresolved algebra reference(s) in: {} (unknown factor or cycle)",
                unresolved.join(", ")
            );
        }
    }
}

fn product_factors(
    algebras: &BTreeMap<String, Arc<Algebra>>,
    products: &ProductInfo,
    setup_algebra: &str,
) -> Option<(Vec<Arc<Algebra>>, ProductLayout)> {
    let (names, layout) = products.get(setup_algebra)?;
    let factors = names.iter().map(|n| algebras[n].clone()).collect();
    Some((factors, layout.clone()))
}

fn build_bimodules(
    algebras: &BTreeMap<String, Arc<Algebra>>,
    decls: &BTreeMap<String, BimoduleDecl>,
    modulus: u64,
) -> Result<BTreeMap<String, Arc<Bimodule>>> {
    let alg = |name: &str| -> Result<&Arc<Algebra>> {
        algebras
            .get(name)
            .ok_or_else(|| anyhow!("unknown algebra '{name}'"))
    };
    let mut done: BTreeMap<String, Arc<Bimodule>> = BTreeMap::new();
    loop {
        let mut progressed = false;
        for (name, decl) in decls {
            if done.contains_key(name) {
                continue;
            }
            let built = match decl {
                BimoduleDecl::Table {
                    left,
                    right,
                    left_action,
                    right_action,
                } => {
                    let to_mats = |rows_list: &[Vec<Vec<u64>>]| -> Result<Vec<Matrix>> {
                        rows_list
                            .iter()
                            .map(|rows| {
                                Matrix::from_rows(modulus, rows)
                                    .map_err(|e| anyhow!("bimodule '{name}': {e}"))
                            })
                            .collect()
                    };
                    Some(
                        Bimodule::new(
                            alg(left)?.clone(),
                            alg(right)?.clone(),
                            to_mats(left_action)?,
                            to_mats(right_action)?,
                        )
                        .map_err(|e| anyhow!("bimodule '{name}': {e}"))?,
                    )
                }
                BimoduleDecl::Regular { over } => Some(Bimodule::regular(alg(over)?)),
                BimoduleDecl::Swap { factor } => Some(
                    presets::swap_bimodule(alg(factor)?)
                        .map_err(|e| anyhow!("bimodule '{name}': {e}"))?
                        .bimodule,
                ),
                BimoduleDecl::OneCorner { from, to, inner } => match done.get(inner) {
                    None if decls.contains_key(inner) => None, // next pass
                    None => bail!("bimodule '{name}': unknown inner bimodule '{inner}'"),
                    Some(g) => Some(
                        comma_bridge(&CommaSpec {
                            c: alg(from)?.clone(),
                            d: alg(to)?.clone(),
                            g: g.clone(),
                        })
                        .map_err(|e| anyhow!("bimodule '{name}': {e}"))?
                        .setup
                        .bimodule()
                        .clone(),
                    ),
                },
            };
            if let Some(b) = built {
                done.insert(name.clone(), b);
                progressed = true;
            }
        }
        if done.len() == decls.len() {
            return Ok(done);
        }
        if !progressed {
            let unresolved: Vec<&str> = decls
                .keys()
                .filter(|n| !done.contains_key(*n))
                .map(String::as_str)
                .collect();
            bail!(
                "unresolved bimodule reference(s) in: {} (cycle?)",
                unresolved.join(", ")
            );
        }
    }
}

fn build_setup(
    modulus: u64,
    algebras: &BTreeMap<String, Arc<Algebra>>,
    bimodule_decls: &BTreeMap<String, BimoduleDecl>,
    sec: &crate::config::SetupSection,
) -> Result<Arc<Setup>> {
    let bimodules = build_bimodules(algebras, bimodule_decls, modulus)?;
    let algebra = algebras
        .get(&sec.algebra)
        .ok_or_else(|| anyhow!("unknown algebra '{}'", sec.algebra))?
        .clone();
    let bimodule = bimodules
        .get(&sec.bimodule)
        .ok_or_else(|| anyhow!("unknown bimodule '{}'", sec.bimodule))?
        .clone();
    let mul = match &sec.eta {
        None | Some(EtaDecl::Zero) => None,
        Some(EtaDecl::Table { matrix }) => {
            let mat = Matrix::from_rows(modulus, matrix).map_err(|e| anyhow!("eta matrix: {e}"))?;
            Some(BimoduleMul::new(bimodule.clone(), mat).map_err(|e| anyhow!("eta: {e}"))?)
        }
    };
    Setup::new(algebra, bimodule, mul).map_err(|e| anyhow!("setup: {e}"))
}

fn build_universe(
    setup: &Arc<Setup>,
    factors: &Option<(Vec<Arc<Algebra>>, ProductLayout)>,
    component_max_dim: Option<usize>,
    max_dim: Option<usize>,
    budget: u64,
) -> UniverseState {
    let base = match (component_max_dim, max_dim, factors) {
        (Some(cmd), None, Some((f, layout))) => {
            enumerate_product_modules(setup.algebra(), layout, f, cmd, budget)
        }
        (Some(_), None, None) => {
            return UniverseState::Blocked {
                reason: "component_max_dim requires the setup algebra to be a declared product"
                    .to_string(),
                budget: false,
            }
        }
        (None, Some(md), _) => enumerate_modules(setup.algebra(), md, budget),
        _ => {
            return UniverseState::Blocked {
                reason: "universe needs exactly one of component_max_dim or max_dim".to_string(),
                budget: false,
            }
        }
    };
    let base = match base {
        Ok(b) => b,
        Err(e) => {
            return UniverseState::Blocked {
                budget: is_budget_refusal(&e),
                reason: format!("base enumeration refused: {e}"),
            }
        }
    };
    match cotorsion::extcat::enumerate_ext_objects(setup, &base, budget) {
        Ok(ext) => UniverseState::Ready { base, ext },
        Err(e) => UniverseState::Blocked {
            budget: is_budget_refusal(&e),
            reason: format!("extension enumeration refused: {e}"),
        },
    }
}
