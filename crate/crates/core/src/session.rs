//! A loop together with a sampling plan and lazily computed structure.
//!
//! Suites, the theorem harness and the verification pipeline all ask for the same
//! certificates, centers and inner mapping groups. A [`Session`] computes
//! each at most once.

use std::sync::OnceLock;

use crate::analysis::{
    center, certify_bracket_forms, nucleus, upper_central_series, CentralSeries, FormCertificate,
    Subloop,
};
use crate::error::{Error, Result};
use crate::mapping::{
    certify_inner_form, inner_group_closure, GeneratorPolicy, InnerCertificate, InnerGenerators,
    InnerGroup, CLOSURE_BUDGET, DEFINITIONAL_BUDGET,
};
use crate::report::SuiteReport;
use crate::sampling::SamplingPlan;
use crate::suites::check_moufang;
use crate::Loop;

type Cached<T> = OnceLock<std::result::Result<T, String>>;

fn get<T>(cell: &Cached<T>, f: impl FnOnce() -> Result<T>) -> Result<&T> {
    cell.get_or_init(|| f().map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|msg| Error::Refused(msg.clone()))
}

pub struct Session {
    lp: Loop,
    plan: SamplingPlan,
    forms: OnceLock<Option<(SuiteReport, Option<FormCertificate>)>>,
    inner_form: OnceLock<Option<(SuiteReport, Option<InnerCertificate>)>>,
    moufang: OnceLock<SuiteReport>,
    center: OnceLock<Subloop>,
    nucleus: Cached<Subloop>,
    series: Cached<CentralSeries>,
    generators: Cached<InnerGenerators>,
    inn: Cached<InnerGroup>,
}

impl Session {
    pub fn new(lp: Loop, plan: SamplingPlan) -> Session {
        Session {
            lp,
            plan,
            forms: OnceLock::new(),
            inner_form: OnceLock::new(),
            moufang: OnceLock::new(),
            center: OnceLock::new(),
            nucleus: OnceLock::new(),
            series: OnceLock::new(),
            generators: OnceLock::new(),
            inn: OnceLock::new(),
        }
    }

    pub fn lp(&self) -> &Loop {
        &self.lp
    }

    pub fn plan(&self) -> &SamplingPlan {
        &self.plan
    }

    /// Closed-form certification; `None` for Cayley loops.
    pub fn forms(&self) -> Option<&(SuiteReport, Option<FormCertificate>)> {
        self.forms
            .get_or_init(|| certify_bracket_forms(&self.lp, &self.plan).ok())
            .as_ref()
    }

    pub fn form_cert(&self) -> Option<&FormCertificate> {
        self.forms().and_then(|(_, c)| c.as_ref())
    }

    /// Inner-form certification; `None` for Cayley loops.
    pub fn inner_form(&self) -> Option<&(SuiteReport, Option<InnerCertificate>)> {
        self.inner_form
            .get_or_init(|| certify_inner_form(&self.lp, &self.plan).ok())
            .as_ref()
    }

    pub fn inner_cert(&self) -> Option<&InnerCertificate> {
        self.inner_form().and_then(|(_, c)| c.as_ref())
    }

    pub fn moufang(&self) -> &SuiteReport {
        self.moufang
            .get_or_init(|| check_moufang(&self.lp, &self.plan))
    }

    pub fn is_moufang(&self) -> bool {
        self.moufang().passed()
    }

    pub fn center(&self) -> &Subloop {
        self.center
            .get_or_init(|| center(&self.lp, self.form_cert()))
    }

    pub fn nucleus(&self) -> Result<&Subloop> {
        get(&self.nucleus, || nucleus(&self.lp, self.form_cert()))
    }

    pub fn series(&self) -> Result<&CentralSeries> {
        get(&self.series, || {
            upper_central_series(&self.lp, self.form_cert())
        })
    }

    /// Nilpotency class, `None` when the loop is not nilpotent.
    pub fn class(&self) -> Result<Option<usize>> {
        Ok(self.series()?.class())
    }

    pub fn inner_generators(&self) -> Result<&InnerGenerators> {
        get(&self.generators, || {
            InnerGenerators::for_loop(&self.lp, self.inner_cert())
        })
    }

    pub fn inn(&self) -> Result<&InnerGroup> {
        get(&self.inn, || {
            let policy = match self.inner_cert() {
                Some(c) => GeneratorPolicy::Certified(c),
                None => GeneratorPolicy::Definitional {
                    budget: DEFINITIONAL_BUDGET,
                },
            };
            let inn = inner_group_closure(&self.lp, policy, CLOSURE_BUDGET)?;
            if !inn.is_complete() {
                return Err(Error::Refused(format!(
                    "inner mapping group exceeds {CLOSURE_BUDGET} elements"
                )));
            }
            Ok(inn)
        })
    }
}
