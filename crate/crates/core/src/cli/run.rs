use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::report::*;
use super::{export_field, load_document, CliError, LoadedDocument, OBSERVED_NETWORK};
use crate::model::{Scenario, Slice};
use crate::muse::{
    available_spectrum, harvest_metrics, occupancy_map, opportunity_map, quantify, rx_consumption,
    total_spectrum, tx_consumption, HarvestMetrics, PowerField, Protected, SpectrumQuantity,
};
use crate::policy::{apply_guard_margin, attribute_harmful_interference, enforce, price};
use crate::sam::{admit_quantified, compare_policies, AdmissionOutcome, ENTRANT_NETWORK};

#[derive(Debug, Parser)]
#[command(name = "specspace", version, about = "Spectrum-space quantification engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Export occupancy rasters
    Occupancy(SliceArgs),
    /// Export opportunity rasters
    Opportunity(OpportunityArgs),
    /// Total, available and per-entity consumed spectrum
    Quantify(QuantifyArgs),
    /// Admit the document's requests under quantified rights
    Admit(AdmitArgs),
    /// Admit, then check observed transmitters against their grants
    Enforce(AdmitArgs),
    /// Compare quantified admission with the binary sensing baseline
    CompareOsa(CompareArgs),
    /// Everything above in one report
    Report(CompareArgs),
}

#[derive(Debug, Args)]
struct Common {
    /// Scenario document (TOML)
    #[arg(long)]
    scenario: PathBuf,
    /// Output directory
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct SliceSel {
    #[arg(long)]
    band: Option<usize>,
    #[arg(long)]
    quantum: Option<usize>,
}

#[derive(Debug, Args)]
struct Protect {
    /// `all`, or comma-separated network and receiver ids
    #[arg(long, default_value = "all")]
    protect: String,
}

#[derive(Debug, Args)]
struct SliceArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    slice: SliceSel,
}

#[derive(Debug, Args)]
struct OpportunityArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    slice: SliceSel,
    #[command(flatten)]
    protect: Protect,
}

#[derive(Debug, Args)]
struct QuantifyArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    protect: Protect,
}

#[derive(Debug, Args)]
struct AdmitArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    protect: Protect,
    #[arg(long)]
    margin_db: Option<f64>,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    protect: Protect,
    #[arg(long)]
    margin_db: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    sensitivity_dbm: Option<f64>,
}

/// Runs the command line, writing to the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut std::io::stdout(), &mut std::io::stderr())
}

/// Runs the command line and returns the exit code: 0 on success, 1 for
/// usage, parse and validation errors, 2 for I/O errors.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Occupancy(a) => {
            let doc = load_document(&a.common.scenario)?;
            let s = &doc.scenario;
            for slice in selected_slices(s, &a.slice)? {
                let field = occupancy_map(s, slice).map_err(|e| CliError::Invalid(e.to_string()))?;
                write_raster(&a.common.out, "occupancy", &field, out)?;
            }
            Ok(())
        }
        Command::Opportunity(a) => {
            let doc = load_document(&a.common.scenario)?;
            let s = &doc.scenario;
            let protected = resolve_protect(s, &a.protect.protect)?;
            for slice in selected_slices(s, &a.slice)? {
                let map = opportunity_map(s, slice, &protected).map_err(|e| CliError::Invalid(e.to_string()))?;
                write_raster(&a.common.out, "opportunity", &map.field, out)?;
            }
            Ok(())
        }
        Command::Quantify(a) => {
            let doc = load_document(&a.common.scenario)?;
            let protected = resolve_protect(&doc.scenario, &a.protect.protect)?;
            let mut report = base_report("quantify", &doc, &protected);
            report.consumption = consumption(&doc);
            write_report(&a.common.out, &report, out)
        }
        Command::Admit(a) => {
            let doc = load_document(&a.common.scenario)?;
            let protected = resolve_protect(&doc.scenario, &a.protect.protect)?;
            let margin = margin(&doc, a.margin_db)?;
            let mut report = base_report("admit", &doc, &protected);
            let (outcome, after) = admit(&doc, margin, &protected)?;
            report.admission = Some(AdmissionSection::new("quantified", &outcome));
            report.prices = prices(&doc, &after);
            write_report(&a.common.out, &report, out)
        }
        Command::Enforce(a) => {
            let doc = load_document(&a.common.scenario)?;
            let protected = resolve_protect(&doc.scenario, &a.protect.protect)?;
            let margin = margin(&doc, a.margin_db)?;
            let mut report = base_report("enforce", &doc, &protected);
            let (outcome, after) = admit(&doc, margin, &protected)?;
            report.admission = Some(AdmissionSection::new("quantified", &outcome));
            report.enforcement = Some(enforcement(&doc, &outcome, &after, &protected));
            write_report(&a.common.out, &report, out)
        }
        Command::CompareOsa(a) => {
            let doc = load_document(&a.common.scenario)?;
            let protected = resolve_protect(&doc.scenario, &a.protect.protect)?;
            let margin = margin(&doc, a.margin_db)?;
            let sensitivity = a.sensitivity_dbm.unwrap_or(doc.policy.sensitivity_dbm);
            let mut report = base_report("compare-osa", &doc, &protected);
            report.comparison = Some(comparison(&doc, margin, sensitivity, &protected)?);
            write_report(&a.common.out, &report, out)
        }
        Command::Report(a) => {
            let doc = load_document(&a.common.scenario)?;
            let protected = resolve_protect(&doc.scenario, &a.protect.protect)?;
            let margin = margin(&doc, a.margin_db)?;
            let sensitivity = a.sensitivity_dbm.unwrap_or(doc.policy.sensitivity_dbm);
            let mut report = base_report("report", &doc, &protected);
            report.consumption = consumption(&doc);
            let (outcome, after) = admit(&doc, margin, &protected)?;
            report.admission = Some(AdmissionSection::new("quantified", &outcome));
            report.enforcement = Some(enforcement(&doc, &outcome, &after, &protected));
            report.harvest = Some(HarvestSection::new(margin, &harvest(&doc.scenario, margin, &protected)?));
            report.comparison = Some(comparison(&doc, margin, sensitivity, &protected)?);
            report.prices = prices(&doc, &after);
            write_report(&a.common.out, &report, out)
        }
    }
}

fn all_bands_quanta(s: &Scenario) -> (Vec<usize>, Vec<usize>) {
    ((0..s.dims.b_hat).collect(), (0..s.dims.t_hat).collect())
}

fn selected_slices(s: &Scenario, sel: &SliceSel) -> Result<Vec<Slice>, CliError> {
    if let Some(b) = sel.band.filter(|&b| b >= s.dims.b_hat) {
        return Err(CliError::Invalid(format!("band {b} out of range (0..{})", s.dims.b_hat)));
    }
    if let Some(q) = sel.quantum.filter(|&q| q >= s.dims.t_hat) {
        return Err(CliError::Invalid(format!("quantum {q} out of range (0..{})", s.dims.t_hat)));
    }
    Ok(s.dims
        .slices()
        .into_iter()
        .filter(|sl| sel.band.is_none_or(|b| sl.band == b) && sel.quantum.is_none_or(|q| sl.quantum == q))
        .collect())
}

fn resolve_protect(s: &Scenario, arg: &str) -> Result<Protected, CliError> {
    if arg.trim() == "all" {
        return Ok(Protected::All);
    }
    let mut ids = BTreeSet::new();
    for id in arg.split(',').map(str::trim) {
        if let Some(n) = s.networks.iter().find(|n| n.id == id) {
            ids.extend(n.receivers.iter().map(|r| r.id.clone()));
        } else if s.receiver(id).is_some() {
            ids.insert(id.to_string());
        } else {
            return Err(CliError::Usage(format!(
                "--protect: {id:?} is neither a network nor a receiver id"
            )));
        }
    }
    Ok(Protected::Receivers(ids))
}

fn margin(doc: &LoadedDocument, flag: Option<f64>) -> Result<f64, CliError> {
    let m = flag.unwrap_or(doc.policy.margin_db);
    if !(m >= 0.0) {
        return Err(CliError::Usage(format!("--margin-db must be >= 0, got {m}")));
    }
    Ok(m)
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn write_file(path: PathBuf, text: &str, out: &mut dyn Write) -> Result<(), CliError> {
    std::fs::write(&path, text).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let _ = writeln!(out, "{}", path.display());
    Ok(())
}

fn write_raster(dir: &Path, kind: &str, field: &PowerField, out: &mut dyn Write) -> Result<(), CliError> {
    ensure_dir(dir)?;
    let name = format!("{kind}_b{}_q{}.csv", field.slice.band, field.slice.quantum);
    write_file(dir.join(name), &export_field(field), out)
}

fn write_report(dir: &Path, report: &ReportDocument, out: &mut dyn Write) -> Result<(), CliError> {
    ensure_dir(dir)?;
    write_file(dir.join("report.toml"), &report.to_toml(), out)
}

fn base_report(command: &str, doc: &LoadedDocument, protected: &Protected) -> ReportDocument {
    let s = &doc.scenario;
    ReportDocument {
        command: command.to_string(),
        protected: s
            .receivers()
            .filter(|r| protected.includes(r))
            .map(|r| r.id.clone())
            .collect(),
        psi_total: (&total_spectrum(&s.grid, &s.dims, &s.bounds)).into(),
        psi_available: (&available_spectrum(s, protected)).into(),
        consumption: Vec::new(),
        admission: None,
        enforcement: None,
        harvest: None,
        comparison: None,
        prices: None,
    }
}

fn priced(doc: &LoadedDocument, q: &SpectrumQuantity) -> Option<f64> {
    doc.policy.prices.as_ref().map(|p| sig12(price(q, p)))
}

fn consumption(doc: &LoadedDocument) -> Vec<EntityEntry> {
    let s = &doc.scenario;
    let (bands, quanta) = all_bands_quanta(s);
    let mut entries = Vec::new();
    for tx in s.transmitters() {
        let q = quantify(&tx_consumption(tx, s, &bands, &quanta), &s.grid).expect("same grid");
        entries.push(EntityEntry {
            id: tx.id.clone(),
            kind: "transmitter",
            network: tx.network_id.clone(),
            price: priced(doc, &q),
            consumed: (&q).into(),
        });
    }
    for rx in s.receivers() {
        let q = quantify(&rx_consumption(rx, s, &bands, &quanta), &s.grid).expect("same grid");
        entries.push(EntityEntry {
            id: rx.id.clone(),
            kind: "receiver",
            network: rx.network_id.clone(),
            price: priced(doc, &q),
            consumed: (&q).into(),
        });
    }
    entries
}

fn admit(doc: &LoadedDocument, margin: f64, protected: &Protected) -> Result<(AdmissionOutcome, Scenario), CliError> {
    admit_quantified(&doc.scenario, &doc.requests, margin, protected).map_err(|e| CliError::Invalid(e.to_string()))
}

/// Scenario as observed on air: the admitted scenario with each observed
/// transmitter either replacing the entity of the same id or joining it.
fn observed_scenario(doc: &LoadedDocument, after: &Scenario) -> Scenario {
    let mut observed = after.clone();
    for t in &doc.observed {
        let existing = observed
            .networks
            .iter_mut()
            .flat_map(|n| n.transmitters.iter_mut())
            .find(|x| x.id == t.id);
        match existing {
            Some(x) => {
                let network_id = x.network_id.clone();
                *x = t.clone();
                x.network_id = network_id;
            }
            None => {
                let mut t = t.clone();
                t.network_id = OBSERVED_NETWORK.to_string();
                observed.add_transmitter(t);
            }
        }
    }
    observed
}

fn enforcement(
    doc: &LoadedDocument,
    outcome: &AdmissionOutcome,
    after: &Scenario,
    protected: &Protected,
) -> EnforcementSection {
    let observed = observed_scenario(doc, after);
    let licensed: BTreeSet<String> = doc.scenario.transmitters().map(|t| t.id.clone()).collect();
    let grants: Vec<_> = outcome.grants().cloned().collect();
    let violations = enforce(&grants, &observed, &licensed, doc.policy.tolerance_db);
    let mut harmful = Vec::new();
    for rx in observed.receivers().filter(|r| protected.includes(r)) {
        for &q in &rx.active_quanta {
            let a = attribute_harmful_interference(rx, &observed, q);
            if a.excess_mw > 0.0 {
                harmful.push(AttributionEntry::from(&a));
            }
        }
    }
    EnforcementSection {
        tolerance_db: sig12(doc.policy.tolerance_db),
        violations: violations.iter().map(ViolationEntry::from).collect(),
        harmful_interference: harmful,
    }
}

/// Guarded opportunity measured against the unguarded one.
fn harvest(s: &Scenario, margin: f64, protected: &Protected) -> Result<HarvestMetrics, CliError> {
    let invalid = |e: &dyn std::fmt::Display| CliError::Invalid(e.to_string());
    let mut total = HarvestMetrics::default();
    for slice in s.dims.slices() {
        let truth = opportunity_map(s, slice, protected).map_err(|e| invalid(&e))?.field;
        let guarded = apply_guard_margin(&truth, margin, &s.bounds).map_err(|e| invalid(&e))?;
        let h = harvest_metrics(&guarded, &truth, &s.grid, &s.bounds).map_err(|e| invalid(&e))?;
        total = total.combine(&h);
    }
    Ok(total)
}

fn comparison(
    doc: &LoadedDocument,
    margin: f64,
    sensitivity: f64,
    protected: &Protected,
) -> Result<ComparisonSection, CliError> {
    let c = compare_policies(&doc.scenario, &doc.requests, margin, sensitivity, protected)
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(ComparisonSection {
        margin_db: sig12(margin),
        sensitivity_dbm: sig12(sensitivity),
        quantified: (&c.quantified).into(),
        osa: (&c.osa).into(),
    })
}

fn prices(doc: &LoadedDocument, after: &Scenario) -> Option<PriceSection> {
    let sheet = doc.policy.prices.as_ref()?;
    let (bands, quanta) = all_bands_quanta(after);
    let mut entrants = Vec::new();
    let mut total = 0.0;
    for tx in after.transmitters().filter(|t| t.network_id == ENTRANT_NETWORK) {
        let q = quantify(&tx_consumption(tx, after, &bands, &quanta), &after.grid).expect("same grid");
        let amount = price(&q, sheet);
        total += amount;
        entrants.push(PriceEntry {
            id: tx.id.clone(),
            consumed: (&q).into(),
            amount: sig12(amount),
        });
    }
    Some(PriceSection {
        rate: sig12(sheet.rate),
        total_amount: sig12(total),
        entrants,
    })
}
