//! Bundled runs regenerating the data behind each figure, using the reference
//! parameters: κ = 2000, x_max = 12, Ω_f = 1, y/Ω_f = 12, b = 0.

use sta_perceptron::faquad::FaquadConfig;
use sta_perceptron::ie::SynthesisConfig;
use sta_perceptron::optimize::{InnerSearch, Method};

use crate::config::{GridSpec, PulseSource, ScanConfig, SweepConfig, SweepKind, TransferConfig};
use crate::error::{CliError, CliResult};

/// One subcommand invocation inside a preset.
#[derive(Debug, Clone)]
pub enum Run {
    Synth(SynthesisConfig),
    Faquad(FaquadConfig),
    Transfer(TransferConfig),
    Sweep(SweepConfig),
    Scan(ScanConfig),
}

pub const PRESETS: &[(&str, &str)] = &[
    ("fig2", "θ, β and Ω for cubic IE at t_f = 1, FAQUAD field, both transfer functions"),
    ("fig3a", "C versus y/Ω_f for cubic IE at t_f = 0.1, 0.2, 0.5, 1"),
    ("fig3b", "C versus y/Ω_f for FAQUAD at t_f = 0.1, 0.2, 0.5, 1"),
    ("fig4", "C versus Ω_f at t_f = 0.2 for cubic IE and FAQUAD"),
    ("fig5a", "C versus t_f for cubic IE, scanned quintic IE and FAQUAD; time-optimal search"),
    ("fig5b", "transfer functions and fields at t_f = 0.15"),
    ("figS1", "transfer functions and fields at t_f = 0.3 for cubic IE and FAQUAD"),
    ("figS2", "C versus a₂ for degree 4 at t_f = 0.15"),
    ("figS3", "C over (a₂, a₃) for degree 5 at t_f = 0.15"),
];

fn faquad_at(t_f: f64) -> FaquadConfig {
    FaquadConfig { t_f, ..FaquadConfig::default() }
}

fn transfer(source: PulseSource, write_pulse: bool) -> Run {
    Run::Transfer(TransferConfig { pulse: source, grid: GridSpec::range(-12.0, 12.0, 0.1), x_max: 12.0, write_pulse })
}

fn sweep(kind: SweepKind, template: SynthesisConfig, grid: GridSpec, methods: Vec<Method>) -> SweepConfig {
    SweepConfig {
        kind,
        template,
        grid,
        methods,
        search: InnerSearch::default(),
        coefficients: None,
        tolerance: None,
    }
}

fn y_scan(method: Method) -> Vec<(String, Run)> {
    [0.1, 0.2, 0.5, 1.0]
        .iter()
        .map(|&t_f| {
            let cfg = sweep(SweepKind::Y, SynthesisConfig::cubic(t_f), GridSpec::range(-12.0, 12.0, 0.5), vec![method]);
            (format!("t_f_{t_f}"), Run::Sweep(cfg))
        })
        .collect()
}

/// Runs making up preset `name`, each with its output subdirectory.
pub fn runs(name: &str) -> CliResult<Vec<(String, Run)>> {
    let runs = match name {
        "fig2" => vec![
            ("ie".into(), Run::Synth(SynthesisConfig::cubic(1.0))),
            ("faquad".into(), Run::Faquad(faquad_at(1.0))),
            ("transfer_ie".into(), transfer(PulseSource::synthesis(SynthesisConfig::cubic(1.0)), false)),
            ("transfer_faquad".into(), transfer(PulseSource::faquad(faquad_at(1.0)), false)),
        ],
        "fig3a" => y_scan(Method::IeCubic),
        "fig3b" => y_scan(Method::Faquad),
        "fig4" => vec![(
            "omega_f".into(),
            Run::Sweep(sweep(
                SweepKind::OmegaF,
                SynthesisConfig::cubic(0.2),
                GridSpec::range(0.1, 1.0, 0.05),
                vec![Method::IeCubic, Method::Faquad],
            )),
        )],
        "fig5a" => vec![
            (
                "t_f".into(),
                Run::Sweep(sweep(
                    SweepKind::Tf,
                    SynthesisConfig::default(),
                    GridSpec::range(0.05, 1.0, 0.01),
                    vec![Method::IeCubic, Method::IeQuintic, Method::Faquad],
                )),
            ),
            (
                "time_optimal".into(),
                Run::Sweep(SweepConfig {
                    tolerance: Some(0.01),
                    ..sweep(
                        SweepKind::TimeOptimal,
                        SynthesisConfig::default(),
                        GridSpec::range(0.1, 0.3, 0.01),
                        vec![Method::IeQuintic, Method::IeCubic],
                    )
                }),
            ),
        ],
        "fig5b" => vec![
            ("ie_cubic".into(), transfer(PulseSource::synthesis(SynthesisConfig::cubic(0.15)), true)),
            (
                "ie_quintic".into(),
                transfer(PulseSource::synthesis(SynthesisConfig::quintic(0.15, -50.0, -3980.0)), true),
            ),
            ("faquad".into(), transfer(PulseSource::faquad(faquad_at(0.15)), true)),
        ],
        "figS1" => vec![
            ("ie_cubic".into(), transfer(PulseSource::synthesis(SynthesisConfig::cubic(0.3)), true)),
            ("faquad".into(), transfer(PulseSource::faquad(faquad_at(0.3)), true)),
        ],
        "figS2" => vec![(
            "a2".into(),
            Run::Scan(ScanConfig { template: SynthesisConfig::quartic(0.15, 0.0), a2: None, a3: None }),
        )],
        "figS3" => vec![(
            "a2_a3".into(),
            Run::Scan(ScanConfig { template: SynthesisConfig::quintic(0.15, 0.0, 0.0), a2: None, a3: None }),
        )],
        other => {
            let names: Vec<&str> = PRESETS.iter().map(|(n, _)| *n).collect();
            return Err(CliError::Config(format!("unknown preset {other:?}; available: {}", names.join(", "))));
        }
    };
    Ok(runs)
}
