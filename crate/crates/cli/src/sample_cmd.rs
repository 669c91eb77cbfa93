use crate::args::{DynamicsArg, ImageFormat, SampleArgs};
use crate::exact_cmds::spec_of;
use crate::output::{sink, usage, CliError, Outcome};
use fivevertex::exact::{parse_rational, to_f64};
use fivevertex_sampler::archive::SampleRecord;
use fivevertex_sampler::render::render_entropy_ppm;
use fivevertex_sampler::{
    cftp_sample, disordered_regions, measure_vertex_densities, render, CftpOptions, Dynamics, Format, Style,
};
use serde_json::json;
use std::io::Write;

pub fn sample(a: SampleArgs) -> Result<Outcome, CliError> {
    let spec = spec_of(a.spec)?;
    let x = parse_rational(&a.x)?;
    let xf = to_f64(&x);
    if !(xf > 0.0) {
        return Err(usage("x must be positive"));
    }
    if a.samples == 0 {
        return Err(usage("need at least one sample"));
    }
    let dynamics = match a.dynamics {
        DynamicsArg::HeatBath => Dynamics::HeatBath,
        DynamicsArg::PlusMinusOne => Dynamics::PlusMinusOne,
    };
    if xf > 1.0 {
        eprintln!("warning: the coupling is not monotone for x > 1 on general boxes; samples may be biased");
    }
    let opts = CftpOptions { dynamics, max_sweeps: a.max_sweeps, ..CftpOptions::default() };
    let mut archive = sink(a.archive.as_deref())?;
    let mut configs = Vec::new();
    let mut times = Vec::new();
    for k in 0..a.samples {
        let seed = a.seed.wrapping_add(k);
        let s = cftp_sample(&spec, xf, seed, &opts)?;
        writeln!(archive, "{}", SampleRecord::new(&spec, &x, seed, &s).to_json_line())?;
        times.push(s.coalescence_t);
        configs.push(s.config);
    }
    archive.flush()?;
    if let Some(path) = &a.image {
        let format = match a.format {
            ImageFormat::Svg => Format::Svg,
            ImageFormat::Ppm => Format::Ppm,
        };
        let style = Style { cell: a.cell, stroke: a.stroke, color_vertices: a.color_vertices };
        std::fs::write(path, render(&configs[0], &spec, format, &style)?)?;
    }
    let densities = measure_vertex_densities(&configs, &spec)?;
    if let Some(path) = &a.density {
        std::fs::write(path, render_entropy_ppm(&densities, a.cell.max(1))?)?;
    }
    eprintln!(
        "{}",
        json!({
            "samples": a.samples,
            "coalescence_T": { "min": times.iter().min(), "max": times.iter().max() },
            "disordered_regions": disordered_regions(&densities),
        })
    );
    Ok(Outcome::Pass)
}
