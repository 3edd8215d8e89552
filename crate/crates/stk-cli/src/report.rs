use std::fmt::Write as _;

use serde::Serialize;
use stk_graph::{Graph, Lattice, VertexSet};
use stk_peak::{Certificate, PeakSystem};
use stk_stabilizer::{
    describe, emit_presentation, is_in_st_k, tower_factorize, Automorphism, BlockKind, Config, MatrixFrame,
    PresentationJson, Strategy,
};
use stk_whitehead::WhiteheadAuto;
use stk_word::{conjugacy_canonical, conjugacy_length, format_word, normal_form, parse_word};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Gap,
    Dot,
}

/// Search bounds and presentation switches shared by all subcommands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub transversal: Vec<String>,
    pub depth: usize,
    pub radius: usize,
    pub format: OutputFormat,
    pub keep_perms: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { transversal: Vec::new(), depth: 8, radius: 3, format: OutputFormat::Text, keep_perms: true }
    }
}

impl RunConfig {
    fn lattice(&self, g: &Graph) -> Result<Lattice, CliError> {
        let mut lat = Lattice::build(g);
        for name in &self.transversal {
            lat.set_representative(g.vertex(name)?);
        }
        Ok(lat)
    }

    fn check_bounds(&self) -> Result<(), CliError> {
        if self.depth == 0 || self.radius == 0 {
            return Err(CliError::Invalid("--depth and --radius must be positive".into()));
        }
        Ok(())
    }
}

fn names(g: &Graph, s: VertexSet) -> Vec<String> {
    g.set_names(s).into_iter().map(str::to_string).collect()
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable report");
    s.push('\n');
    s
}

fn unsupported(cmd: &str, f: OutputFormat) -> CliError {
    CliError::Parse(format!("`{cmd}` has no {f:?} output"))
}

#[derive(Serialize)]
struct VertexReport {
    vertex: String,
    admissible: Vec<String>,
    class: Vec<String>,
    height: usize,
}

#[derive(Serialize)]
struct ClassReport {
    representative: String,
    members: Vec<String>,
    admissible: Vec<String>,
    height: usize,
    case: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<usize>,
    short: Vec<String>,
    out: Vec<String>,
}

#[derive(Serialize)]
struct LevelReport {
    k: usize,
    vertices: Vec<String>,
    transversal: Vec<String>,
    cumulative: Vec<String>,
}

#[derive(Serialize)]
struct Analysis {
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    admissible: Vec<VertexReport>,
    classes: Vec<ClassReport>,
    covers: Vec<(String, String)>,
    height: usize,
    levels: Vec<LevelReport>,
}

/// Lattice, classes, heights, levels and the abelian/free case of each class.
pub fn analyze(g: &Graph, cfg: &RunConfig) -> Result<String, CliError> {
    let lat = cfg.lattice(g)?;
    let name = |v: usize| g.name(v).to_string();
    let mut classes = Vec::new();
    for nd in &lat.nodes {
        let part = g.class_partition(nd.representative);
        let frame = MatrixFrame::new(g, nd.representative).ok();
        classes.push(ClassReport {
            representative: name(nd.representative),
            members: names(g, nd.class),
            admissible: names(g, nd.set),
            height: nd.height,
            case: if part.abelian { "abelian" } else { "free" },
            r: frame.as_ref().map(|f| f.r()),
            s: frame.as_ref().map(|f| f.s),
            short: names(g, part.a_s),
            out: names(g, part.a_out),
        });
    }
    let report = Analysis {
        vertices: g.names().to_vec(),
        edges: g.edges().into_iter().map(|(u, v)| (name(u), name(v))).collect(),
        admissible: (0..g.len())
            .map(|v| VertexReport {
                vertex: name(v),
                admissible: names(g, g.admissible(v)),
                class: names(g, lat.class(v)),
                height: lat.height(v),
            })
            .collect(),
        classes,
        covers: lat.cover_pairs().into_iter().map(|(u, v)| (name(u), name(v))).collect(),
        height: lat.max_height,
        levels: (0..=lat.max_height)
            .map(|k| LevelReport {
                k,
                vertices: names(g, lat.levels[k]),
                transversal: lat.transversal[k].iter().map(|&v| name(v)).collect(),
                cumulative: names(g, lat.cumulative[k]),
            })
            .collect(),
    };
    match cfg.format {
        OutputFormat::Json => Ok(json(&report)),
        OutputFormat::Dot => Ok(lat.to_dot(g)),
        OutputFormat::Gap => Err(unsupported("analyze", cfg.format)),
        OutputFormat::Text => {
            let set = |v: &[String]| format!("{{{}}}", v.join(","));
            let mut s = String::new();
            let _ = writeln!(s, "vertices: {}  edges: {}  h = {}", report.vertices.len(), report.edges.len(), report.height);
            let _ = writeln!(s, "{:<10} {:<24} {:<12} {}", "vertex", "a(x)", "[x]", "height");
            for v in &report.admissible {
                let _ = writeln!(s, "{:<10} {:<24} {:<12} {}", v.vertex, set(&v.admissible), set(&v.class), v.height);
            }
            let _ = writeln!(s, "classes:");
            for c in &report.classes {
                let shape = match (c.r, c.s) {
                    (Some(r), Some(k)) => format!("abelian r={r} s={k}"),
                    _ => format!("free a_s={} a_out={}", set(&c.short), set(&c.out)),
                };
                let _ = writeln!(s, "  [{}] = {}  h={}  {}", c.representative, set(&c.members), c.height, shape);
            }
            let covers: Vec<String> = report.covers.iter().map(|(u, v)| format!("{u}<{v}")).collect();
            let _ = writeln!(s, "covers: {}", covers.join(" "));
            for l in &report.levels {
                let _ = writeln!(
                    s,
                    "level {}: v = {}  C = {}  A = {}",
                    l.k,
                    set(&l.vertices),
                    set(&l.transversal),
                    set(&l.cumulative)
                );
            }
            Ok(s)
        }
    }
}

/// `;`-separated Whitehead literals; `(lit)^-1` inverts a factor.
pub fn parse_product(g: &Graph, spec: &str) -> Result<Vec<(WhiteheadAuto, i32)>, CliError> {
    let mut out = Vec::new();
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (lit, e) = match part.strip_prefix('(').and_then(|p| p.strip_suffix(")^-1")) {
            Some(inner) => (inner, -1),
            None => (part, 1),
        };
        out.push((WhiteheadAuto::parse(g, lit)?, e));
    }
    Ok(out)
}

#[derive(Serialize)]
struct FactorReport {
    level: usize,
    class: String,
    images: Vec<(String, String)>,
}

#[derive(Serialize)]
struct Decomposition {
    automorphism: Vec<(String, String)>,
    factors: Vec<FactorReport>,
    word: String,
}

/// Tower factorisation φ = θ_h ⋯ θ_0 of a product of Whitehead automorphisms.
pub fn decompose(g: &Graph, spec: &str, cfg: &RunConfig) -> Result<String, CliError> {
    cfg.check_bounds()?;
    let lat = cfg.lattice(g)?;
    let phi = Automorphism::product(g, &parse_product(g, spec)?);
    if !is_in_st_k(g, &lat, &phi.fwd, Some(&phi.inv), cfg.depth)? {
        return Err(CliError::Invalid("automorphism is not in St(K)".into()));
    }
    let t = tower_factorize(g, &lat, &phi)?;
    if t.recompose(g) != phi {
        return Err(CliError::Invalid("tower factors do not recompose".into()));
    }
    let config = Config { keep_perms: cfg.keep_perms, depth: cfg.depth, strategy: Strategy::default() };
    let sp = emit_presentation(g, &lat, &config)?;
    let word = sp.express(g, &lat, &phi, cfg.depth)?;
    let report = Decomposition {
        automorphism: describe(g, &phi),
        factors: t
            .factors
            .iter()
            .filter(|f| !f.auto.is_identity())
            .map(|f| FactorReport { level: f.level, class: g.name(f.rep).to_string(), images: describe(g, &f.auto) })
            .collect(),
        word: sp.pres.word_string(&word),
    };
    let pairs = |ps: &[(String, String)]| ps.iter().map(|(v, w)| format!("{v} -> {w}")).collect::<Vec<_>>().join(", ");
    match cfg.format {
        OutputFormat::Json => Ok(json(&report)),
        OutputFormat::Text => {
            let mut s = format!("phi: {}\n", if report.automorphism.is_empty() { "id".into() } else { pairs(&report.automorphism) });
            for f in &report.factors {
                let _ = writeln!(s, "  level {} class {}: {}", f.level, f.class, pairs(&f.images));
            }
            let _ = writeln!(s, "word: {}", report.word);
            Ok(s)
        }
        f => Err(unsupported("decompose", f)),
    }
}

#[derive(Serialize)]
struct BlockReport {
    representative: String,
    level: usize,
    kind: &'static str,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct PresentationReport {
    #[serde(flatten)]
    pres: PresentationJson,
    classes: Vec<BlockReport>,
}

/// Finite presentation of St(𝒦) on inversions and transvections, verified before output.
pub fn present(g: &Graph, cfg: &RunConfig) -> Result<String, CliError> {
    cfg.check_bounds()?;
    let lat = cfg.lattice(g)?;
    let config = Config { keep_perms: cfg.keep_perms, depth: cfg.depth, strategy: Strategy::default() };
    let sp = emit_presentation(g, &lat, &config)?;
    if let Some(bad) = sp.pres.first_failure(g, config.strategy) {
        return Err(CliError::Invalid(format!("relator {} does not hold", sp.pres.word_string(&sp.pres.relators[bad].word))));
    }
    let classes: Vec<BlockReport> = sp
        .blocks
        .iter()
        .map(|b| BlockReport {
            representative: g.name(b.rep).to_string(),
            level: b.level,
            kind: match b.kind {
                BlockKind::Abelian(_) => "abelian",
                BlockKind::Free { .. } => "free",
            },
            generators: sp.pres.generators[b.range.clone()].iter().map(|x| x.symbol.clone()).collect(),
        })
        .collect();
    match cfg.format {
        OutputFormat::Json => Ok(json(&PresentationReport { pres: sp.pres.to_json_value(g), classes })),
        OutputFormat::Gap => Ok(sp.pres.to_gap()),
        OutputFormat::Text => {
            let mut s = String::new();
            for b in &classes {
                let _ = writeln!(s, "# level {} class {} ({}): {}", b.level, b.representative, b.kind, b.generators.join(" "));
            }
            for x in &sp.pres.generators {
                let _ = writeln!(s, "{} = {}", x.symbol, x.auto.to_literal(g));
            }
            s.push_str(&sp.pres.to_text());
            Ok(s)
        }
        f => Err(unsupported("present", f)),
    }
}

#[derive(Serialize)]
struct CertifyReport {
    class: String,
    word: String,
    identity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    moved: Option<String>,
    cases: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
}

/// Decides whether a word over Ω_x is trivial and certifies it from R_x.
pub fn certify(g: &Graph, class: &str, word: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let x = g.vertex(class)?;
    let sys = PeakSystem::new(g, x, Strategy::default())?;
    let w = sys.parse_word(word)?;
    let res = sys.word_problem(&w)?;
    if let Some(cert) = &res.certificate {
        sys.replay(cert)?;
    }
    let mut cases: Vec<String> = res.traces.iter().flat_map(|t| t.labels()).map(|l| l.to_string()).collect();
    cases.dedup();
    let report = CertifyReport {
        class: class.to_string(),
        word: sys.format_word(&w),
        identity: res.identity,
        moved: res.moved,
        cases,
        certificate: res.certificate,
    };
    match cfg.format {
        OutputFormat::Json => Ok(json(&report)),
        OutputFormat::Text => {
            let Some(cert) = &report.certificate else {
                return Ok(format!("NotIdentity: moves {}\n", report.moved.unwrap_or_default()));
            };
            let mut s = format!("identity: {} steps\n", cert.steps.len());
            let word = |w: &[(String, i32)]| {
                w.iter().map(|(g, e)| if *e > 0 { g.clone() } else { format!("({g})^-1") }).collect::<Vec<_>>().join(" ")
            };
            for st in &cert.steps {
                let _ = writeln!(s, "  {:<6} @{:<3} {} => {}", st.rule, st.params.pos, word(&st.before), word(&st.after));
            }
            Ok(s)
        }
        f => Err(unsupported("certify", f)),
    }
}

#[derive(Serialize)]
struct ApplyReport {
    word: String,
    image: String,
    conjugacy_length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    conjugacy_representative: Option<String>,
}

/// Image of a group word under a product of Whitehead automorphisms.
pub fn apply(g: &Graph, spec: &str, word: &str, cfg: &RunConfig) -> Result<String, CliError> {
    cfg.check_bounds()?;
    let phi = Automorphism::product(g, &parse_product(g, spec)?);
    let w = normal_form(g, &parse_word(g, word)?);
    let image = phi.fwd.apply(g, &w);
    let rep = conjugacy_canonical(g, &image, cfg.radius).ok();
    let report = ApplyReport {
        word: format_word(g, w.letters()),
        image: format_word(g, image.letters()),
        conjugacy_length: conjugacy_length(g, &image),
        conjugacy_representative: rep.map(|r| format_word(g, r.letters())),
    };
    match cfg.format {
        OutputFormat::Json => Ok(json(&report)),
        OutputFormat::Text => Ok(format!("{}\n", report.image)),
        f => Err(unsupported("wh apply", f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use stk_graph::example_3_1;

    fn cfg(format: OutputFormat) -> RunConfig {
        RunConfig { format, ..RunConfig::default() }
    }

    #[test]
    fn analyze_is_deterministic() {
        let g = example_3_1();
        let a = analyze(&g, &cfg(OutputFormat::Json)).unwrap();
        assert_eq!(a, analyze(&g, &cfg(OutputFormat::Json)).unwrap());
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["height"], 3);
        assert!(analyze(&g, &cfg(OutputFormat::Dot)).unwrap().starts_with("digraph"));
    }

    #[test]
    fn single_vertex_reports() {
        let g = Graph::null(1);
        let v: serde_json::Value = serde_json::from_str(&analyze(&g, &cfg(OutputFormat::Json)).unwrap()).unwrap();
        assert_eq!(v["height"], 0);
        assert_eq!(v["classes"][0]["case"], "abelian");
        let p = present(&g, &cfg(OutputFormat::Text)).unwrap();
        assert!(p.contains("inv:x0"));
    }

    #[test]
    fn products_parse_with_inverses() {
        let g = example_3_1();
        let f = parse_product(&g, "tau a d; (inv e)^-1").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[1].1, -1);
        assert!(matches!(parse_product(&g, "tau a"), Err(CliError::Parse(_))));
    }

    #[test]
    fn conjugations_are_rejected() {
        let g = example_3_1();
        let err = decompose(&g, "wh {a, a^-1, b, b^-1, c, c^-1, d, d^-1, e, e^-1, f, f^-1, g, g^-1, i, i^-1, h} h", &cfg(OutputFormat::Text));
        assert!(matches!(err, Err(CliError::Invalid(_))), "{err:?}");
        assert_eq!(decompose(&g, "", &cfg(OutputFormat::Text)).unwrap(), "phi: id\nword: 1\n");
    }

    #[test]
    fn apply_transvection() {
        let g = example_3_1();
        assert_eq!(apply(&g, "tau a d", "a b", &cfg(OutputFormat::Text)).unwrap(), "a b d\n");
    }
}
