use std::path::PathBuf;

use clap::Args;
use geodex::families::{FamilySpec, SpaceSpec};
use geodex::spaces::SpaceKind;
use geodex::{Error, Result};
use serde::Serialize;

/// A graph given by family name and parameters, by a spec string such as
/// `johnson(5,2)`, or by a graph file.
#[derive(Args, Clone, Debug, Default, Serialize)]
pub struct FamilyArgs {
    /// Family name, e.g. johnson, hamming, grassmann, dualpolar, pg
    #[arg(long)]
    pub family: Option<String>,
    /// Compact spec, e.g. "johnson(5,2)" or "pg(sp,3,2,2)"
    #[arg(long)]
    pub spec: Option<String>,
    /// Graph file in exchange JSON or GDX1 format
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub q: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    /// Space kind: sp, o, o+, o-, u-odd, u-even
    #[arg(long)]
    pub space: Option<String>,
    #[arg(long)]
    pub omega: Option<usize>,
}

pub enum Source {
    Family(FamilySpec),
    File(PathBuf),
}

struct Params<'a> {
    args: &'a FamilyArgs,
    used: Vec<&'static str>,
}

impl Params<'_> {
    fn take<T: Copy>(&mut self, name: &'static str, value: Option<T>) -> Result<T> {
        self.used.push(name);
        value.ok_or_else(|| Error::BadParams(format!("missing --{name}")))
    }

    fn n(&mut self) -> Result<usize> {
        self.take("n", self.args.n)
    }
    fn k(&mut self) -> Result<usize> {
        self.take("k", self.args.k)
    }
    fn m(&mut self) -> Result<usize> {
        self.take("m", self.args.m)
    }
    fn q(&mut self) -> Result<u32> {
        self.take("q", self.args.q)
    }
    fn r(&mut self) -> Result<u32> {
        self.take("r", self.args.r)
    }

    fn space(&mut self) -> Result<SpaceSpec> {
        self.used.push("space");
        let kind: SpaceKind =
            self.args.space.as_deref().ok_or_else(|| Error::BadParams("missing --space".into()))?.parse()?;
        Ok(SpaceSpec::new(kind, self.take("omega", self.args.omega)?, self.q()?))
    }

    fn finish(self) -> Result<()> {
        let given = [
            ("n", self.args.n.is_some()),
            ("k", self.args.k.is_some()),
            ("m", self.args.m.is_some()),
            ("q", self.args.q.is_some()),
            ("r", self.args.r.is_some()),
            ("space", self.args.space.is_some()),
            ("omega", self.args.omega.is_some()),
        ];
        match given.iter().find(|(name, set)| *set && !self.used.contains(name)) {
            Some((name, _)) => Err(Error::BadParams(format!("--{name} does not apply to this family"))),
            None => Ok(()),
        }
    }
}

fn normalise(name: &str) -> String {
    name.to_ascii_lowercase().chars().filter(|c| *c != '_' && *c != '-').collect()
}

pub fn family_from_params(name: &str, args: &FamilyArgs) -> Result<FamilySpec> {
    let mut p = Params { args, used: Vec::new() };
    let spec = match normalise(name).as_str() {
        "johnson" | "j" => FamilySpec::Johnson { n: p.n()?, k: p.k()? },
        "odd" | "o" => FamilySpec::Odd { k: p.k()? },
        "doubledodd" | "2o" => FamilySpec::DoubledOdd { k: p.k()? },
        "foldedjohnson" => FamilySpec::FoldedJohnson { k: p.k()? },
        "hamming" | "h" => FamilySpec::Hamming { k: p.k()?, m: p.m()? },
        "grassmann" | "g" => FamilySpec::Grassmann { n: p.n()?, k: p.k()?, q: p.q()? },
        "doubledgrassmann" | "2g" => FamilySpec::DoubledGrassmann { k: p.k()?, q: p.q()? },
        "incidencedesign" | "id" => FamilySpec::IncidenceDesign { n: p.n()?, q: p.q()? },
        "incidenceopposites" | "idop" => FamilySpec::IncidenceOpposites { n: p.n()?, q: p.q()? },
        "dualpolar" | "d" => FamilySpec::DualPolar { space: p.space()? },
        "halfdualpolar" => FamilySpec::HalfDualPolar { space: p.space()? },
        "polargrassmann" | "pg" => FamilySpec::PolarGrassmann { space: p.space()?, k: p.k()? },
        "bilinearforms" | "bf" => FamilySpec::BilinearForms { m: p.m()?, k: p.k()?, q: p.q()? },
        "alternatingforms" | "af" => FamilySpec::AlternatingForms { k: p.k()?, q: p.q()? },
        "hermitianforms" | "hf" => FamilySpec::HermitianForms { k: p.k()?, r: p.r()? },
        "symplecticquadrangleincidence" | "go" => FamilySpec::SymplecticQuadrangleIncidence { q: p.q()? },
        "cycle" | "c" => FamilySpec::Cycle { k: p.k()? },
        other => return Err(Error::BadParams(format!("unknown family '{other}'"))),
    };
    p.finish()?;
    Ok(spec)
}

impl FamilyArgs {
    pub fn resolve(&self) -> Result<Source> {
        let chosen = [self.family.is_some(), self.spec.is_some(), self.graph.is_some()].iter().filter(|&&b| b).count();
        if chosen != 1 {
            return Err(Error::BadParams("give exactly one of --family, --spec or --graph".into()));
        }
        if let Some(name) = &self.family {
            return family_from_params(name, self).map(Source::Family);
        }
        Params { args: self, used: Vec::new() }.finish()?;
        match (&self.spec, &self.graph) {
            (Some(s), _) => s.parse().map(Source::Family),
            (_, Some(path)) => Ok(Source::File(path.clone())),
            _ => unreachable!("exactly one source is set"),
        }
    }

    pub fn resolve_family(&self) -> Result<FamilySpec> {
        match self.resolve()? {
            Source::Family(spec) => Ok(spec),
            Source::File(_) => Err(Error::BadParams("this command needs a family, not a graph file".into())),
        }
    }
}

/// The formed space and `k` of a polar Grassmann graph.
#[derive(Args, Clone, Debug, Serialize)]
pub struct PgArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub omega: usize,
    #[arg(long)]
    pub q: u32,
    #[arg(long)]
    pub k: usize,
}

impl PgArgs {
    pub fn space_spec(&self) -> Result<SpaceSpec> {
        Ok(SpaceSpec::new(self.space.parse()?, self.omega, self.q))
    }
}
