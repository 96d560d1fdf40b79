//! JSON encodings. Big integers travel as decimal strings; blocks as sorted
//! point lists.

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::PrimeP;
use crate::blocks::{Block, BlockVector, GroundSet};
use crate::constructions::{Family, Witness};
use crate::designs::DesignParams;
use crate::error::{Error, Result};
use crate::specht::{Composition, HemmerReport, MapReport, Tabloid, TabloidVector};

fn parse_int(s: &str) -> Result<BigInt> {
    s.parse().map_err(|_| Error::InvalidInput(format!("not a decimal integer: {s:?}")))
}

fn block_from_points(points: &[usize]) -> Result<Block> {
    if points.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(format!("block {points:?} is not strictly increasing")));
    }
    Block::from_points(points.iter().copied())
}

type BlockEntry = (Vec<usize>, String);

#[derive(Serialize, Deserialize)]
struct BlockVectorWire {
    v: usize,
    entries: Vec<BlockEntry>,
}

fn block_entries(c: &BlockVector) -> Vec<BlockEntry> {
    c.iter().map(|(x, k)| (x.to_vec(), k.to_string())).collect()
}

fn parse_block_entries(ground: GroundSet, entries: &[BlockEntry]) -> Result<BlockVector> {
    let terms = entries
        .iter()
        .map(|(pts, k)| Ok((block_from_points(pts)?, parse_int(k)?)))
        .collect::<Result<Vec<_>>>()?;
    BlockVector::from_terms(ground, terms)
}

impl Serialize for BlockVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BlockVectorWire { v: self.ground().size(), entries: block_entries(self) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BlockVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = BlockVectorWire::deserialize(d)?;
        let ground = GroundSet::new(wire.v).map_err(serde::de::Error::custom)?;
        parse_block_entries(ground, &wire.entries).map_err(serde::de::Error::custom)
    }
}

/// A design together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignRecord {
    pub params: DesignParams,
    pub design: BlockVector,
}

#[derive(Serialize, Deserialize)]
struct DesignWire {
    v: usize,
    l: usize,
    t: usize,
    lambdas: Vec<String>,
    blocks: Vec<BlockEntry>,
}

impl Serialize for DesignRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DesignWire {
            v: self.params.v(),
            l: self.params.l(),
            t: self.params.t(),
            lambdas: self.params.lambdas().iter().map(ToString::to_string).collect(),
            blocks: block_entries(&self.design),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DesignRecord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = DesignWire::deserialize(d)?;
        let build = || -> Result<DesignRecord> {
            let lambdas = wire.lambdas.iter().map(|s| parse_int(s)).collect::<Result<Vec<_>>>()?;
            let params = DesignParams::new(wire.v, wire.l, wire.t, lambdas)?;
            let design = parse_block_entries(params.ground(), &wire.blocks)?;
            Ok(DesignRecord { params, design })
        };
        build().map_err(serde::de::Error::custom)
    }
}

type TabloidEntry = (Vec<Vec<usize>>, String);

#[derive(Serialize, Deserialize)]
struct TabloidVectorWire {
    parts: Vec<usize>,
    entries: Vec<TabloidEntry>,
}

impl Serialize for TabloidVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self
            .iter()
            .map(|(t, c)| (t.lower_rows().iter().map(|r| r.to_vec()).collect(), c.to_string()))
            .collect();
        TabloidVectorWire { parts: self.shape().parts().to_vec(), entries }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TabloidVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = TabloidVectorWire::deserialize(d)?;
        let build = || -> Result<TabloidVector> {
            let shape = Composition::new(wire.parts.clone())?;
            let terms = wire
                .entries
                .iter()
                .map(|(rows, c)| {
                    let rows = rows.iter().map(|r| block_from_points(r)).collect::<Result<Vec<_>>>()?;
                    Ok((Tabloid::new(rows), parse_int(c)?))
                })
                .collect::<Result<Vec<_>>>()?;
            TabloidVector::from_terms(shape, terms)
        };
        build().map_err(serde::de::Error::custom)
    }
}

const NOT_A_MULTIPLE: &str = "not a multiple";

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarWire {
    Residue(u64),
    Missing(String),
}

#[derive(Serialize, Deserialize)]
struct MapWire {
    i: usize,
    v: usize,
    is_multiple_of_f: bool,
    scalar: ScalarWire,
    integer_scalar: Option<String>,
    mu: u64,
}

#[derive(Serialize, Deserialize)]
struct ReportWire {
    lambda: Vec<usize>,
    p: PrimeP,
    maps: Vec<MapWire>,
    condition_i: bool,
    condition_ii: bool,
    verdict: bool,
}

impl Serialize for HemmerReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let maps = self
            .maps
            .iter()
            .map(|m| MapWire {
                i: m.i,
                v: m.v,
                is_multiple_of_f: m.is_multiple_of_f(),
                scalar: match m.scalar {
                    Some(k) => ScalarWire::Residue(k),
                    None => ScalarWire::Missing(NOT_A_MULTIPLE.into()),
                },
                integer_scalar: m.integer_scalar.as_ref().map(ToString::to_string),
                mu: m.mu,
            })
            .collect();
        ReportWire {
            lambda: self.shape.parts().to_vec(),
            p: self.p,
            maps,
            condition_i: self.condition_i,
            condition_ii: self.condition_ii,
            verdict: self.verdict,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HemmerReport {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = ReportWire::deserialize(d)?;
        let build = || -> Result<HemmerReport> {
            let maps = wire
                .maps
                .iter()
                .map(|m| {
                    let scalar = match &m.scalar {
                        ScalarWire::Residue(k) => Some(*k),
                        ScalarWire::Missing(s) if s == NOT_A_MULTIPLE => None,
                        ScalarWire::Missing(s) => return Err(Error::InvalidInput(format!("bad scalar {s:?}"))),
                    };
                    if scalar.is_some() != m.is_multiple_of_f {
                        return Err(Error::InvalidInput("is_multiple_of_f disagrees with scalar".into()));
                    }
                    Ok(MapReport {
                        i: m.i,
                        v: m.v,
                        scalar,
                        integer_scalar: m.integer_scalar.as_deref().map(parse_int).transpose()?,
                        mu: m.mu,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if wire.verdict != (wire.condition_i && wire.condition_ii) {
                return Err(Error::InvalidInput("verdict must equal condition_i and condition_ii".into()));
            }
            Ok(HemmerReport {
                shape: Composition::new(wire.lambda.clone())?,
                p: wire.p,
                maps,
                condition_i: wire.condition_i,
                condition_ii: wire.condition_ii,
                verdict: wire.verdict,
            })
        };
        build().map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessWire {
    lambda: Vec<usize>,
    p: PrimeP,
    family: String,
    u: TabloidVector,
    scalars: Vec<Option<String>>,
    report: HemmerReport,
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WitnessWire {
            lambda: self.u.shape().parts().to_vec(),
            p: self.p,
            family: self.family.as_str().into(),
            u: self.u.clone(),
            scalars: self.scalars.iter().map(|k| k.as_ref().map(ToString::to_string)).collect(),
            report: self.report.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Witness {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = WitnessWire::deserialize(d)?;
        let build = || -> Result<Witness> {
            if wire.lambda != wire.u.shape().parts() {
                return Err(Error::InvalidInput("lambda does not match the shape of u".into()));
            }
            let scalars = wire.scalars.iter().map(|k| k.as_deref().map(parse_int).transpose()).collect::<Result<_>>()?;
            Ok(Witness {
                family: wire.family.parse::<Family>()?,
                p: wire.p,
                u: wire.u,
                scalars,
                report: wire.report,
            })
        };
        build().map_err(serde::de::Error::custom)
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(s: &str) -> Result<T> {
    Ok(serde_json::from_str(s)?)
}
