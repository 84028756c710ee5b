//! Short text descriptors for hosts and patterns, as used on the command line.
//!
//! Hosts: `kn:N`, `knl:A,B`, `gnp:N,P,SEED`, `file:PATH`.
//! Patterns: `ks:S`, `kst:S,T`, `star:T`, `barbell:T`, `file:PATH[@W1]`.

use std::path::PathBuf;

use thiserror::Error;

use crate::graph::{generate_host, Graph, GraphError, HostKind};
use crate::pattern::{Pattern, PatternError, PatternKind};
use crate::seed::Seed;
use crate::solver::{HostDescriptor, PatternDescriptor};

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("cannot parse descriptor '{0}': {1}")]
    Syntax(String, String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

fn split(text: &str) -> Result<(&str, &str), DescriptorError> {
    text.split_once(':')
        .ok_or_else(|| DescriptorError::Syntax(text.into(), "expected KIND:ARGS".into()))
}

fn numbers<T: std::str::FromStr>(text: &str, args: &str, count: usize) -> Result<Vec<T>, DescriptorError> {
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    if parts.len() != count {
        return Err(DescriptorError::Syntax(text.into(), format!("expected {count} comma-separated values")));
    }
    parts
        .iter()
        .map(|p| {
            p.parse()
                .map_err(|_| DescriptorError::Syntax(text.into(), format!("bad number '{p}'")))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct HostSpec {
    pub kind: HostKind,
    /// Set for the closed-form families.
    pub descriptor: Option<HostDescriptor>,
}

pub fn parse_host(text: &str) -> Result<HostSpec, DescriptorError> {
    let (kind, args) = split(text)?;
    Ok(match kind {
        "kn" => {
            let n = numbers::<usize>(text, args, 1)?[0];
            HostSpec {
                kind: HostKind::Complete(n),
                descriptor: Some(HostDescriptor::Kn(n)),
            }
        }
        "knl" => {
            let v = numbers::<usize>(text, args, 2)?;
            HostSpec {
                kind: HostKind::CompleteBipartite(v[0], v[1]),
                descriptor: Some(HostDescriptor::Knl(v[0], v[1])),
            }
        }
        "gnp" => {
            let parts: Vec<&str> = args.split(',').collect();
            if parts.len() != 3 {
                return Err(DescriptorError::Syntax(text.into(), "expected gnp:N,P,SEED".into()));
            }
            let bad = |what: &str| DescriptorError::Syntax(text.into(), format!("bad {what}"));
            HostSpec {
                kind: HostKind::Gnp {
                    n: parts[0].trim().parse().map_err(|_| bad("n"))?,
                    p: parts[1].trim().parse().map_err(|_| bad("p"))?,
                    seed: Seed(parts[2].trim().parse().map_err(|_| bad("seed"))?),
                },
                descriptor: None,
            }
        }
        "file" => HostSpec {
            kind: HostKind::FromFile(PathBuf::from(args)),
            descriptor: None,
        },
        _ => return Err(DescriptorError::Syntax(text.into(), format!("unknown host kind '{kind}'"))),
    })
}

pub fn build_host(text: &str) -> Result<(Graph, Option<HostDescriptor>), DescriptorError> {
    let spec = parse_host(text)?;
    Ok((generate_host(&spec.kind)?, spec.descriptor))
}

#[derive(Clone, Debug)]
pub struct PatternSpec {
    pub kind: PatternKind,
    pub descriptor: Option<PatternDescriptor>,
}

pub fn parse_pattern(text: &str) -> Result<PatternSpec, DescriptorError> {
    let (kind, args) = split(text)?;
    Ok(match kind {
        "ks" => {
            let s = numbers::<usize>(text, args, 1)?[0];
            PatternSpec {
                kind: PatternKind::Clique(s),
                descriptor: Some(PatternDescriptor::Ks(s)),
            }
        }
        "kst" => {
            let v = numbers::<usize>(text, args, 2)?;
            PatternSpec {
                kind: PatternKind::Biclique(v[0], v[1]),
                descriptor: Some(PatternDescriptor::Kst(v[0], v[1])),
            }
        }
        "star" => {
            let t = numbers::<usize>(text, args, 1)?[0];
            PatternSpec {
                kind: PatternKind::Star(t),
                descriptor: Some(PatternDescriptor::Star(t)),
            }
        }
        "barbell" => {
            let t = numbers::<usize>(text, args, 1)?[0];
            PatternSpec {
                kind: PatternKind::Barbell(t),
                descriptor: Some(PatternDescriptor::Barbell(t)),
            }
        }
        "file" => {
            let (path, w1) = match args.rsplit_once('@') {
                Some((path, w)) => (
                    path,
                    Some(
                        w.parse()
                            .map_err(|_| DescriptorError::Syntax(text.into(), format!("bad w1 '{w}'")))?,
                    ),
                ),
                None => (args, None),
            };
            PatternSpec {
                kind: PatternKind::FromFile {
                    path: PathBuf::from(path),
                    w1,
                },
                descriptor: None,
            }
        }
        _ => return Err(DescriptorError::Syntax(text.into(), format!("unknown pattern kind '{kind}'"))),
    })
}

pub fn build_pattern(text: &str) -> Result<(Pattern, Option<PatternDescriptor>), DescriptorError> {
    let spec = parse_pattern(text)?;
    Ok((Pattern::from_kind(&spec.kind)?, spec.descriptor))
}
