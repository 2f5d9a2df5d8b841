//! Text formats: DIMACS-like graphs (`p edge n m` / `e u v`, 1-indexed),
//! family files (`g <name>` blocks of graphs) and DIMACS CNF.

use crate::error::{Error, Result};
use crate::graph::Graph;

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.ok_or_else(|| perr(line, format!("missing {what}")))?
        .parse()
        .map_err(|_| perr(line, format!("bad {what}")))
}

struct GraphBuilder {
    n: usize,
    m: usize,
    edges: Vec<(usize, usize)>,
    header_line: usize,
}

impl GraphBuilder {
    fn header(fields: &[&str], line: usize) -> Result<Self> {
        if fields.len() != 4 || fields[1] != "edge" {
            return Err(perr(line, "expected `p edge <n> <m>`"));
        }
        Ok(GraphBuilder {
            n: parse_num(fields.get(2).copied(), line, "vertex count")?,
            m: parse_num(fields.get(3).copied(), line, "edge count")?,
            edges: Vec::new(),
            header_line: line,
        })
    }

    fn edge(&mut self, fields: &[&str], line: usize) -> Result<()> {
        if fields.len() != 3 {
            return Err(perr(line, "expected `e <u> <v>`"));
        }
        let u = parse_num(fields.get(1).copied(), line, "endpoint")?;
        let v = parse_num(fields.get(2).copied(), line, "endpoint")?;
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return Err(perr(line, format!("endpoint out of range 1..={}", self.n)));
        }
        if u == v {
            return Err(perr(line, "self-loop"));
        }
        self.edges.push((u - 1, v - 1));
        Ok(())
    }

    fn finish(self) -> Result<Graph> {
        if self.edges.len() != self.m {
            return Err(perr(
                self.header_line,
                format!(
                    "header announces {} edges, found {}",
                    self.m,
                    self.edges.len()
                ),
            ));
        }
        let g = Graph::from_edges(self.n, self.edges)?;
        if g.m() != self.m {
            return Err(perr(self.header_line, "parallel edges are not allowed"));
        }
        Ok(g)
    }
}

/// Parses a single graph.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut builder: Option<GraphBuilder> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if builder.is_some() {
                    return Err(perr(line, "duplicate header"));
                }
                builder = Some(GraphBuilder::header(&fields, line)?);
            }
            Some("e") => match builder.as_mut() {
                Some(b) => b.edge(&fields, line)?,
                None => return Err(perr(line, "edge before header")),
            },
            Some(other) => return Err(perr(line, format!("unexpected token `{other}`"))),
        }
    }
    builder
        .ok_or_else(|| perr(0, "missing `p edge` header"))?
        .finish()
}

/// Serialises a graph: header, then edges `u < v` in lexicographic order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Parses a family file: one or more `g <name>` blocks, each a graph.
pub fn parse_family(text: &str) -> Result<Vec<(String, Graph)>> {
    let mut out = Vec::new();
    let mut current: Option<(String, Option<GraphBuilder>, usize)> = None;
    let flush = |cur: Option<(String, Option<GraphBuilder>, usize)>,
                 out: &mut Vec<(String, Graph)>|
     -> Result<()> {
        if let Some((name, b, line)) = cur {
            let b = b.ok_or_else(|| perr(line, format!("graph `{name}` has no header")))?;
            out.push((name, b.finish()?));
        }
        Ok(())
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.first().copied() {
            None | Some("c") => {}
            Some("g") => {
                flush(current.take(), &mut out)?;
                let name = fields[1..].join(" ");
                let name = if name.is_empty() {
                    format!("F{}", out.len() + 1)
                } else {
                    name
                };
                current = Some((name, None, line));
            }
            Some("p") => match current.as_mut() {
                Some((_, b @ None, _)) => *b = Some(GraphBuilder::header(&fields, line)?),
                Some(_) => return Err(perr(line, "duplicate header")),
                None => return Err(perr(line, "header before `g <name>`")),
            },
            Some("e") => match current.as_mut() {
                Some((_, Some(b), _)) => b.edge(&fields, line)?,
                _ => return Err(perr(line, "edge before header")),
            },
            Some(other) => return Err(perr(line, format!("unexpected token `{other}`"))),
        }
    }
    flush(current, &mut out)?;
    if out.is_empty() {
        return Err(Error::EmptyFamily);
    }
    Ok(out)
}

pub fn write_family(members: &[(String, Graph)]) -> String {
    let mut out = String::new();
    for (name, g) in members {
        out.push_str(&format!("g {name}\n"));
        out.push_str(&write_graph(g));
    }
    out
}

/// A literal: variable index (1-based) with polarity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }
}

/// A CNF formula over variables `1..=vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfFormula {
    pub vars: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    /// Validates: at least one clause, no empty clause, no repeated literal
    /// inside a clause, variables within range.
    pub fn new(vars: usize, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::Precondition("formula has no clauses".into()));
        }
        for (j, c) in clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Precondition(format!("clause {} is empty", j + 1)));
            }
            for (i, l) in c.iter().enumerate() {
                if l.var == 0 || l.var > vars {
                    return Err(Error::Precondition(format!(
                        "variable {} outside 1..={vars}",
                        l.var
                    )));
                }
                if c[..i].contains(l) {
                    return Err(Error::Precondition(format!(
                        "clause {} repeats literal {}",
                        j + 1,
                        l.to_dimacs()
                    )));
                }
            }
        }
        Ok(CnfFormula { vars, clauses })
    }

    /// Total number of literal occurrences.
    pub fn occurrences(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    pub fn evaluate(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| assignment[l.var - 1] == l.positive))
    }

    /// Exhaustive satisfiability check; returns a satisfying assignment.
    pub fn brute_force_sat(&self) -> Option<Vec<bool>> {
        assert!(self.vars < 32, "brute-force SAT is for tiny formulas");
        (0u32..1 << self.vars).find_map(|bits| {
            let a: Vec<bool> = (0..self.vars).map(|i| bits >> i & 1 == 1).collect();
            self.evaluate(&a).then_some(a)
        })
    }
}

pub fn parse_cnf(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') || trimmed.starts_with('%') {
            continue;
        }
        if trimmed.starts_with('p') {
            let f: Vec<&str> = trimmed.split_whitespace().collect();
            if f.len() != 4 || f[1] != "cnf" || header.is_some() {
                return Err(perr(line, "expected a single `p cnf <vars> <clauses>`"));
            }
            header = Some((
                parse_num(Some(f[2]), line, "variable count")?,
                parse_num(Some(f[3]), line, "clause count")?,
                line,
            ));
            continue;
        }
        let Some((vars, _, _)) = header else {
            return Err(perr(line, "clause before header"));
        };
        for tok in trimmed.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| perr(line, format!("bad literal `{tok}`")))?;
            if x == 0 {
                if current.is_empty() {
                    return Err(perr(line, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else {
                let var = x.unsigned_abs() as usize;
                if var > vars {
                    return Err(perr(line, format!("variable {var} exceeds {vars}")));
                }
                current.push(Literal {
                    var,
                    positive: x > 0,
                });
            }
        }
    }
    let (vars, count, hline) = header.ok_or_else(|| perr(0, "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(perr(0, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(perr(
            hline,
            format!("header announces {count} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(vars, clauses).map_err(|e| perr(hline, e.to_string()))
}

pub fn write_cnf(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.vars, f.clauses.len());
    for c in &f.clauses {
        for l in c {
            out.push_str(&format!("{} ", l.to_dimacs()));
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_text_is_canonical() {
        let text = "c a triangle\np edge 3 3\ne 2 1\ne 3 2\ne 1 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(write_graph(&g), "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
    }

    #[test]
    fn graph_parse_errors() {
        assert!(parse_graph("p edge 2 1\ne 1 1\n").is_err());
        assert!(parse_graph("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_graph("p edge 2 2\ne 1 2\ne 2 1\n").is_err());
        assert!(parse_graph("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_graph("e 1 2\n").is_err());
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn family_blocks() {
        let text =
            "g two-edges\np edge 4 2\ne 1 2\ne 3 4\ng triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n";
        let fam = parse_family(text).unwrap();
        assert_eq!(fam.len(), 2);
        assert_eq!(fam[0].0, "two-edges");
        assert_eq!(fam[1].1, Graph::complete(3));
        assert_eq!(parse_family(&write_family(&fam)).unwrap(), fam);
        assert!(parse_family("c nothing\n").is_err());
    }

    #[test]
    fn cnf_roundtrip_and_validation() {
        let f = parse_cnf("c demo\np cnf 2 2\n1 -2 0\n-1 0\n").unwrap();
        assert_eq!(f.clauses[0], vec![Literal::pos(1), Literal::neg(2)]);
        assert_eq!(f.occurrences(), 3);
        assert_eq!(parse_cnf(&write_cnf(&f)).unwrap(), f);
        assert!(parse_cnf("p cnf 1 1\n1 1 0\n").is_err());
        assert!(parse_cnf("p cnf 1 1\n0\n").is_err());
        assert!(parse_cnf("p cnf 1 1\n2 0\n").is_err());
        // x and not-x together are allowed
        assert!(parse_cnf("p cnf 1 1\n1 -1 0\n").is_ok());
    }

    #[test]
    fn brute_sat() {
        let sat = CnfFormula::new(1, vec![vec![Literal::pos(1)]]).unwrap();
        assert_eq!(sat.brute_force_sat(), Some(vec![true]));
        let unsat = CnfFormula::new(1, vec![vec![Literal::pos(1)], vec![Literal::neg(1)]]).unwrap();
        assert!(unsat.brute_force_sat().is_none());
    }
}
