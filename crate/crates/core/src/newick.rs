//! Newick reader. Branch lengths are exact rationals and mandatory on every
//! non-root node; internal labels are allowed. The parse root is an ordinary
//! vertex of the resulting unrooted tree.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational};
use crate::tree::{Edge, XTree};

struct RawNode {
    label: Option<(usize, String)>,
    parent: Option<(usize, Rational)>,
    position: usize,
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    nodes: Vec<RawNode>,
}

impl<'a> Parser<'a> {
    fn error<T>(&self, position: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Newick {
            position,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn skip_blank(&mut self) -> Result<()> {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => self.pos += c.len_utf8(),
                Some('[') => {
                    let start = self.pos;
                    match self.text[self.pos..].find(']') {
                        Some(end) => self.pos += end + 1,
                        None => return self.error(start, "unterminated comment"),
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_blank()?;
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => self.error(self.pos, format!("expected {c:?}, found {found:?}")),
            None => self.error(self.pos, format!("expected {c:?}, found end of input")),
        }
    }

    fn node(&mut self, parent: Option<usize>) -> Result<usize> {
        self.skip_blank()?;
        let id = self.nodes.len();
        self.nodes.push(RawNode {
            label: None,
            parent: None,
            position: self.pos,
        });
        if self.peek() == Some('(') {
            self.pos += 1;
            loop {
                self.node(Some(id))?;
                self.skip_blank()?;
                match self.peek() {
                    Some(',') => self.pos += 1,
                    Some(')') => {
                        self.pos += 1;
                        break;
                    }
                    Some(c) => return self.error(self.pos, format!("expected ',' or ')', found {c:?}")),
                    None => return self.error(self.pos, "unbalanced parenthesis at end of input"),
                }
            }
        }
        self.skip_blank()?;
        let at = self.pos;
        self.nodes[id].label = self.label()?.map(|l| (at, l));
        self.skip_blank()?;
        let length = if self.peek() == Some(':') {
            self.pos += 1;
            self.skip_blank()?;
            Some(self.length()?)
        } else {
            None
        };
        if let Some(p) = parent {
            let Some((at, weight)) = length else {
                return self.error(self.pos, "missing branch length");
            };
            if !weight.is_positive() {
                return self.error(at, "branch lengths must be positive");
            }
            self.nodes[id].parent = Some((p, weight));
        }
        Ok(id)
    }

    fn label(&mut self) -> Result<Option<String>> {
        if self.peek() == Some('\'') {
            let start = self.pos;
            self.pos += 1;
            let mut out = String::new();
            loop {
                match self.peek() {
                    None => return self.error(start, "unterminated quoted label"),
                    Some('\'') => {
                        self.pos += 1;
                        if self.peek() == Some('\'') {
                            out.push('\'');
                            self.pos += 1;
                        } else {
                            return Ok(Some(out));
                        }
                    }
                    Some(c) => {
                        out.push(c);
                        self.pos += c.len_utf8();
                    }
                }
            }
        }
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| c.is_whitespace() || "()[]':;,".contains(c))
            .unwrap_or(rest.len());
        self.pos += len;
        Ok((len > 0).then(|| rest[..len].to_string()))
    }

    fn length(&mut self) -> Result<(usize, Rational)> {
        let start = self.pos;
        let rest = &self.text[self.pos..];
        let len = rest
            .find(|c: char| c.is_whitespace() || "()[],;".contains(c))
            .unwrap_or(rest.len());
        if len == 0 {
            return self.error(start, "missing branch length");
        }
        self.pos += len;
        match parse_rational(&rest[..len]) {
            Ok(v) => Ok((start, v)),
            Err(e) => self.error(start, e.to_string()),
        }
    }
}

/// Parses a single Newick tree. Unlabelled vertices of degree two (such as the
/// root of a rooted binary tree) are suppressed by merging their two edges;
/// unlabelled leaves are an error.
pub fn parse_newick(text: &str) -> Result<XTree> {
    let mut parser = Parser {
        text,
        pos: 0,
        nodes: Vec::new(),
    };
    parser.node(None)?;
    parser.expect(';')?;
    parser.skip_blank()?;
    if parser.pos != text.len() {
        return parser.error(parser.pos, "trailing content after ';'");
    }
    let nodes = parser.nodes;

    let mut adj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nodes.len()];
    for (id, node) in nodes.iter().enumerate() {
        if let Some((p, w)) = &node.parent {
            adj[id].push((*p, w.clone()));
            adj[*p].push((id, w.clone()));
        }
    }
    for (id, node) in nodes.iter().enumerate() {
        if node.label.is_none() && adj[id].len() <= 1 {
            return Err(Error::Newick {
                position: node.position,
                message: format!("unlabelled vertex of degree {}", adj[id].len()),
            });
        }
    }
    let mut alive = vec![true; nodes.len()];
    for (id, node) in nodes.iter().enumerate() {
        if node.label.is_none() && adj[id].len() == 2 {
            let (a, wa) = adj[id][0].clone();
            let (b, wb) = adj[id][1].clone();
            let w = wa + wb;
            adj[a].retain(|(u, _)| *u != id);
            adj[b].retain(|(u, _)| *u != id);
            adj[a].push((b, w.clone()));
            adj[b].push((a, w));
            adj[id].clear();
            alive[id] = false;
        }
    }
    let mut index = vec![usize::MAX; nodes.len()];
    let mut count = 0;
    for id in 0..nodes.len() {
        if alive[id] {
            index[id] = count;
            count += 1;
        }
    }
    let mut edges = Vec::new();
    for (a, nbrs) in adj.iter().enumerate() {
        for (b, w) in nbrs {
            if a < *b {
                edges.push(Edge {
                    a: index[a],
                    b: index[*b],
                    weight: w.clone(),
                });
            }
        }
    }
    let mut named: Vec<(usize, String, usize)> = nodes
        .iter()
        .enumerate()
        .filter_map(|(id, n)| n.label.clone().map(|(at, l)| (at, l, index[id])))
        .collect();
    named.sort_by_key(|(at, _, _)| *at);
    let (labels, placement) = named.into_iter().map(|(_, l, v)| (l, v)).unzip();
    XTree::new(labels, placement, count, edges)
}
