//! Line-oriented text format for automata.
//!
//! ```text
//! # comment
//! automaton NAME
//! kind nfw|nbw|ncw|nww|tnbw|tncw|tnww
//! alphabet a b $
//! states 3
//! init 0
//! acc-states 2          (nfw and state-based kinds)
//! sink 1                (nfw only: a completion sink)
//! trans 0 a 1 [acc]     ([acc] only for transition-based kinds)
//! end
//! ```
//!
//! `automaton` comes first; `kind`, `alphabet` and `states` come before the
//! lines that refer to states or letters. Transitions may appear in any order.
//! [`AutFile::render`] emits the canonical form, which parses back to the same
//! automaton and renders to the same text.

use std::fmt;
use std::str::FromStr;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::nfw::{Nfw, StateId};
use crate::omega::{Acceptance, OmegaAutomaton};
use crate::structure::is_weak;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Nfw,
    Nbw,
    Ncw,
    Nww,
    Tnbw,
    Tncw,
    Tnww,
}

impl Kind {
    pub const ALL: [Kind; 7] = [Kind::Nfw, Kind::Nbw, Kind::Ncw, Kind::Nww, Kind::Tnbw, Kind::Tncw, Kind::Tnww];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Nfw => "nfw",
            Kind::Nbw => "nbw",
            Kind::Ncw => "ncw",
            Kind::Nww => "nww",
            Kind::Tnbw => "tnbw",
            Kind::Tncw => "tncw",
            Kind::Tnww => "tnww",
        }
    }

    /// The acceptance an ω-kind is stored with; weak kinds use Büchi.
    pub fn acceptance(self) -> Option<Acceptance> {
        match self {
            Kind::Nfw => None,
            Kind::Nbw | Kind::Nww => Some(Acceptance::BuchiState),
            Kind::Ncw => Some(Acceptance::CoBuchiState),
            Kind::Tnbw | Kind::Tnww => Some(Acceptance::BuchiTrans),
            Kind::Tncw => Some(Acceptance::CoBuchiTrans),
        }
    }

    pub fn is_weak(self) -> bool {
        matches!(self, Kind::Nww | Kind::Tnww)
    }

    fn state_marks(self) -> bool {
        self.acceptance().map_or(true, Acceptance::is_state_based)
    }

    /// The non-weak kind for an acceptance condition.
    pub fn of(acc: Acceptance) -> Kind {
        match acc {
            Acceptance::BuchiState => Kind::Nbw,
            Acceptance::BuchiTrans => Kind::Tnbw,
            Acceptance::CoBuchiState => Kind::Ncw,
            Acceptance::CoBuchiTrans => Kind::Tncw,
        }
    }

    /// The weak kind with the same placement.
    pub fn weak(acc: Acceptance) -> Kind {
        if acc.is_state_based() {
            Kind::Nww
        } else {
            Kind::Tnww
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Kind> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Finite(Nfw),
    Omega(OmegaAutomaton),
}

/// A named automaton as stored in a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutFile {
    pub name: String,
    pub kind: Kind,
    pub body: Body,
}

impl AutFile {
    /// Checks that `kind` fits `body` (and that weak kinds hold weak automata).
    pub fn new(name: impl Into<String>, kind: Kind, body: Body) -> Result<AutFile> {
        let name = name.into();
        if name.trim().is_empty() || name.trim() != name || name.contains('\n') {
            return Err(Error::Invalid(format!("bad automaton name {name:?}")));
        }
        match (&body, kind.acceptance()) {
            (Body::Finite(_), None) => {}
            (Body::Omega(a), Some(acc)) if a.kind() == acc => {
                if kind.is_weak() && !is_weak(a) {
                    return Err(Error::NotWeak { op: "kind nww/tnww" });
                }
            }
            _ => return Err(Error::Invalid(format!("kind {kind} does not match the automaton"))),
        }
        Ok(AutFile { name, kind, body })
    }

    pub fn finite(name: impl Into<String>, n: Nfw) -> AutFile {
        AutFile::new(name, Kind::Nfw, Body::Finite(n)).expect("nfw kind")
    }

    pub fn omega(name: impl Into<String>, a: OmegaAutomaton) -> AutFile {
        let kind = Kind::of(a.kind());
        AutFile::new(name, kind, Body::Omega(a)).expect("matching kind")
    }

    pub fn alphabet(&self) -> &Alphabet {
        match &self.body {
            Body::Finite(n) => n.alphabet(),
            Body::Omega(a) => a.alphabet(),
        }
    }

    pub fn nfw(&self) -> Result<&Nfw> {
        match &self.body {
            Body::Finite(n) => Ok(n),
            Body::Omega(_) => Err(Error::Invalid(format!("{} is an ω-automaton, expected nfw", self.name))),
        }
    }

    pub fn omega_automaton(&self) -> Result<&OmegaAutomaton> {
        match &self.body {
            Body::Omega(a) => Ok(a),
            Body::Finite(_) => Err(Error::Invalid(format!("{} is an nfw, expected an ω-automaton", self.name))),
        }
    }

    pub fn parse(text: &str) -> Result<AutFile> {
        Parser::default().run(text)
    }

    /// Canonical text, ending with a newline.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut line = |parts: &[&str]| {
            out.push_str(&parts.join(" "));
            out.push('\n');
        };
        let sigma = self.alphabet();
        let ids = |qs: &mut dyn Iterator<Item = StateId>| qs.map(|q| q.to_string()).collect::<Vec<_>>();
        line(&["automaton", &self.name]);
        line(&["kind", self.kind.name()]);
        let names: Vec<&str> = sigma.names().iter().map(String::as_str).collect();
        line(&[&["alphabet"], &names[..]].concat());
        match &self.body {
            Body::Finite(n) => {
                line(&["states", &n.states().to_string()]);
                let init = ids(&mut n.initial().iter().copied());
                line(&[vec!["init"], init.iter().map(String::as_str).collect()].concat());
                let acc = ids(&mut n.accepting_states());
                line(&[vec!["acc-states"], acc.iter().map(String::as_str).collect()].concat());
                if let Some(s) = n.completion_sink() {
                    line(&["sink", &s.to_string()]);
                }
                for (q, l, s) in n.transitions() {
                    line(&["trans", &q.to_string(), sigma.name(l), &s.to_string()]);
                }
            }
            Body::Omega(a) => {
                line(&["states", &a.states().to_string()]);
                let init = ids(&mut a.initial().iter().copied());
                line(&[vec!["init"], init.iter().map(String::as_str).collect()].concat());
                if a.kind().is_state_based() {
                    let acc = ids(&mut a.alpha_states());
                    line(&[vec!["acc-states"], acc.iter().map(String::as_str).collect()].concat());
                }
                for (q, l, s, alpha) in a.transitions() {
                    let (q, s) = (q.to_string(), s.to_string());
                    if alpha {
                        line(&["trans", &q, sigma.name(l), &s, "acc"]);
                    } else {
                        line(&["trans", &q, sigma.name(l), &s]);
                    }
                }
            }
        }
        line(&["end"]);
        out
    }
}

impl fmt::Display for AutFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for AutFile {
    type Err = Error;

    fn from_str(s: &str) -> Result<AutFile> {
        AutFile::parse(s)
    }
}

struct Trans {
    line: usize,
    from: StateId,
    letter: Letter,
    to: StateId,
    alpha: bool,
}

#[derive(Default)]
struct Parser {
    name: Option<String>,
    kind: Option<Kind>,
    alphabet: Option<Alphabet>,
    states: Option<usize>,
    init: Option<Vec<StateId>>,
    acc: Option<Vec<StateId>>,
    sink: Option<(usize, StateId)>,
    trans: Vec<Trans>,
    end: Option<usize>,
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

impl Parser {
    fn run(mut self, text: &str) -> Result<AutFile> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            if self.end.is_some() {
                return Err(err(line, "content after `end`"));
            }
            let (keyword, rest) = trimmed.split_once(char::is_whitespace).unwrap_or((trimmed, ""));
            self.line(line, keyword, rest.trim())?;
        }
        let end = self.end.ok_or_else(|| err(text.lines().count().max(1), "missing `end`"))?;
        self.finish(end)
    }

    fn line(&mut self, line: usize, keyword: &str, rest: &str) -> Result<()> {
        if self.name.is_none() && keyword != "automaton" {
            return Err(err(line, "file must start with `automaton NAME`"));
        }
        let args: Vec<&str> = rest.split_whitespace().collect();
        match keyword {
            "automaton" => {
                if self.name.is_some() {
                    return Err(err(line, "duplicate `automaton` line"));
                }
                if rest.is_empty() {
                    return Err(err(line, "`automaton` needs a name"));
                }
                self.name = Some(rest.to_string());
            }
            "kind" => {
                once(line, &self.kind, "kind")?;
                let [k] = args[..] else { return Err(err(line, "`kind` takes one argument")) };
                self.kind = Some(k.parse().map_err(|e: Error| err(line, e.to_string()))?);
            }
            "alphabet" => {
                once(line, &self.alphabet, "alphabet")?;
                self.alphabet = Some(Alphabet::new(args).map_err(|e| err(line, e.to_string()))?);
            }
            "states" => {
                once(line, &self.states, "states")?;
                let [k] = args[..] else { return Err(err(line, "`states` takes one argument")) };
                let k: usize = k.parse().map_err(|_| err(line, format!("bad state count {k:?}")))?;
                if k == 0 {
                    return Err(err(line, "an automaton needs at least one state"));
                }
                self.states = Some(k);
            }
            "init" => {
                once(line, &self.init, "init")?;
                self.init = Some(self.ids(line, &args)?);
            }
            "acc-states" => {
                once(line, &self.acc, "acc-states")?;
                if !self.header(line)?.state_marks() {
                    return Err(err(line, "`acc-states` in a transition-based automaton; use `[acc]`"));
                }
                self.acc = Some(self.ids(line, &args)?);
            }
            "sink" => {
                if self.sink.is_some() {
                    return Err(err(line, "duplicate `sink` line"));
                }
                if self.header(line)? != Kind::Nfw {
                    return Err(err(line, "`sink` is only meaningful for nfw"));
                }
                let ids = self.ids(line, &args)?;
                let [s] = ids[..] else { return Err(err(line, "`sink` takes one state")) };
                self.sink = Some((line, s));
            }
            "trans" => {
                let kind = self.header(line)?;
                let (from, letter, to, alpha) = match args[..] {
                    [f, l, t] => (f, l, t, false),
                    [f, l, t, "acc"] => (f, l, t, true),
                    _ => return Err(err(line, "expected `trans SRC LETTER DST [acc]`")),
                };
                if alpha && kind.state_marks() {
                    return Err(err(line, format!("`acc` on a transition of a {kind} automaton")));
                }
                let ids = self.ids(line, &[from, to])?;
                let sigma = self.alphabet.as_ref().expect("checked by header");
                let letter = sigma.index(letter).ok_or_else(|| err(line, format!("unknown letter {letter:?}")))?;
                self.trans.push(Trans { line, from: ids[0], letter, to: ids[1], alpha });
            }
            "end" => {
                if !args.is_empty() {
                    return Err(err(line, "`end` takes no arguments"));
                }
                self.header(line)?;
                self.end = Some(line);
            }
            other => return Err(err(line, format!("unknown keyword {other:?}"))),
        }
        Ok(())
    }

    /// The kind, once `kind`, `alphabet` and `states` have all been read.
    fn header(&self, line: usize) -> Result<Kind> {
        match (self.kind, &self.alphabet, self.states) {
            (Some(k), Some(_), Some(_)) => Ok(k),
            _ => Err(err(line, "`kind`, `alphabet` and `states` must come first")),
        }
    }

    fn ids(&self, line: usize, args: &[&str]) -> Result<Vec<StateId>> {
        self.header(line)?;
        let n = self.states.expect("checked by header");
        args.iter()
            .map(|a| match a.parse::<StateId>() {
                Ok(q) if q < n => Ok(q),
                Ok(q) => Err(err(line, format!("state {q} out of range (states = {n})"))),
                Err(_) => Err(err(line, format!("bad state id {a:?}"))),
            })
            .collect()
    }

    fn finish(self, end: usize) -> Result<AutFile> {
        let kind = self.kind.expect("checked at end");
        let sigma = self.alphabet.expect("checked at end");
        let states = self.states.expect("checked at end");
        let name = self.name.expect("checked at end");
        let init = self.init.unwrap_or_default();
        let acc = self.acc.unwrap_or_default();
        let at_end = |e: Error| match e {
            Error::Invalid(msg) => err(end, msg),
            e => e,
        };
        let body = match kind.acceptance() {
            None => {
                let mut b = Nfw::builder(sigma, states);
                init.iter().for_each(|&q| {
                    b.initial(q);
                });
                acc.iter().for_each(|&q| {
                    b.accepting(q);
                });
                for t in &self.trans {
                    b.edge(t.from, t.letter, t.to);
                }
                let mut n = b.build().map_err(at_end)?;
                if let Some((line, s)) = self.sink {
                    n = n.with_sink(s).map_err(|e| err(line, e.to_string()))?;
                }
                Body::Finite(n)
            }
            Some(acceptance) => {
                let mut b = OmegaAutomaton::builder(sigma, acceptance, states);
                init.iter().for_each(|&q| {
                    b.initial(q);
                });
                acc.iter().for_each(|&q| {
                    b.alpha_state(q);
                });
                for t in &self.trans {
                    if b.has_edge(t.from, t.letter, t.to) {
                        return Err(err(t.line, "duplicate transition"));
                    }
                    b.edge(t.from, t.letter, t.to, t.alpha);
                }
                Body::Omega(b.build().map_err(at_end)?)
            }
        };
        AutFile::new(name, kind, body).map_err(|e| err(end, e.to_string()))
    }
}

fn once<T>(line: usize, slot: &Option<T>, what: &str) -> Result<()> {
    if slot.is_some() {
        return Err(err(line, format!("duplicate `{what}` line")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "automaton one\nkind tnbw\nalphabet a\nstates 1\ninit 0\ntrans 0 a 0 acc\nend\n";

    #[test]
    fn minimal_round_trip() {
        let f = AutFile::parse(MINIMAL).unwrap();
        assert_eq!(f.kind, Kind::Tnbw);
        assert_eq!(f.render(), MINIMAL);
        assert_eq!(AutFile::parse(&f.render()).unwrap(), f);
    }

    #[test]
    fn comments_blank_lines_and_order() {
        let text = "# header\n\nautomaton  x \n  # indented comment\nstates 2\nalphabet # $\nkind nfw\n\
                    trans 1 # 1\ntrans 0 $ 1\ninit 0\ntrans 1 $ 1\nacc-states 1\ntrans 0 # 0\nend\n";
        let f = AutFile::parse(text).unwrap();
        let n = f.nfw().unwrap();
        assert_eq!(f.name, "x");
        assert!(n.accepts(&[1]) && !n.accepts(&[0]));
        let canon = f.render();
        assert!(canon.starts_with("automaton x\nkind nfw\nalphabet # $\nstates 2\ninit 0\nacc-states 1\n"));
        assert_eq!(AutFile::parse(&canon).unwrap().render(), canon);
    }

    #[test]
    fn missing_transition_names_state_and_letter() {
        let text = "automaton p\nkind nbw\nalphabet a b\nstates 1\ninit 0\nacc-states\ntrans 0 a 0\nend\n";
        let e = AutFile::parse(text).unwrap_err().to_string();
        assert!(e.contains("line 8") && e.contains("state 0") && e.contains("letter b"), "{e}");
    }

    #[test]
    fn line_numbered_errors() {
        let cases = [
            ("kind nfw\n", 1, "automaton"),
            ("automaton a\nkind xyz\n", 2, "unknown kind"),
            ("automaton a\nkind nfw\nalphabet a\nstates 1\ntrans 0 b 0\n", 5, "unknown letter"),
            ("automaton a\nkind nfw\nalphabet a\nstates 1\ninit 3\n", 5, "out of range"),
            ("automaton a\nkind tnbw\nalphabet a\nstates 1\nacc-states 0\n", 5, "transition-based"),
            ("automaton a\nkind nbw\nalphabet a\nstates 1\ntrans 0 a 0 acc\n", 5, "acc"),
            ("automaton a\ninit 0\n", 2, "must come first"),
            ("automaton a\nkind nfw\nalphabet a\nstates 1\ninit 0\ntrans 0 a 0\nend\nend\n", 8, "after"),
            ("automaton a\nkind nfw\nalphabet a a\n", 3, "duplicate letter"),
        ];
        for (text, line, needle) in cases {
            match AutFile::parse(text) {
                Err(Error::Parse { line: l, msg }) => {
                    assert_eq!(l, line, "{text:?}: {msg}");
                    assert!(msg.contains(needle), "{text:?}: {msg}");
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(AutFile::parse("automaton a\n").unwrap_err().to_string().contains("missing `end`"));
    }

    #[test]
    fn weak_kind_is_checked() {
        let text = "automaton w\nkind nww\nalphabet a b\nstates 1\ninit 0\nacc-states 0\n\
                    trans 0 a 0\ntrans 0 b 0\nend\n";
        assert!(AutFile::parse(text).is_ok());
        let text = "automaton w\nkind tnww\nalphabet a\nstates 1\ninit 0\ntrans 0 a 0 acc\ntrans 0 a 0\nend\n";
        assert!(AutFile::parse(text).unwrap_err().to_string().contains("duplicate"));
    }

    #[test]
    fn sink_marker_round_trips() {
        let mut b = Nfw::builder(Alphabet::new(["a"]).unwrap(), 2);
        b.initial(0).accepting(1).edge(0, 0, 1);
        let f = AutFile::finite("s", b.complete().unwrap());
        let text = f.render();
        assert!(text.contains("\nsink 2\n"));
        assert_eq!(AutFile::parse(&text).unwrap(), f);
    }
}
