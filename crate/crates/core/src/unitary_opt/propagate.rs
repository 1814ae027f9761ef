//! The propagate-cancel loop shared by the gate cancellation passes.

use std::borrow::Cow;
use std::fmt;

use crate::ir::GateApp;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleKind {
    Commutation,
    Cancellation,
}

/// The result of applying a rule to the gates following the propagated gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// The propagated gate was absorbed; the list continues as given.
    Cancelled(Vec<GateApp>),
    /// The propagated gate moved past the first `k` gates, which keep their order.
    Advance(usize),
    /// The propagated gate moved past `passed`; `rest` is what follows it.
    Rearranged { passed: Vec<GateApp>, rest: Vec<GateApp> },
}

type Matcher<'a> = Box<dyn Fn(&[GateApp]) -> Option<Outcome> + 'a>;

/// A partial rewrite on the gates following a propagated gate.
pub struct RewriteRule<'a> {
    pub name: &'static str,
    pub kind: RuleKind,
    /// Whether the rewrite is exact rather than up to global phase.
    pub phase_exact: bool,
    matcher: Matcher<'a>,
}

impl<'a> RewriteRule<'a> {
    pub fn new(
        name: &'static str,
        kind: RuleKind,
        matcher: impl Fn(&[GateApp]) -> Option<Outcome> + 'a,
    ) -> Self {
        RewriteRule { name, kind, phase_exact: true, matcher: Box::new(matcher) }
    }

    pub fn apply(&self, rest: &[GateApp]) -> Option<Outcome> {
        (self.matcher)(rest)
    }
}

impl fmt::Debug for RewriteRule<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RewriteRule").field("name", &self.name).field("kind", &self.kind).finish()
    }
}

/// Push the gate at `start` rightward until a cancellation rule absorbs it.
///
/// Each step tries the cancellation rules, then the commutation rules, in
/// order. Returns the rewritten list, or `None` if no cancellation is reached
/// within `max_steps` commutations, in which case the gate stays where it was.
pub fn propagate(
    gates: &[GateApp],
    start: usize,
    rules: &[RewriteRule],
    max_steps: usize,
) -> Option<Vec<GateApp>> {
    let tail = propagate_rest(&gates[start + 1..], rules, max_steps)?;
    let mut out = gates[..start].to_vec();
    out.extend(tail);
    Some(out)
}

/// Propagate an implicit gate through `rest`, returning what replaces `rest`
/// (gate included) on success.
pub(crate) fn propagate_rest(
    rest: &[GateApp],
    rules: &[RewriteRule],
    max_steps: usize,
) -> Option<Vec<GateApp>> {
    let (cancel, commute): (Vec<&RewriteRule>, Vec<&RewriteRule>) =
        rules.iter().partition(|r| r.kind == RuleKind::Cancellation);
    let mut passed: Vec<GateApp> = Vec::new();
    let mut cur: Cow<[GateApp]> = Cow::Borrowed(rest);
    let mut offset = 0;
    for _ in 0..=max_steps {
        let window = &cur[offset..];
        if let Some(Outcome::Cancelled(new_rest)) = cancel.iter().find_map(|r| r.apply(window)) {
            passed.extend(new_rest);
            return Some(passed);
        }
        match commute.iter().find_map(|r| r.apply(window))? {
            Outcome::Advance(k) => {
                passed.extend_from_slice(&window[..k]);
                offset += k;
            }
            Outcome::Rearranged { passed: p, rest } => {
                passed.extend(p);
                cur = Cow::Owned(rest);
                offset = 0;
            }
            Outcome::Cancelled(new_rest) => {
                passed.extend(new_rest);
                return Some(passed);
            }
        }
    }
    None
}
