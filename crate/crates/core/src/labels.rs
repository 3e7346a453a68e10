//! The closed vocabulary of annotation labels.
//!
//! Every label attached to a node must come from this registry. The
//! registry is assembled from the command schemas and wrapper table, so a
//! schema that declares a label automatically makes it legal.

use std::collections::HashSet;
use std::fmt;
use std::sync::LazyLock;

use crate::enrich::schema;
use crate::error::{Error, Result};

static REGISTRY: LazyLock<HashSet<&'static str>> = LazyLock::new(|| {
    let mut set = HashSet::new();
    for s in schema::SCHEMAS {
        set.insert(s.label);
        collect_flags(&mut set, s.flags);
        set.extend(s.positional);
        for sub in s.subcommands {
            collect_sub(&mut set, sub);
        }
    }
    for w in schema::WRAPPERS {
        set.insert(w.label);
    }
    set
});

fn collect_sub(set: &mut HashSet<&'static str>, sub: &'static schema::SubSpec) {
    set.insert(sub.label);
    set.extend(sub.positional);
    collect_flags(set, sub.flags);
    for s in sub.subcommands {
        collect_sub(set, s);
    }
}

fn collect_flags(set: &mut HashSet<&'static str>, flags: &'static [schema::FlagSpec]) {
    for f in flags {
        set.insert(f.label);
        set.extend(f.value_label);
    }
}

/// An annotation label such as `SC-APT-GET-INSTALL`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(&'static str);

impl Label {
    /// Looks `name` up in the registry.
    pub fn new(name: &str) -> Result<Label> {
        REGISTRY
            .get(name)
            .map(|&s| Label(s))
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    /// Like [`Label::new`] for labels that are known at compile time.
    ///
    /// Panics if the label is not registered.
    pub fn of(name: &'static str) -> Label {
        Label::new(name).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn as_str(self) -> &'static str {
        self.0
    }

    pub fn is_registered(name: &str) -> bool {
        REGISTRY.contains(name)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}
