use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Which alphabet a variable belongs to. The declaration order of the
/// variants is the global variable order: powers, then generic
/// transcendentals, then series variables, then internal unknowns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKind {
    Power,
    Generic,
    Series,
    /// Unknowns introduced by the library itself (relation variables,
    /// exponential-polynomial slots).
    Auxiliary,
}

impl VarKind {
    pub fn label(self) -> &'static str {
        match self {
            VarKind::Power => "power",
            VarKind::Generic => "generic",
            VarKind::Series => "series",
            VarKind::Auxiliary => "auxiliary",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var {
    kind: VarKind,
    name: Arc<str>,
}

impl Var {
    pub fn new(kind: VarKind, name: &str) -> Self {
        Var {
            kind,
            name: Arc::from(name),
        }
    }

    pub fn power(name: &str) -> Self {
        Self::new(VarKind::Power, name)
    }

    pub fn generic(name: &str) -> Self {
        Self::new(VarKind::Generic, name)
    }

    pub fn series(name: &str) -> Self {
        Self::new(VarKind::Series, name)
    }

    pub fn aux(name: &str) -> Self {
        Self::new(VarKind::Auxiliary, name)
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind
            .cmp(&other.kind)
            .then_with(|| self.name.cmp(&other.name))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.name, self.kind.label())
    }
}
