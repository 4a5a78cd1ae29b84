use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered list of distinct variable names shared by a family of polynomials.
///
/// Conjugated symbols such as `mb1` or `etab1` are ordinary independent
/// variables here; nothing ties them to their unbarred partners.
#[derive(Clone, Eq)]
pub struct VariableArena {
    names: Arc<[String]>,
}

impl VariableArena {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        Ok(Self {
            names: names.into(),
        })
    }

    /// Arena `prefix1, ..., prefixN`.
    pub fn numbered(prefix: &str, count: usize) -> Self {
        Self::new((1..=count).map(|i| format!("{prefix}{i}"))).expect("numbered names are distinct")
    }

    /// Concatenation of two arenas; names must stay distinct.
    pub fn concat(&self, other: &VariableArena) -> Result<Self> {
        Self::new(self.names.iter().chain(other.names.iter()).cloned())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::VariableIndex {
                index,
                len: self.len(),
            })
        }
    }

    /// Same arena with the variables at `positions` renamed.
    pub fn rename(&self, positions: &[usize], new_names: &[String]) -> Result<Self> {
        if positions.len() != new_names.len() {
            return Err(Error::LengthMismatch {
                expected: positions.len(),
                got: new_names.len(),
            });
        }
        let mut names = self.names.to_vec();
        for (&p, name) in positions.iter().zip(new_names) {
            self.check_index(p)?;
            names[p] = name.clone();
        }
        Self::new(names)
    }

    pub(crate) fn ensure_same(&self, other: &VariableArena) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ArenaMismatch(format!("{self} vs {other}")))
        }
    }
}

impl PartialEq for VariableArena {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl fmt::Debug for VariableArena {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VariableArena{:?}", &*self.names)
    }
}

impl fmt::Display for VariableArena {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}
