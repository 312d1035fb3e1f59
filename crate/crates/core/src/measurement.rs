use serde::{Deserialize, Serialize};

/// A finite set of effects together with outcome labels. The effects are
/// expected to sum to the unit effect of their system; validity is checked
/// by the owning theory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Measurement<E> {
    pub effects: Vec<E>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub labels: Vec<String>,
}

impl<E> Measurement<E> {
    /// Outcomes labelled `0, 1, ...`.
    pub fn new(effects: Vec<E>) -> Self {
        let labels = (0..effects.len()).map(|i| i.to_string()).collect();
        Self { effects, labels }
    }

    pub fn with_labels(effects: Vec<E>, labels: Vec<String>) -> Self {
        Self { effects, labels }
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn label(&self, i: usize) -> String {
        self.labels.get(i).cloned().unwrap_or_else(|| i.to_string())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, E> {
        self.effects.iter()
    }
}
