use crate::value::Value;

/// A multiset of signed values sharing one power-of-ten scale.
///
/// The real number represented by `values[i]` is `values[i] / 10^scale_exp`.
/// Duplicates, zeros and negatives are all allowed; so is the empty instance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Instance {
    pub values: Vec<Value>,
    pub id: Option<String>,
    pub scale_exp: u32,
}

impl Instance {
    pub fn new(values: Vec<Value>) -> Self {
        Instance {
            values,
            id: None,
            scale_exp: 0,
        }
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Instance::new(values.iter().map(|&v| Value::from(v)).collect())
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    pub fn with_scale_exp(mut self, scale_exp: u32) -> Self {
        self.scale_exp = scale_exp;
        self
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> Value {
        self.values.iter().sum()
    }

    /// Every value multiplied by `factor`; the scale is kept.
    pub fn scaled(&self, factor: &Value) -> Instance {
        Instance {
            values: self.values.iter().map(|v| v * factor).collect(),
            id: self.id.clone(),
            scale_exp: self.scale_exp,
        }
    }

    pub fn negated(&self) -> Instance {
        Instance {
            values: self.values.iter().map(|v| -v).collect(),
            id: self.id.clone(),
            scale_exp: self.scale_exp,
        }
    }

    /// Renders a mantissa-valued quantity in this instance's decimal scale.
    pub fn render(&self, v: &Value) -> String {
        v.to_decimal_string(self.scale_exp)
    }
}
