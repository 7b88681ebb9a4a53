use super::Representation;
use crate::linalg::{FieldTag, PrimeField, Rationals};

/// A representation over a field chosen at run time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyRepresentation {
    Rational(Representation<Rationals>),
    Prime(Representation<PrimeField>),
}

impl AnyRepresentation {
    pub fn field_tag(&self) -> FieldTag {
        match self {
            AnyRepresentation::Rational(_) => FieldTag::Rational,
            AnyRepresentation::Prime(r) => FieldTag::Prime(r.field().modulus()),
        }
    }

    pub fn dims(&self) -> &[usize] {
        match self {
            AnyRepresentation::Rational(r) => r.dims(),
            AnyRepresentation::Prime(r) => r.dims(),
        }
    }
}

impl From<Representation<Rationals>> for AnyRepresentation {
    fn from(r: Representation<Rationals>) -> Self {
        AnyRepresentation::Rational(r)
    }
}

impl From<Representation<PrimeField>> for AnyRepresentation {
    fn from(r: Representation<PrimeField>) -> Self {
        AnyRepresentation::Prime(r)
    }
}
