use super::mpoly::MPoly;

/// An element of `F_q(t1..tr)` as a reduced fraction with monic denominator.
///
/// The representation is canonical, so structural equality is field
/// equality. Arithmetic lives on [`FieldCtx`](super::FieldCtx).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    pub(crate) num: MPoly,
    pub(crate) den: MPoly,
}

impl RatFunc {
    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }
}
