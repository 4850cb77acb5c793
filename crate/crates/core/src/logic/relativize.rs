use std::str::FromStr;

use super::{Formula, LogicError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Below,
    Above,
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "below" => Ok(Side::Below),
            "above" => Ok(Side::Above),
            other => Err(format!("unknown side `{other}` (expected below or above)")),
        }
    }
}

/// Restricts every quantifier of `phi` to positions strictly below (or
/// above) `pivot` by conjoining `y<pivot` (or `pivot<y`) to its body.
pub fn relativize(phi: &Formula, pivot: &str, side: Side) -> Result<Formula, LogicError> {
    if phi.all_vars().contains(pivot) {
        return Err(LogicError::PivotCapture(pivot.to_string()));
    }
    Ok(guard(phi, pivot, side))
}

fn guard(phi: &Formula, pivot: &str, side: Side) -> Formula {
    match phi {
        Formula::Letter(..) | Formula::Less(..) => phi.clone(),
        Formula::Not(g) => Formula::not(guard(g, pivot, side)),
        Formula::And(a, b) => Formula::and(guard(a, pivot, side), guard(b, pivot, side)),
        Formula::Or(a, b) => Formula::or(guard(a, pivot, side), guard(b, pivot, side)),
        Formula::Quant(q, y, body) => {
            let bound = match side {
                Side::Below => Formula::less(y, pivot),
                Side::Above => Formula::less(pivot, y),
            };
            Formula::quant(*q, y, Formula::and(guard(body, pivot, side), bound))
        }
    }
}
