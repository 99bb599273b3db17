use crate::error::{Error, Result};
use crate::tensor::Shape;

/// The dual descriptions λ_1,…,λ_N of a shape: λ_i replaces p_1,…,p_i by
/// D−2−p_1,…,D−2−p_i.
///
/// Requires every p_k ≤ ⌊(D−2)/2⌋.
pub fn dual_signatures(shape: &Shape) -> Result<Vec<Shape>> {
    let dim = shape.dim();
    if dim < 2 {
        return Err(Error::Precondition(format!("dual descriptions need D ≥ 2, got D = {dim}")));
    }
    shape.principal_label()?;
    let bound = (dim - 2) / 2;
    for (k, p) in shape.signature().iter().enumerate() {
        if *p > bound {
            return Err(Error::Precondition(format!(
                "p_{} = {p} violates p_k ≤ ⌊(D−2)/2⌋ = {bound} ({p} > {bound})",
                k + 1
            )));
        }
    }
    let mut sig = shape.signature().to_vec();
    let mut out = Vec::with_capacity(sig.len());
    for i in 0..sig.len() {
        sig[i] = dim - 2 - sig[i];
        let dual = Shape::new(dim, sig.clone())?;
        if !dual.is_young() {
            return Err(Error::Shape(format!(
                "dual signature {:?} is not weakly decreasing",
                dual.signature()
            )));
        }
        out.push(dual);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(dim: usize, s: &[usize]) -> Shape {
        Shape::new(dim, s.to_vec()).unwrap()
    }

    #[test]
    fn graviton_duals() {
        let d = dual_signatures(&sig(5, &[1, 1])).unwrap();
        assert_eq!(d, vec![sig(5, &[2, 1]), sig(5, &[2, 2])]);
    }

    #[test]
    fn maxwell_in_four_dimensions_is_self_dual() {
        assert_eq!(dual_signatures(&sig(4, &[1])).unwrap(), vec![sig(4, &[1])]);
    }

    #[test]
    fn hypothesis_is_checked() {
        assert!(matches!(dual_signatures(&sig(5, &[2, 2])), Err(Error::Precondition(_))));
    }
}
