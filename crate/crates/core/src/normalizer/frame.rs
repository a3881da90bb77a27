use crate::algebra::{
    invert_map, jacobian, poly_mat_vec, AlgebraError, NearIdentityMap, Polynomial, Substitution, VectorField,
};

/// A set of fields sharing one coordinate system, together with the
/// accumulated map from the original coordinates and its inverse.
pub(super) struct Frame {
    pub fields: Vec<VectorField>,
    forward: Vec<Polynomial>,
    inverse: Vec<Polynomial>,
    k: usize,
}

impl Frame {
    pub fn new(fields: Vec<VectorField>, k: usize) -> Self {
        let n = fields[0].dim();
        let id: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
        Self {
            fields,
            forward: id.clone(),
            inverse: id,
            k,
        }
    }

    /// Changes coordinates by `u = x + h(x)`: every field becomes
    /// `((I + Dh)·f)(ψ(u))` with `ψ` the inverse of the step map.
    pub fn apply(&mut self, h: &[Polynomial]) -> Result<(), AlgebraError> {
        let n = h.len();
        let k = self.k;
        let step: Vec<Polynomial> = h
            .iter()
            .enumerate()
            .map(|(i, p)| Polynomial::var(n, i).add(p))
            .collect();
        let psi = invert_map(&step, k)?;
        let dh = jacobian(h);
        let mut sub = Substitution::new(&psi, k)?;
        for f in &mut self.fields {
            let extra = poly_mat_vec(&dh, f.components(), k);
            let comps: Vec<Polynomial> = f
                .components()
                .iter()
                .zip(&extra)
                .map(|(a, b)| sub.apply(&a.add(b)))
                .collect();
            *f = VectorField::new(comps, k)?;
        }
        self.inverse = self.inverse.iter().map(|p| sub.apply(p)).collect();
        let mut fwd = Substitution::new(&self.forward, k)?;
        let shifted: Vec<Polynomial> = h.iter().map(|p| fwd.apply(p)).collect();
        self.forward = self
            .forward
            .iter()
            .zip(&shifted)
            .map(|(a, b)| a.add(b).truncated(k))
            .collect();
        Ok(())
    }

    pub fn finish(self) -> (Vec<VectorField>, NearIdentityMap) {
        let map = NearIdentityMap::from_parts(self.forward, self.inverse, self.k);
        (self.fields, map)
    }
}
