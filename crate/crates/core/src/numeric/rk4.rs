use num_traits::Float;

/// Classic fourth-order Runge–Kutta stepper with reusable stage buffers.
#[derive(Debug, Clone)]
pub struct Rk4<F> {
    k1: Vec<F>,
    k2: Vec<F>,
    k3: Vec<F>,
    k4: Vec<F>,
    tmp: Vec<F>,
}

impl<F: Float> Rk4<F> {
    pub fn new(dim: usize) -> Self {
        Self {
            k1: vec![F::zero(); dim],
            k2: vec![F::zero(); dim],
            k3: vec![F::zero(); dim],
            k4: vec![F::zero(); dim],
            tmp: vec![F::zero(); dim],
        }
    }

    /// Advances `y` from `t` to `t + dt` for the system `y' = rhs(t, y)`,
    /// where `rhs` writes the derivative into its third argument.
    pub fn step<R>(&mut self, rhs: R, t: F, y: &mut [F], dt: F)
    where
        R: Fn(F, &[F], &mut [F]),
    {
        let two = F::from(2.0).unwrap();
        let six = F::from(6.0).unwrap();
        let half = dt / two;

        rhs(t, y, &mut self.k1);
        for (i, v) in self.tmp.iter_mut().enumerate() {
            *v = y[i] + half * self.k1[i];
        }
        rhs(t + half, &self.tmp, &mut self.k2);
        for (i, v) in self.tmp.iter_mut().enumerate() {
            *v = y[i] + half * self.k2[i];
        }
        rhs(t + half, &self.tmp, &mut self.k3);
        for (i, v) in self.tmp.iter_mut().enumerate() {
            *v = y[i] + dt * self.k3[i];
        }
        rhs(t + dt, &self.tmp, &mut self.k4);
        for (i, v) in y.iter_mut().enumerate() {
            *v = *v + dt / six * (self.k1[i] + two * (self.k2[i] + self.k3[i]) + self.k4[i]);
        }
    }
}
