use crate::expr::EvalError;
use crate::geometry::Complex;

/// A function of one complex variable that the sweeps may sample.
///
/// Implemented by parsed expressions, zoo entries, interpolated grid data and
/// plain closures.
pub trait Oracle: Sync {
    fn eval(&self, z: Complex) -> Result<Complex, EvalError>;
}

impl<F> Oracle for F
where
    F: Fn(Complex) -> Complex + Sync,
{
    fn eval(&self, z: Complex) -> Result<Complex, EvalError> {
        Ok(self(z))
    }
}

/// `f(u * z)`: the oracle seen in a frame rotated by the unit factor `u`.
pub struct Rotated<'a, O: ?Sized> {
    pub inner: &'a O,
    pub rotation: Complex,
}

impl<O: Oracle + ?Sized> Oracle for Rotated<'_, O> {
    fn eval(&self, z: Complex) -> Result<Complex, EvalError> {
        self.inner.eval(self.rotation * z)
    }
}
