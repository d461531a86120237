use num_complex::Complex64;

/// Single-qubit state of a vertex: the ket together with its Bloch vector.
#[derive(Debug, Clone)]
pub struct LocalQubitState {
    pub ket: [Complex64; 2],
    pub bloch: [f64; 3],
}

/// Ket of the qubit whose projector is `(I + u . sigma) / 2`:
/// `(cos(t/2), e^{i phi} sin(t/2))` with `u = (sin t cos phi, sin t sin phi, cos t)`.
/// At the poles the azimuth convention is `phi = 0`.
pub fn bloch_to_qubit(u: [f64; 3]) -> LocalQubitState {
    let t = u[2].clamp(-1.0, 1.0).acos();
    let phi = if u[0] == 0.0 && u[1] == 0.0 {
        0.0
    } else {
        u[1].atan2(u[0])
    };
    let ket = [
        Complex64::new((t / 2.0).cos(), 0.0),
        Complex64::from_polar((t / 2.0).sin(), phi),
    ];
    LocalQubitState { ket, bloch: u }
}

/// Per-vertex flip data of the entangling rounding: the operator `P` with
/// `P |xi> = c |xi_perp>`, where `c = -exp(2 i arg(xi_2))` and `arg(0) = 0`.
#[derive(Debug, Clone)]
pub(crate) struct VertexFlip {
    pub ket: [Complex64; 2],
    pub ket_perp: [Complex64; 2],
    pub c: Complex64,
}

pub(crate) fn vertex_flip(local: &LocalQubitState) -> VertexFlip {
    let [a, b] = local.ket;
    let ket_perp = [-b.conj(), a.conj()];
    let c = -Complex64::from_polar(1.0, 2.0 * arg_or_zero(b));
    VertexFlip {
        ket: local.ket,
        ket_perp,
        c,
    }
}

impl VertexFlip {
    /// Hermitian involution carrying the steering phase:
    /// `M(phi) = w |xi_perp><xi| + conj(w) |xi><xi_perp|` with `w = e^{i phi} c`.
    /// It satisfies `M^2 = I` and agrees with `e^{i phi} P` on `|xi>`.
    pub fn hermitian_flip(&self, phi: f64) -> [[Complex64; 2]; 2] {
        let w = Complex64::from_polar(1.0, phi) * self.c;
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for r in 0..2 {
            for cc in 0..2 {
                m[r][cc] = w * self.ket_perp[r] * self.ket[cc].conj()
                    + w.conj() * self.ket[r] * self.ket_perp[cc].conj();
            }
        }
        m
    }
}

/// Argument in [0, 2 pi) with the `arg(0) = 0` convention.
pub(crate) fn arg_or_zero(z: Complex64) -> f64 {
    if z.norm_sqr() == 0.0 {
        return 0.0;
    }
    let a = z.im.atan2(z.re);
    if a < 0.0 {
        a + 2.0 * std::f64::consts::PI
    } else {
        a
    }
}
