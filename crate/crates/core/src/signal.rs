//! Test-signal and window generators.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid3D, SampledField3D};
use crate::octonion::{Axis, Octonion};

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum SignalSpec {
    /// `amplitude · exp(−Σ (t_k − c_k)² / 2σ_k²)`, real.
    Gaussian {
        #[serde(default)]
        center: [f64; 3],
        widths: [f64; 3],
        #[serde(default = "one")]
        amplitude: f64,
    },
    /// The Gaussian envelope times `(e^{e1 χ1 u1²} e^{e2 χ2 u2²}) e^{e4 χ3 u3²}`
    /// with `u = t − c`.
    ChirpedGaussian {
        #[serde(default)]
        center: [f64; 3],
        widths: [f64; 3],
        chirp: [f64; 3],
        #[serde(default = "one")]
        amplitude: f64,
    },
    /// `amplitude` where `|t_k − c_k| ≤ half_width_k` on every axis, else 0.
    Boxcar {
        #[serde(default)]
        center: [f64; 3],
        half_widths: [f64; 3],
        #[serde(default = "one")]
        amplitude: f64,
    },
    /// Uniform `[−1, 1)` components from a ChaCha8 stream under a Gaussian envelope.
    RandomOctonion {
        seed: u64,
        #[serde(default)]
        center: [f64; 3],
        widths: [f64; 3],
    },
    /// Read from a field file; the file's grid must match the target grid.
    File { path: PathBuf },
}

fn check_widths(w: &[f64; 3], what: &str) -> Result<()> {
    if w.iter().all(|x| *x > 0.0 && x.is_finite()) {
        Ok(())
    } else {
        Err(Error::BadSpec(format!(
            "{what} must be positive and finite, got {w:?}"
        )))
    }
}

fn check_finite(v: &[f64], what: &str) -> Result<()> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::BadSpec(format!("{what} must be finite")))
    }
}

fn envelope(x: [f64; 3], center: &[f64; 3], widths: &[f64; 3]) -> f64 {
    let e: f64 = (0..3)
        .map(|k| ((x[k] - center[k]) / widths[k]).powi(2))
        .sum();
    (-0.5 * e).exp()
}

impl SignalSpec {
    pub fn gaussian(width: f64) -> Self {
        Self::Gaussian {
            center: [0.0; 3],
            widths: [width; 3],
            amplitude: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Gaussian {
                center,
                widths,
                amplitude,
            } => {
                check_widths(widths, "widths")?;
                check_finite(center, "center")?;
                check_finite(&[*amplitude], "amplitude")
            }
            Self::ChirpedGaussian {
                center,
                widths,
                chirp,
                amplitude,
            } => {
                check_widths(widths, "widths")?;
                check_finite(center, "center")?;
                check_finite(chirp, "chirp")?;
                check_finite(&[*amplitude], "amplitude")
            }
            Self::Boxcar {
                center,
                half_widths,
                amplitude,
            } => {
                check_widths(half_widths, "half_widths")?;
                check_finite(center, "center")?;
                check_finite(&[*amplitude], "amplitude")
            }
            Self::RandomOctonion { center, widths, .. } => {
                check_widths(widths, "widths")?;
                check_finite(center, "center")
            }
            Self::File { .. } => Ok(()),
        }
    }

    /// Short human-readable label for reports.
    pub fn label(&self) -> String {
        match self {
            Self::Gaussian { widths, .. } => format!("gaussian(widths={widths:?})"),
            Self::ChirpedGaussian { widths, chirp, .. } => {
                format!("chirped-gaussian(widths={widths:?}, chirp={chirp:?})")
            }
            Self::Boxcar { half_widths, .. } => format!("boxcar(half_widths={half_widths:?})"),
            Self::RandomOctonion { seed, .. } => format!("random-octonion(seed={seed})"),
            Self::File { path } => format!("file({})", path.display()),
        }
    }
}

pub fn generate_signal(spec: &SignalSpec, grid: &Grid3D) -> Result<SampledField3D> {
    spec.validate()?;
    Ok(match spec {
        SignalSpec::Gaussian {
            center,
            widths,
            amplitude,
        } => SampledField3D::from_fn(*grid, |x| {
            Octonion::real(amplitude * envelope(x, center, widths))
        }),
        SignalSpec::ChirpedGaussian {
            center,
            widths,
            chirp,
            amplitude,
        } => SampledField3D::from_fn(*grid, |x| {
            let mut v = Octonion::real(amplitude * envelope(x, center, widths));
            for (k, axis) in Axis::BY_DIMENSION.iter().enumerate() {
                v *= Octonion::exp_axis(*axis, chirp[k] * (x[k] - center[k]).powi(2));
            }
            v
        }),
        SignalSpec::Boxcar {
            center,
            half_widths,
            amplitude,
        } => SampledField3D::from_fn(*grid, |x| {
            let inside = (0..3).all(|k| (x[k] - center[k]).abs() <= half_widths[k]);
            Octonion::real(if inside { *amplitude } else { 0.0 })
        }),
        SignalSpec::RandomOctonion {
            seed,
            center,
            widths,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            SampledField3D::from_fn(*grid, |x| {
                let c: [f64; 8] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
                Octonion(c).scale(envelope(x, center, widths))
            })
        }
        SignalSpec::File { path } => {
            let f = crate::field_io::read_field(path)?;
            if f.grid != *grid {
                return Err(Error::GridMismatch(format!(
                    "{} holds a different grid",
                    path.display()
                )));
            }
            f
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_center_value_is_amplitude() {
        let g = Grid3D::new([crate::grid::GridAxis::new(3, 0.5, -0.5).unwrap(); 3]);
        let spec = SignalSpec::Gaussian {
            center: [0.0; 3],
            widths: [0.7, 1.0, 2.0],
            amplitude: 2.5,
        };
        let f = generate_signal(&spec, &g).unwrap();
        assert_eq!(f.values[g.flat([1, 1, 1])], Octonion::real(2.5));
        assert!(f.is_real(0.0));
    }

    #[test]
    fn gaussian_norm_matches_closed_form() {
        // ∫ exp(−|t|²/σ²) dt = (πσ²)^{3/2}
        let sigma = 0.8;
        let g = Grid3D::cube(24, 6.0 * sigma / 24.0).unwrap();
        let f = generate_signal(&SignalSpec::gaussian(sigma), &g).unwrap();
        let exact = (PI * sigma * sigma).powf(0.75);
        assert!((f.l2_norm() - exact).abs() / exact < 1e-3);
    }

    #[test]
    fn random_is_reproducible() {
        let g = Grid3D::cube(4, 0.5).unwrap();
        let spec = SignalSpec::RandomOctonion {
            seed: 11,
            center: [0.0; 3],
            widths: [1.0; 3],
        };
        let a = generate_signal(&spec, &g).unwrap();
        let b = generate_signal(&spec, &g).unwrap();
        assert_eq!(a, b);
        assert!(a.values.iter().all(|v| v.0.iter().all(|c| *c != 0.0)));
        let other = SignalSpec::RandomOctonion {
            seed: 12,
            center: [0.0; 3],
            widths: [1.0; 3],
        };
        assert_ne!(a, generate_signal(&other, &g).unwrap());
    }

    #[test]
    fn chirp_keeps_envelope_modulus() {
        let g = Grid3D::cube(4, 0.5).unwrap();
        let plain = generate_signal(&SignalSpec::gaussian(1.0), &g).unwrap();
        let spec = SignalSpec::ChirpedGaussian {
            center: [0.0; 3],
            widths: [1.0; 3],
            chirp: [0.3, -0.7, 1.1],
            amplitude: 1.0,
        };
        let f = generate_signal(&spec, &g).unwrap();
        for (a, b) in f.values.iter().zip(&plain.values) {
            assert!((a.norm() - b.norm()).abs() < 1e-15);
        }
        assert!(!f.is_real(1e-6));
    }

    #[test]
    fn boxcar_support() {
        let g = Grid3D::cube(6, 1.0).unwrap();
        let spec = SignalSpec::Boxcar {
            center: [0.0; 3],
            half_widths: [1.0, 1.0, 3.0],
            amplitude: 1.0,
        };
        let f = generate_signal(&spec, &g).unwrap();
        assert_eq!(f.values.iter().filter(|v| v.re() == 1.0).count(), 2 * 2 * 6);
    }

    #[test]
    fn invalid_specs() {
        let g = Grid3D::cube(2, 1.0).unwrap();
        for spec in [
            SignalSpec::Gaussian {
                center: [0.0; 3],
                widths: [1.0, 0.0, 1.0],
                amplitude: 1.0,
            },
            SignalSpec::Boxcar {
                center: [0.0; 3],
                half_widths: [-1.0; 3],
                amplitude: 1.0,
            },
            SignalSpec::RandomOctonion {
                seed: 1,
                center: [f64::NAN; 3],
                widths: [1.0; 3],
            },
        ] {
            assert!(matches!(generate_signal(&spec, &g), Err(Error::BadSpec(_))));
        }
    }

    #[test]
    fn random_kind_requires_seed_in_json() {
        let err =
            serde_json::from_str::<SignalSpec>(r#"{"kind":"random-octonion","widths":[1,1,1]}"#);
        assert!(err.is_err());
        let ok: SignalSpec =
            serde_json::from_str(r#"{"kind":"gaussian","widths":[1,1,1]}"#).unwrap();
        assert_eq!(ok, SignalSpec::gaussian(1.0));
    }
}
