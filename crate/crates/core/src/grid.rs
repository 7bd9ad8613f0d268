//! Functions given as samples on a polar grid.
//!
//! Files are CSV with rows `r,theta,re,im` (an optional header row is
//! skipped). The samples must form a full tensor grid in `(r, theta)`.
//! Values between samples come from tensor-product cubic Lagrange
//! interpolation, periodic in `theta`.

use std::f64::consts::PI;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::expr::EvalError;
use crate::geometry::Complex;
use crate::oracle::Oracle;

/// Factor applied to the Morera threshold for interpolated data.
pub const GRID_TOL_INFLATION: f64 = 10.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PolarGrid {
    radii: Vec<f64>,
    thetas: Vec<f64>,
    /// Row-major: `values[i * thetas.len() + j]` at `(radii[i], thetas[j])`.
    values: Vec<Complex>,
}

fn lagrange4(xs: [f64; 4], x: f64) -> [f64; 4] {
    let mut w = [1.0; 4];
    for (i, wi) in w.iter_mut().enumerate() {
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                *wi *= (x - xj) / (xs[i] - xj);
            }
        }
    }
    w
}

impl PolarGrid {
    pub fn new(radii: Vec<f64>, thetas: Vec<f64>, values: Vec<Complex>) -> Result<Self> {
        if radii.len() < 4 || thetas.len() < 4 {
            return Err(Error::Config("polar grid needs at least 4 radii and 4 angles".into()));
        }
        if values.len() != radii.len() * thetas.len() {
            return Err(Error::Config("polar grid is not a full tensor grid".into()));
        }
        let increasing = |v: &[f64]| v.windows(2).all(|p| p[0] < p[1]);
        if !increasing(&radii) || radii[0] < 0.0 {
            return Err(Error::Config("grid radii must be nonnegative and increasing".into()));
        }
        if !increasing(&thetas) || thetas[0] < 0.0 || *thetas.last().unwrap() >= 2.0 * PI {
            return Err(Error::Config("grid angles must be increasing in [0, 2 pi)".into()));
        }
        Ok(Self {
            radii,
            thetas,
            values,
        })
    }

    /// Sample `f` at `radii x {2 pi j / n_theta}`.
    pub fn sample<O: Oracle + ?Sized>(f: &O, radii: &[f64], n_theta: usize) -> Result<Self> {
        let thetas: Vec<f64> = (0..n_theta).map(|j| 2.0 * PI * j as f64 / n_theta as f64).collect();
        let mut values = Vec::with_capacity(radii.len() * n_theta);
        for &r in radii {
            for &t in &thetas {
                values.push(f.eval(Complex::from_polar(r, t))?);
            }
        }
        Self::new(radii.to_vec(), thetas, values)
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut rows: Vec<[f64; 4]> = Vec::new();
        for (line, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Config(format!("grid file: {e}")))?;
            if rec.len() != 4 {
                return Err(Error::Config(format!(
                    "grid file row {}: expected 4 columns r,theta,re,im",
                    line + 1
                )));
            }
            let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
            match parsed {
                Ok(v) => rows.push([v[0], v[1], v[2], v[3]]),
                Err(_) if line == 0 => continue,
                Err(e) => {
                    return Err(Error::Config(format!("grid file row {}: {e}", line + 1)));
                }
            }
        }
        let mut radii: Vec<f64> = rows.iter().map(|r| r[0]).collect();
        let mut thetas: Vec<f64> = rows.iter().map(|r| r[1].rem_euclid(2.0 * PI)).collect();
        radii.sort_by(f64::total_cmp);
        radii.dedup();
        thetas.sort_by(f64::total_cmp);
        thetas.dedup();
        let nt = thetas.len();
        let mut values = vec![None; radii.len() * nt];
        for row in &rows {
            let i = radii.binary_search_by(|x| x.total_cmp(&row[0])).unwrap();
            let j = thetas
                .binary_search_by(|x| x.total_cmp(&row[1].rem_euclid(2.0 * PI)))
                .unwrap();
            values[i * nt + j] = Some(Complex::new(row[2], row[3]));
        }
        let values: Option<Vec<Complex>> = values.into_iter().collect();
        let values = values.ok_or_else(|| Error::Config("grid file is not a full tensor grid".into()))?;
        Self::new(radii, thetas, values)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        let io = |e: csv::Error| Error::Config(format!("writing grid: {e}"));
        w.write_record(["r", "theta", "re", "im"]).map_err(io)?;
        for (i, r) in self.radii.iter().enumerate() {
            for (j, t) in self.thetas.iter().enumerate() {
                let v = self.values[i * self.thetas.len() + j];
                w.write_record([r.to_string(), t.to_string(), v.re.to_string(), v.im.to_string()])
                    .map_err(io)?;
            }
        }
        w.flush().map_err(|e| Error::Config(format!("writing grid: {e}")))?;
        Ok(())
    }

    pub fn interpolate(&self, z: Complex) -> Complex {
        let r = z.norm();
        let theta = z.arg().rem_euclid(2.0 * PI);

        let nr = self.radii.len();
        let k = self.radii.partition_point(|&x| x <= r);
        let i0 = k.saturating_sub(2).min(nr - 4);
        let rs = [self.radii[i0], self.radii[i0 + 1], self.radii[i0 + 2], self.radii[i0 + 3]];
        let wr = lagrange4(rs, r);

        let nt = self.thetas.len() as isize;
        let k = self.thetas.partition_point(|&x| x <= theta) as isize;
        let mut ts = [0.0; 4];
        let mut js = [0usize; 4];
        for (m, jj) in (k - 2..k + 2).enumerate() {
            let wrapped = jj.rem_euclid(nt);
            let turns = (jj - wrapped) / nt;
            js[m] = wrapped as usize;
            ts[m] = self.thetas[wrapped as usize] + 2.0 * PI * turns as f64;
        }
        let wt = lagrange4(ts, theta);

        let mut acc = Complex::new(0.0, 0.0);
        for (a, wa) in wr.iter().enumerate() {
            let row = (i0 + a) * self.thetas.len();
            let mut line = Complex::new(0.0, 0.0);
            for (b, wb) in wt.iter().enumerate() {
                line += self.values[row + js[b]] * *wb;
            }
            acc += line * *wa;
        }
        acc
    }
}

impl Oracle for PolarGrid {
    fn eval(&self, z: Complex) -> std::result::Result<Complex, EvalError> {
        Ok(self.interpolate(z))
    }
}
