//! 2D finite-volume Poisson solver on the wire cross-section (y–z plane).
//!
//! Unknowns are cell-centred potentials. Faces between cells use the harmonic
//! mean of the two permittivities, so normal displacement is continuous across
//! dielectric interfaces. Electrode cells are Dirichlet; the outer domain edge
//! is Neumann (zero normal field) unless covered by electrodes. The linear
//! system is relaxed with red-black SOR.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const EPS_SIO2: f64 = 3.9;
pub const EPS_SI3N4: f64 = 7.5;
pub const EPS_INSB: f64 = 16.8;
pub const EPS_VACUUM: f64 = 1.0;

/// Rashba coefficient γ₃D of InSb, nm² (523 e·Å², band-structure literature value).
pub const INSB_GAMMA_3D_NM2: f64 = 5.23;

#[derive(Debug, Clone, PartialEq)]
pub struct CrossSection {
    /// Number of cells along y.
    pub ny: usize,
    /// Number of cells along z.
    pub nz: usize,
    /// Cell edge length, nm.
    pub cell: f64,
    /// z of the bottom edge of the domain, nm.
    pub origin_z: f64,
    /// Relative permittivity per cell, index `iz * ny + iy`.
    pub eps: Vec<f64>,
    /// Fixed potential in volts for electrode cells.
    pub dirichlet: Vec<Option<f64>>,
    /// Point (y, z) in nm at which the lateral field is evaluated.
    pub axis: (f64, f64),
}

impl CrossSection {
    /// Cell faces sit at integer multiples of `cell` along y (with y = 0 on
    /// the vertical centre line when `ny` is even) and at `origin_z + k·cell`
    /// along z.
    pub fn new(ny: usize, nz: usize, cell: f64, eps_background: f64) -> Self {
        Self {
            ny,
            nz,
            cell,
            origin_z: 0.0,
            eps: vec![eps_background; ny * nz],
            dirichlet: vec![None; ny * nz],
            axis: (0.0, 0.5 * nz as f64 * cell),
        }
    }

    pub fn idx(&self, iy: usize, iz: usize) -> usize {
        iz * self.ny + iy
    }

    /// Cell-centre coordinates (y, z) in nm.
    pub fn center(&self, iy: usize, iz: usize) -> (f64, f64) {
        let y = (iy as f64 + 0.5 - self.ny as f64 / 2.0) * self.cell;
        let z = self.origin_z + (iz as f64 + 0.5) * self.cell;
        (y, z)
    }

    pub fn fill(&mut self, mut pred: impl FnMut(f64, f64) -> bool, eps: f64) {
        for iz in 0..self.nz {
            for iy in 0..self.ny {
                let (y, z) = self.center(iy, iz);
                if pred(y, z) {
                    let i = self.idx(iy, iz);
                    self.eps[i] = eps;
                }
            }
        }
    }

    pub fn electrode(&mut self, mut pred: impl FnMut(f64, f64) -> bool, volts: f64) {
        for iz in 0..self.nz {
            for iy in 0..self.ny {
                let (y, z) = self.center(iy, iz);
                if pred(y, z) {
                    let i = self.idx(iy, iz);
                    self.dirichlet[i] = Some(volts);
                }
            }
        }
    }

    /// Parallel plates: the first and last columns are electrodes at `v_left`
    /// and `v_right`, with uniform permittivity in between.
    pub fn parallel_plates(ny: usize, nz: usize, cell: f64, eps: f64, v_left: f64, v_right: f64) -> Self {
        let mut cs = Self::new(ny, nz, cell, eps);
        for iz in 0..nz {
            let l = cs.idx(0, iz);
            let r = cs.idx(ny - 1, iz);
            cs.dirichlet[l] = Some(v_left);
            cs.dirichlet[r] = Some(v_right);
        }
        cs
    }

    /// Gap between the inner faces of the plates of
    /// [`CrossSection::parallel_plates`].
    pub fn plate_separation(&self) -> f64 {
        (self.ny - 2) as f64 * self.cell
    }

    /// Fractional cell coordinates of a point, measured between cell centres.
    fn locate(&self, y: f64, z: f64) -> (f64, f64) {
        let fy = y / self.cell + self.ny as f64 / 2.0 - 0.5;
        let fz = (z - self.origin_z) / self.cell - 0.5;
        (fy, fz)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ny < 3 || self.nz < 2 {
            return Err(Error::IllPosed(format!("grid {}x{} too small", self.ny, self.nz)));
        }
        if self.eps.len() != self.ny * self.nz || self.dirichlet.len() != self.ny * self.nz {
            return Err(Error::IllPosed("array sizes do not match the grid".into()));
        }
        if !(self.cell > 0.0) {
            return Err(Error::IllPosed("cell size must be > 0".into()));
        }
        if let Some(e) = self.eps.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
            return Err(Error::IllPosed(format!("permittivity {e} is not positive")));
        }
        if self.dirichlet.iter().all(Option::is_none) {
            return Err(Error::IllPosed("no electrode cells".into()));
        }
        let (fy, fz) = self.locate(self.axis.0, self.axis.1);
        if !(fy >= 0.5 && fy <= self.ny as f64 - 1.5 && fz >= 0.0 && fz <= (self.nz - 1) as f64) {
            return Err(Error::IllPosed("axis point must lie inside the domain".into()));
        }
        Ok(())
    }

    /// Mirror image under y → −y.
    pub fn mirrored(&self) -> Self {
        let mut m = self.clone();
        for iz in 0..self.nz {
            for iy in 0..self.ny {
                let src = self.idx(self.ny - 1 - iy, iz);
                let dst = self.idx(iy, iz);
                m.eps[dst] = self.eps[src];
                m.dirichlet[dst] = self.dirichlet[src];
            }
        }
        m.axis = (-self.axis.0, self.axis.1);
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Relative residual at which SOR stops.
    pub tol: f64,
    pub max_sweeps: usize,
    /// Over-relaxation factor; `None` picks one from the grid size.
    pub omega: Option<f64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol: 1e-10, max_sweeps: 200_000, omega: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialMap2D {
    pub ny: usize,
    pub nz: usize,
    pub cell: f64,
    /// Potential in volts, index `iz * ny + iy`.
    pub phi: Vec<f64>,
    pub residual: f64,
    pub sweeps: usize,
    pub origin_z: f64,
    pub axis: (f64, f64),
}

impl PotentialMap2D {
    pub fn at(&self, iy: usize, iz: usize) -> f64 {
        self.phi[iz * self.ny + iy]
    }

    /// E_y = −∂φ/∂y at (y, z), V/nm: differences across vertical cell faces,
    /// bilinearly interpolated between faces and rows.
    pub fn field_y_at(&self, y: f64, z: f64) -> f64 {
        // face f sits between cells f and f + 1, at fractional centre index f + ½
        let fy = (y / self.cell + self.ny as f64 / 2.0 - 1.0).clamp(0.0, (self.ny - 2) as f64);
        let fz = ((z - self.origin_z) / self.cell - 0.5).clamp(0.0, (self.nz - 1) as f64);
        let (f0, z0) = (fy.floor() as usize, fz.floor() as usize);
        let (f1, z1) = ((f0 + 1).min(self.ny - 2), (z0 + 1).min(self.nz - 1));
        let (wy, wz) = (fy - f0 as f64, fz - z0 as f64);
        let e = |f: usize, iz: usize| -(self.at(f + 1, iz) - self.at(f, iz)) / self.cell;
        (1.0 - wz) * ((1.0 - wy) * e(f0, z0) + wy * e(f1, z0)) + wz * ((1.0 - wy) * e(f0, z1) + wy * e(f1, z1))
    }

    /// Rows of φ (one per z, bottom first) as CSV with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for iz in 0..self.nz {
            let row: Vec<String> = (0..self.ny).map(|iy| format!("{:.12e}", self.at(iy, iz))).collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

fn harmonic(a: f64, b: f64) -> f64 {
    2.0 * a * b / (a + b)
}

/// Face coefficients (west, east, south, north); zero on the outer boundary.
///
/// Between two dielectric cells the face carries the harmonic mean of their
/// permittivities. An electrode cell fixes the potential on its faces, half a
/// cell from the neighbouring centre, hence 2ε of the free cell.
fn coefficients(cs: &CrossSection) -> Vec<[f64; 4]> {
    let mut c = vec![[0.0; 4]; cs.ny * cs.nz];
    let face = |i: usize, j: usize| {
        if cs.dirichlet[j].is_some() {
            2.0 * cs.eps[i]
        } else {
            harmonic(cs.eps[i], cs.eps[j])
        }
    };
    for iz in 0..cs.nz {
        for iy in 0..cs.ny {
            let i = cs.idx(iy, iz);
            if iy > 0 {
                c[i][0] = face(i, i - 1);
            }
            if iy + 1 < cs.ny {
                c[i][1] = face(i, i + 1);
            }
            if iz > 0 {
                c[i][2] = face(i, i - cs.ny);
            }
            if iz + 1 < cs.nz {
                c[i][3] = face(i, i + cs.ny);
            }
        }
    }
    c
}

fn neighbours(cs: &CrossSection, i: usize) -> [usize; 4] {
    // out-of-range neighbours have zero coefficient; any valid index will do
    let w = if i % cs.ny > 0 { i - 1 } else { i };
    let e = if i % cs.ny + 1 < cs.ny { i + 1 } else { i };
    let s = if i >= cs.ny { i - cs.ny } else { i };
    let n = if i + cs.ny < cs.ny * cs.nz { i + cs.ny } else { i };
    [w, e, s, n]
}

/// Relative residual ‖Aφ − b‖₂ / ‖diag(A)·φ‖₂ over the free cells.
pub fn relative_residual(cs: &CrossSection, phi: &[f64]) -> f64 {
    let coef = coefficients(cs);
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..phi.len() {
        if cs.dirichlet[i].is_some() {
            continue;
        }
        let nb = neighbours(cs, i);
        let diag: f64 = coef[i].iter().sum();
        let off: f64 = (0..4).map(|d| coef[i][d] * phi[nb[d]]).sum();
        let r = off - diag * phi[i];
        num += r * r;
        den += (diag * phi[i]).powi(2);
    }
    if den == 0.0 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    }
}

/// Solves ∇·(ε∇φ) = 0 with the electrode cells held at their voltages.
pub fn solve_cross_section(cs: &CrossSection, opts: &SolverOptions) -> Result<PotentialMap2D> {
    cs.validate()?;
    let n = cs.ny * cs.nz;
    let coef = coefficients(cs);
    let mut phi: Vec<f64> = cs.dirichlet.iter().map(|d| d.unwrap_or(0.0)).collect();
    let done = |phi: Vec<f64>, residual: f64, sweeps: usize| PotentialMap2D {
        ny: cs.ny,
        nz: cs.nz,
        cell: cs.cell,
        phi,
        residual,
        sweeps,
        origin_z: cs.origin_z,
        axis: cs.axis,
    };
    if cs.dirichlet.iter().all(|d| d.map_or(true, |v| v == 0.0)) {
        return Ok(done(phi, 0.0, 0));
    }
    let omega = opts.omega.unwrap_or_else(|| {
        let m = cs.ny.max(cs.nz) as f64;
        2.0 / (1.0 + (std::f64::consts::PI / m).sin())
    });
    let free: [Vec<usize>; 2] = {
        let mut red = Vec::new();
        let mut black = Vec::new();
        for iz in 0..cs.nz {
            for iy in 0..cs.ny {
                let i = cs.idx(iy, iz);
                if cs.dirichlet[i].is_none() {
                    if (iy + iz) % 2 == 0 { red.push(i) } else { black.push(i) }
                }
            }
        }
        [red, black]
    };
    let nbs: Vec<[usize; 4]> = (0..n).map(|i| neighbours(cs, i)).collect();
    let diag: Vec<f64> = coef.iter().map(|c| c.iter().sum()).collect();

    let mut residual = f64::INFINITY;
    for sweep in 1..=opts.max_sweeps {
        for colour in &free {
            for &i in colour {
                let c = &coef[i];
                let nb = &nbs[i];
                let gs = (c[0] * phi[nb[0]] + c[1] * phi[nb[1]] + c[2] * phi[nb[2]] + c[3] * phi[nb[3]]) / diag[i];
                phi[i] += omega * (gs - phi[i]);
            }
        }
        if sweep % 20 == 0 {
            residual = relative_residual(cs, &phi);
            if !residual.is_finite() {
                break;
            }
            if residual < opts.tol {
                return Ok(done(phi, residual, sweep));
            }
        }
    }
    Err(Error::NotConverged { what: "cross-section SOR", iterations: opts.max_sweeps, last: residual })
}

/// E_y at the axis point, V/nm.
pub fn lateral_field_at_axis(map: &PotentialMap2D) -> f64 {
    map.field_y_at(map.axis.0, map.axis.1)
}

/// Layer stack of the gated wire, seen in cross-section.
///
/// Grounded substrate at the bottom edge, oxide, a bottom-gate plane on top
/// of the oxide, the nitride layer with the wire embedded in its middle and
/// two side gates flanking the wire, and vacuum above.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeviceStack {
    pub width_nm: f64,
    pub height_nm: f64,
    pub cell_nm: f64,
    pub oxide_thickness_nm: f64,
    pub nitride_thickness_nm: f64,
    pub wire_diameter_nm: f64,
    /// Distance from the wire axis to the inner face of each side gate.
    pub side_gate_gap_nm: f64,
    pub side_gate_width_nm: f64,
    pub side_gate_height_nm: f64,
    pub eps_oxide: f64,
    pub eps_nitride: f64,
    pub eps_wire: f64,
    pub bottom_gate_v: f64,
    /// Vertical shift applied to everything above the substrate, nm.
    #[serde(default)]
    pub z_offset_nm: f64,
}

impl Default for DeviceStack {
    fn default() -> Self {
        Self {
            width_nm: 500.0,
            height_nm: 400.0,
            cell_nm: 2.5,
            oxide_thickness_nm: 100.0,
            nitride_thickness_nm: 200.0,
            wire_diameter_nm: 60.0,
            side_gate_gap_nm: 100.0,
            side_gate_width_nm: 40.0,
            side_gate_height_nm: 60.0,
            eps_oxide: EPS_SIO2,
            eps_nitride: EPS_SI3N4,
            eps_wire: EPS_INSB,
            bottom_gate_v: 0.0,
            z_offset_nm: 0.0,
        }
    }
}

impl DeviceStack {
    pub fn with_cell(self, cell_nm: f64) -> Self {
        Self { cell_nm, ..self }
    }

    /// z of the wire axis, nm.
    pub fn axis_z(&self) -> f64 {
        self.z_offset_nm + self.oxide_thickness_nm + 0.5 * self.nitride_thickness_nm
    }

    /// Builds the cross-section with side-gate voltages `v_left` (y < 0) and
    /// `v_right` (y > 0).
    ///
    /// Cell faces lie on integer multiples of the cell size, so every layer
    /// and gate boundary that is a multiple of it is represented exactly;
    /// electrode surfaces coincide with those faces. One row of substrate
    /// cells lies below z = 0.
    pub fn build(&self, v_left: f64, v_right: f64) -> Result<CrossSection> {
        let cell = self.cell_nm;
        if !(cell > 0.0 && cell.is_finite()) {
            return Err(Error::IllPosed("cell size must be > 0".into()));
        }
        let half_cells = (0.5 * self.width_nm / cell).round() as usize;
        let ny = 2 * half_cells;
        let nz = (self.height_nm / cell).round() as usize + 1;
        if ny < 4 || nz < 3 {
            return Err(Error::IllPosed("device stack resolves to fewer than 3 cells".into()));
        }
        let mut cs = CrossSection::new(ny, nz, cell, EPS_VACUUM);
        cs.origin_z = -cell;
        let z0 = self.z_offset_nm;
        let ox_top = z0 + self.oxide_thickness_nm;
        let ni_top = ox_top + self.nitride_thickness_nm;
        let zc = self.axis_z();
        let r = 0.5 * self.wire_diameter_nm;

        cs.fill(|_, z| z < ox_top, self.eps_oxide);
        cs.fill(|_, z| z >= ox_top && z < ni_top, self.eps_nitride);
        cs.fill(|y, z| y * y + (z - zc).powi(2) < r * r, self.eps_wire);

        cs.electrode(|_, z| z < z0, 0.0);
        // thin gate plane whose upper face is the oxide top
        cs.electrode(|_, z| z < ox_top && z > ox_top - cell, self.bottom_gate_v);
        let gate = |sgn: f64| {
            let inner = self.side_gate_gap_nm;
            let outer = inner + self.side_gate_width_nm;
            let half = 0.5 * self.side_gate_height_nm;
            move |y: f64, z: f64| {
                let yy = sgn * y;
                yy > inner && yy < outer && (z - zc).abs() < half
            }
        };
        cs.electrode(gate(-1.0), v_left);
        cs.electrode(gate(1.0), v_right);
        cs.axis = (0.0, zc);
        Ok(cs)
    }
}

/// E_y at the axis per volt of differential side-gate drive
/// (V_L = +1 V, V_R = −1 V, all other electrodes grounded), nm⁻¹.
pub fn lever_arm(stack: &DeviceStack, opts: &SolverOptions) -> Result<f64> {
    let grounded = DeviceStack { bottom_gate_v: 0.0, ..*stack };
    let cs = grounded.build(1.0, -1.0)?;
    Ok(lateral_field_at_axis(&solve_cross_section(&cs, opts)?))
}

/// Summary of a cross-section solve as written by the `poisson` command.
#[derive(Debug, Clone, Serialize)]
pub struct PoissonSummary {
    pub ny: usize,
    pub nz: usize,
    pub cell_nm: f64,
    pub v_lr_v: f64,
    pub residual: f64,
    pub sweeps: usize,
    pub axis_field_v_per_nm: f64,
    pub lever_arm_per_nm: f64,
    pub gamma_3d_nm2: f64,
    pub gamma_e_mev_nm: f64,
}

/// Solves the stack at `v_lr` and reports the resulting Rashba amplitude
/// γ₃D|e|E_y in meV·nm.
pub fn poisson_report(stack: &DeviceStack, v_lr: f64, opts: &SolverOptions) -> Result<(PotentialMap2D, PoissonSummary)> {
    let cs = stack.build(v_lr, -v_lr)?;
    let map = solve_cross_section(&cs, opts)?;
    let lever = lever_arm(stack, opts)?;
    let field = lateral_field_at_axis(&map);
    let summary = PoissonSummary {
        ny: map.ny,
        nz: map.nz,
        cell_nm: map.cell,
        v_lr_v: v_lr,
        residual: map.residual,
        sweeps: map.sweeps,
        axis_field_v_per_nm: field,
        lever_arm_per_nm: lever,
        gamma_3d_nm2: INSB_GAMMA_3D_NM2,
        // γ₃D[nm²]·E[V/nm] gives eV·nm
        gamma_e_mev_nm: INSB_GAMMA_3D_NM2 * field * 1e3,
    };
    Ok((map, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_plate_field() {
        let cs = CrossSection::parallel_plates(42, 9, 2.5, 3.9, 1.0, -1.0);
        let opts = SolverOptions { tol: 1e-13, ..SolverOptions::default() };
        let map = solve_cross_section(&cs, &opts).unwrap();
        let expected = 2.0 / cs.plate_separation();
        for iz in 0..cs.nz {
            for iy in 1..cs.ny - 2 {
                let e = -(map.at(iy + 1, iz) - map.at(iy, iz)) / cs.cell;
                assert!(((e - expected) / expected).abs() < 1e-10, "{e} vs {expected}");
            }
        }
        assert!(((lateral_field_at_axis(&map) - expected) / expected).abs() < 1e-10);
        // the potential extrapolates to the electrode voltage on the plate faces
        let face = map.at(1, 0) + 0.5 * cs.cell * expected;
        assert!((face - 1.0).abs() < 1e-10);
    }

    #[test]
    fn two_layer_capacitor() {
        // left half ε₁, right half ε₂; plates on the outer columns
        let (e1, e2) = (3.9, 7.5);
        let mut cs = CrossSection::parallel_plates(40, 3, 1.0, e1, 1.0, 0.0);
        for iz in 0..3 {
            for iy in 20..40 {
                let i = cs.idx(iy, iz);
                cs.eps[i] = e2;
            }
        }
        let opts = SolverOptions { tol: 1e-13, ..SolverOptions::default() };
        let map = solve_cross_section(&cs, &opts).unwrap();
        let f1 = map.at(10, 1) - map.at(11, 1);
        let f2 = map.at(30, 1) - map.at(31, 1);
        assert!((f1 / f2 - e2 / e1).abs() < 1e-9);
    }

    #[test]
    fn zero_voltages_give_zero_field() {
        let cs = DeviceStack::default().with_cell(5.0).build(0.0, 0.0).unwrap();
        let map = solve_cross_section(&cs, &SolverOptions::default()).unwrap();
        assert_eq!(lateral_field_at_axis(&map), 0.0);
    }

    #[test]
    fn no_electrodes_is_ill_posed() {
        let cs = CrossSection::new(11, 11, 1.0, 1.0);
        assert!(matches!(solve_cross_section(&cs, &SolverOptions::default()), Err(Error::IllPosed(_))));
        let mut bad = CrossSection::parallel_plates(11, 3, 1.0, 1.0, 1.0, 0.0);
        bad.eps[4] = -1.0;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn non_convergence_reported() {
        let cs = DeviceStack::default().with_cell(5.0).build(1.0, -1.0).unwrap();
        let opts = SolverOptions { max_sweeps: 40, ..SolverOptions::default() };
        assert!(matches!(solve_cross_section(&cs, &opts), Err(Error::NotConverged { .. })));
    }

    #[test]
    fn stack_geometry() {
        let s = DeviceStack::default();
        let cs = s.build(0.5, -0.5).unwrap();
        assert_eq!(cs.ny % 2, 0);
        assert_eq!(cs.axis, (0.0, s.axis_z()));
        // cells next to the axis point belong to the wire
        let iy = cs.ny / 2;
        let iz = ((s.axis_z() - cs.origin_z) / cs.cell) as usize;
        assert_eq!(cs.eps[cs.idx(iy, iz)], EPS_INSB);
        assert_eq!(cs.eps[cs.idx(iy - 1, iz - 1)], EPS_INSB);
        assert_eq!(cs.dirichlet[cs.idx(0, 0)], Some(0.0));
        // side gate inner face at the configured gap
        let (y, _) = cs.center(iy + (s.side_gate_gap_nm / cs.cell) as usize, iz);
        assert!(cs.dirichlet[cs.idx(iy + (s.side_gate_gap_nm / cs.cell) as usize, iz)] == Some(-0.5));
        assert!((y - s.side_gate_gap_nm - 0.5 * cs.cell).abs() < 1e-9);
        assert!(cs.dirichlet[cs.idx(iy + (s.side_gate_gap_nm / cs.cell) as usize - 1, iz)].is_none());
    }

    #[test]
    fn antisymmetric_drive_gives_odd_potential() {
        let s = DeviceStack::default().with_cell(5.0);
        let opts = SolverOptions { tol: 1e-13, ..SolverOptions::default() };
        let map = solve_cross_section(&s.build(1.0, -1.0).unwrap(), &opts).unwrap();
        for iz in 0..map.nz {
            for iy in 0..map.ny {
                assert!((map.at(iy, iz) + map.at(map.ny - 1 - iy, iz)).abs() < 1e-10);
            }
        }
        let cs = s.build(0.3, 0.7).unwrap();
        let a = solve_cross_section(&cs, &opts).unwrap();
        let b = solve_cross_section(&cs.mirrored(), &opts).unwrap();
        assert!((lateral_field_at_axis(&a) + lateral_field_at_axis(&b)).abs() < 1e-12);
    }

    #[test]
    fn vertical_translation_leaves_lever_arm_unchanged() {
        let s = DeviceStack::default().with_cell(5.0);
        let shifted = DeviceStack { z_offset_nm: 50.0, height_nm: s.height_nm + 50.0, ..s };
        let opts = SolverOptions { tol: 1e-12, ..SolverOptions::default() };
        let a = lever_arm(&s, &opts).unwrap();
        let b = lever_arm(&shifted, &opts).unwrap();
        assert!(((a - b) / a).abs() < 1e-8, "{a} vs {b}");
        assert!(a > 0.0);
    }
}
