//! Planar domains: disks, annuli, rectangles and star-shaped regions whose
//! boundary radius is a truncated Fourier series about a reference point.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Number of φ samples used to validate positivity of a star boundary.
const POSITIVITY_SAMPLES: usize = 4096;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

/// Axis-aligned rectangle `[xmin, xmax] × [ymin, ymax]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BoundingBox {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        BoundingBox {
            xmin,
            xmax,
            ymin,
            ymax,
        }
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn diameter(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.xmin && p.x <= self.xmax && p.y >= self.ymin && p.y <= self.ymax
    }

    /// The box grown by `margin` on every side.
    pub fn expanded(&self, margin: f64) -> Self {
        BoundingBox::new(
            self.xmin - margin,
            self.xmax + margin,
            self.ymin - margin,
            self.ymax + margin,
        )
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.xmin, self.ymin),
            Point::new(self.xmax, self.ymin),
            Point::new(self.xmax, self.ymax),
            Point::new(self.xmin, self.ymax),
        ]
    }
}

/// Boundary radius `R(φ) = c₀ + Σ aₙ cos nφ + bₙ sin nφ`, `n = 1..N`.
///
/// Serialized as `[c0, [a1..aN], [b1..bN]]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "(f64, Vec<f64>, Vec<f64>)",
    into = "(f64, Vec<f64>, Vec<f64>)"
)]
pub struct StarBoundary {
    c0: f64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TryFrom<(f64, Vec<f64>, Vec<f64>)> for StarBoundary {
    type Error = Error;

    fn try_from((c0, cos, sin): (f64, Vec<f64>, Vec<f64>)) -> Result<Self> {
        StarBoundary::new(c0, cos, sin)
    }
}

impl From<StarBoundary> for (f64, Vec<f64>, Vec<f64>) {
    fn from(b: StarBoundary) -> Self {
        (b.c0, b.cos, b.sin)
    }
}

impl StarBoundary {
    /// Builds a boundary from its coefficients. The shorter coefficient list is
    /// zero-padded; `R` must stay positive on a dense sample of `[0, 2π)`.
    pub fn new(c0: f64, mut cos: Vec<f64>, mut sin: Vec<f64>) -> Result<Self> {
        let order = cos.len().max(sin.len());
        cos.resize(order, 0.0);
        sin.resize(order, 0.0);
        if !c0.is_finite() || cos.iter().chain(&sin).any(|c| !c.is_finite()) {
            return Err(Error::NotStarShaped("non-finite Fourier coefficient".into()));
        }
        let boundary = StarBoundary { c0, cos, sin };
        let min = (0..POSITIVITY_SAMPLES)
            .map(|i| boundary.radius(TAU * i as f64 / POSITIVITY_SAMPLES as f64))
            .fold(f64::INFINITY, f64::min);
        if min <= 0.0 {
            return Err(Error::NotStarShaped(format!(
                "boundary radius reaches {min:.3e} <= 0"
            )));
        }
        Ok(boundary)
    }

    pub fn circle(radius: f64) -> Result<Self> {
        StarBoundary::new(radius, vec![], vec![])
    }

    /// Projects a smooth positive 2π-periodic radius function onto its first
    /// `order` Fourier modes (discrete projection on `8·order + 64` nodes).
    pub fn from_radius_fn(order: usize, radius: impl Fn(f64) -> f64) -> Result<Self> {
        let nodes = 8 * order + 64;
        let samples: Vec<f64> = (0..nodes)
            .map(|i| radius(TAU * i as f64 / nodes as f64))
            .collect();
        let c0 = samples.iter().sum::<f64>() / nodes as f64;
        let mut cos = Vec::with_capacity(order);
        let mut sin = Vec::with_capacity(order);
        for n in 1..=order {
            let (mut a, mut b) = (0.0, 0.0);
            for (i, r) in samples.iter().enumerate() {
                let t = TAU * ((n * i) % nodes) as f64 / nodes as f64;
                a += r * t.cos();
                b += r * t.sin();
            }
            cos.push(2.0 * a / nodes as f64);
            sin.push(2.0 * b / nodes as f64);
        }
        StarBoundary::new(c0, cos, sin)
    }

    /// Ellipse with semi-axes `a` (along x) and `b` about its center, as a
    /// Fourier series of `ab / sqrt(b²cos²φ + a²sin²φ)` with `order` modes.
    pub fn ellipse(a: f64, b: f64, order: usize) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::InvalidDomain(format!(
                "ellipse semi-axes must be positive, got {a}, {b}"
            )));
        }
        let mut boundary = StarBoundary::from_radius_fn(order, |phi| {
            let (s, c) = phi.sin_cos();
            a * b / (b * b * c * c + a * a * s * s).sqrt()
        })?;
        // the exact series has no sine terms; drop projection round-off
        boundary.sin.iter_mut().for_each(|s| *s = 0.0);
        Ok(boundary)
    }

    pub fn order(&self) -> usize {
        self.cos.len()
    }

    pub fn constant(&self) -> f64 {
        self.c0
    }

    pub fn cos_coefficients(&self) -> &[f64] {
        &self.cos
    }

    pub fn sin_coefficients(&self) -> &[f64] {
        &self.sin
    }

    pub fn radius(&self, phi: f64) -> f64 {
        let mut r = self.c0;
        for (k, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let (s, c) = ((k + 1) as f64 * phi).sin_cos();
            r += a * c + b * s;
        }
        r
    }

    /// `R′(φ)`, differentiated term by term.
    pub fn derivative(&self, phi: f64) -> f64 {
        let mut d = 0.0;
        for (k, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let n = (k + 1) as f64;
            let (s, c) = (n * phi).sin_cos();
            d += n * (b * c - a * s);
        }
        d
    }

    pub fn second_derivative(&self, phi: f64) -> f64 {
        let mut d = 0.0;
        for (k, (a, b)) in self.cos.iter().zip(&self.sin).enumerate() {
            let n = (k + 1) as f64;
            let (s, c) = (n * phi).sin_cos();
            d -= n * n * (a * c + b * s);
        }
        d
    }

    fn quadrature_nodes(&self) -> usize {
        (8 * self.order()).max(256)
    }

    /// `½∮R(φ)²dφ` by the trapezoidal rule (exact for the trigonometric polynomial `R²`).
    pub fn area(&self) -> f64 {
        let nodes = 4 * self.order() + 64;
        let dphi = TAU / nodes as f64;
        0.5 * dphi
            * (0..nodes)
                .map(|i| self.radius(i as f64 * dphi).powi(2))
                .sum::<f64>()
    }

    /// `∮(R′/R)² dφ` on `max(8N, 256)` trapezoidal nodes.
    pub fn deformation_integral(&self) -> f64 {
        self.deformation_integral_with(self.quadrature_nodes())
    }

    pub fn deformation_integral_with(&self, nodes: usize) -> f64 {
        let dphi = TAU / nodes as f64;
        dphi * (0..nodes)
            .map(|i| {
                let phi = i as f64 * dphi;
                (self.derivative(phi) / self.radius(phi)).powi(2)
            })
            .sum::<f64>()
    }

    /// The boundary rotated by `alpha`, i.e. `φ ↦ R(φ − alpha)`.
    pub fn rotated(&self, alpha: f64) -> Self {
        let (cos, sin) = self
            .cos
            .iter()
            .zip(&self.sin)
            .enumerate()
            .map(|(k, (a, b))| {
                let (s, c) = ((k + 1) as f64 * alpha).sin_cos();
                (a * c - b * s, a * s + b * c)
            })
            .unzip();
        StarBoundary {
            c0: self.c0,
            cos,
            sin,
        }
    }

    pub fn scaled(&self, eta: f64) -> Self {
        StarBoundary {
            c0: self.c0 * eta,
            cos: self.cos.iter().map(|a| a * eta).collect(),
            sin: self.sin.iter().map(|b| b * eta).collect(),
        }
    }

    /// Convexity of the enclosed region, from the sign of the polar curvature
    /// numerator `R² + 2R′² − RR″` on a dense sample.
    pub fn is_convex(&self) -> bool {
        (0..POSITIVITY_SAMPLES).all(|i| {
            let phi = TAU * i as f64 / POSITIVITY_SAMPLES as f64;
            let (r, d, dd) = (
                self.radius(phi),
                self.derivative(phi),
                self.second_derivative(phi),
            );
            r * r + 2.0 * d * d - r * dd >= -1e-12 * r * r
        })
    }

    pub fn min_radius(&self) -> f64 {
        (0..POSITIVITY_SAMPLES)
            .map(|i| self.radius(TAU * i as f64 / POSITIVITY_SAMPLES as f64))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_radius(&self) -> f64 {
        (0..POSITIVITY_SAMPLES)
            .map(|i| self.radius(TAU * i as f64 / POSITIVITY_SAMPLES as f64))
            .fold(0.0, f64::max)
    }
}

/// A planar region. Lengths are dimensionless; `center` is the disk/annulus
/// center, the rectangle center, or the star center.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Domain {
    Disk {
        radius: f64,
        #[serde(default)]
        center: Point,
    },
    Annulus {
        inner: f64,
        outer: f64,
        #[serde(default)]
        center: Point,
    },
    Star {
        coefficients: StarBoundary,
        #[serde(default)]
        center: Point,
    },
    #[serde(rename = "rect")]
    Rectangle {
        width: f64,
        height: f64,
        #[serde(default)]
        center: Point,
    },
}

impl Domain {
    pub fn disk(radius: f64) -> Result<Self> {
        Domain::Disk {
            radius,
            center: Point::ORIGIN,
        }
        .validated()
    }

    pub fn annulus(inner: f64, outer: f64) -> Result<Self> {
        Domain::Annulus {
            inner,
            outer,
            center: Point::ORIGIN,
        }
        .validated()
    }

    pub fn rectangle(width: f64, height: f64) -> Result<Self> {
        Domain::Rectangle {
            width,
            height,
            center: Point::ORIGIN,
        }
        .validated()
    }

    pub fn star(boundary: StarBoundary) -> Self {
        Domain::Star {
            coefficients: boundary,
            center: Point::ORIGIN,
        }
    }

    /// Unit square `[0, 1]²`.
    pub fn unit_square() -> Self {
        Domain::Rectangle {
            width: 1.0,
            height: 1.0,
            center: Point::new(0.5, 0.5),
        }
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        Ok(Domain::star(StarBoundary::ellipse(a, b, 64)?))
    }

    pub fn with_center(mut self, c: Point) -> Self {
        match &mut self {
            Domain::Disk { center, .. }
            | Domain::Annulus { center, .. }
            | Domain::Star { center, .. }
            | Domain::Rectangle { center, .. } => *center = c,
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        let c = self.center();
        if !(c.x.is_finite() && c.y.is_finite()) {
            return Err(Error::InvalidDomain("non-finite center".into()));
        }
        match self {
            Domain::Disk { radius, .. } if !positive(*radius) => Err(Error::InvalidDomain(
                format!("disk radius must be positive, got {radius}"),
            )),
            Domain::Annulus { inner, outer, .. } if !(positive(*inner) && inner < outer) => {
                Err(Error::InvalidDomain(format!(
                    "annulus needs 0 < inner < outer, got {inner}, {outer}"
                )))
            }
            Domain::Rectangle { width, height, .. } if !(positive(*width) && positive(*height)) => {
                Err(Error::InvalidDomain(format!(
                    "rectangle sides must be positive, got {width} x {height}"
                )))
            }
            _ => Ok(()),
        }
    }

    fn validated(self) -> Result<Self> {
        self.validate()?;
        Ok(self)
    }

    /// Parses the JSON object form, e.g. `{"type": "disk", "radius": 1}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let domain: Domain = serde_json::from_str(text)?;
        domain.validated()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("domain serializes")
    }

    pub fn center(&self) -> Point {
        match self {
            Domain::Disk { center, .. }
            | Domain::Annulus { center, .. }
            | Domain::Star { center, .. }
            | Domain::Rectangle { center, .. } => *center,
        }
    }

    /// True iff `p` lies in the open set.
    pub fn contains(&self, p: Point) -> bool {
        let c = self.center();
        let (dx, dy) = (p.x - c.x, p.y - c.y);
        match self {
            Domain::Disk { radius, .. } => dx * dx + dy * dy < radius * radius,
            Domain::Annulus { inner, outer, .. } => {
                let r2 = dx * dx + dy * dy;
                inner * inner < r2 && r2 < outer * outer
            }
            Domain::Star { coefficients, .. } => {
                let r = dx.hypot(dy);
                r == 0.0 || r < coefficients.radius(dy.atan2(dx))
            }
            Domain::Rectangle { width, height, .. } => {
                dx.abs() < 0.5 * width && dy.abs() < 0.5 * height
            }
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            Domain::Disk { radius, .. } => PI * radius * radius,
            Domain::Annulus { inner, outer, .. } => PI * (outer * outer - inner * inner),
            Domain::Star { coefficients, .. } => coefficients.area(),
            Domain::Rectangle { width, height, .. } => width * height,
        }
    }

    pub fn bounding_box(&self) -> BoundingBox {
        let c = self.center();
        let (hx, hy) = match self {
            Domain::Disk { radius: r, .. } | Domain::Annulus { outer: r, .. } => (*r, *r),
            Domain::Rectangle { width, height, .. } => (0.5 * width, 0.5 * height),
            Domain::Star { coefficients, .. } => {
                let n = POSITIVITY_SAMPLES;
                let (mut hx, mut hy) = (0.0f64, 0.0f64);
                for i in 0..n {
                    let phi = TAU * i as f64 / n as f64;
                    let r = coefficients.radius(phi);
                    hx = hx.max((r * phi.cos()).abs());
                    hy = hy.max((r * phi.sin()).abs());
                }
                // sampling can miss the extreme by O(1/n²); pad slightly
                (hx * (1.0 + 1e-6), hy * (1.0 + 1e-6))
            }
        };
        BoundingBox::new(c.x - hx, c.x + hx, c.y - hy, c.y + hy)
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Domain::Disk { radius: r, .. } | Domain::Annulus { outer: r, .. } => 2.0 * r,
            Domain::Rectangle { width, height, .. } => width.hypot(*height),
            Domain::Star { .. } => {
                let pts = self.boundary_points(self.bounding_box().diameter() / 512.0);
                let mut d = 0.0f64;
                for (i, p) in pts.iter().enumerate() {
                    for q in &pts[i + 1..] {
                        d = d.max(p.dist(*q));
                    }
                }
                d
            }
        }
    }

    /// Rough inradius used to judge whether a grid spacing resolves the domain.
    pub fn inradius_estimate(&self) -> f64 {
        match self {
            Domain::Disk { radius, .. } => *radius,
            Domain::Annulus { inner, outer, .. } => 0.5 * (outer - inner),
            Domain::Rectangle { width, height, .. } => 0.5 * width.min(*height),
            Domain::Star { coefficients, .. } => coefficients.min_radius(),
        }
    }

    /// Spacing below which a staircase grid resolves the domain (inradius / 8).
    pub fn recommended_max_spacing(&self) -> f64 {
        self.inradius_estimate() / 8.0
    }

    /// Scales every length (center included) by `eta` about the origin.
    pub fn scaled(&self, eta: f64) -> Self {
        let c = self.center();
        let center = Point::new(c.x * eta, c.y * eta);
        match self {
            Domain::Disk { radius, .. } => Domain::Disk {
                radius: radius * eta,
                center,
            },
            Domain::Annulus { inner, outer, .. } => Domain::Annulus {
                inner: inner * eta,
                outer: outer * eta,
                center,
            },
            Domain::Star { coefficients, .. } => Domain::Star {
                coefficients: coefficients.scaled(eta),
                center,
            },
            Domain::Rectangle { width, height, .. } => Domain::Rectangle {
                width: width * eta,
                height: height * eta,
                center,
            },
        }
    }

    pub fn translated(&self, v: Point) -> Self {
        let c = self.center();
        self.clone().with_center(Point::new(c.x + v.x, c.y + v.y))
    }

    pub fn is_convex(&self) -> bool {
        match self {
            Domain::Disk { .. } | Domain::Rectangle { .. } => true,
            Domain::Annulus { .. } => false,
            Domain::Star { coefficients, .. } => coefficients.is_convex(),
        }
    }

    /// Star parametrization about the domain center, where one exists.
    pub fn star_boundary(&self) -> Result<StarBoundary> {
        match self {
            Domain::Disk { radius, .. } => StarBoundary::circle(*radius),
            Domain::Star { coefficients, .. } => Ok(coefficients.clone()),
            Domain::Annulus { .. } => Err(Error::NotStarShaped(
                "an annulus has no star parametrization".into(),
            )),
            Domain::Rectangle { .. } => Err(Error::NotStarShaped(
                "rectangle corners make R'(phi) discontinuous".into(),
            )),
        }
    }

    /// Points on ∂Ω with arclength spacing close to `spacing`.
    pub fn boundary_points(&self, spacing: f64) -> Vec<Point> {
        self.boundary_samples(spacing)
            .into_iter()
            .map(|(p, _)| p)
            .collect()
    }

    /// Boundary points paired with an inward unit direction.
    fn boundary_samples(&self, spacing: f64) -> Vec<(Point, Point)> {
        let c = self.center();
        let circle = |r: f64, inward: f64| -> Vec<(Point, Point)> {
            let n = ((TAU * r / spacing).ceil() as usize).max(8);
            (0..n)
                .map(|i| {
                    let (s, co) = (TAU * i as f64 / n as f64).sin_cos();
                    (
                        Point::new(c.x + r * co, c.y + r * s),
                        Point::new(-inward * co, -inward * s),
                    )
                })
                .collect()
        };
        match self {
            Domain::Disk { radius, .. } => circle(*radius, 1.0),
            Domain::Annulus { inner, outer, .. } => {
                let mut pts = circle(*outer, 1.0);
                pts.extend(circle(*inner, -1.0));
                pts
            }
            Domain::Star { coefficients, .. } => {
                let perimeter_est = TAU * coefficients.max_radius();
                let n = ((perimeter_est / spacing).ceil() as usize).max(16);
                (0..n)
                    .map(|i| {
                        let phi = TAU * i as f64 / n as f64;
                        let r = coefficients.radius(phi);
                        let (s, co) = phi.sin_cos();
                        (Point::new(c.x + r * co, c.y + r * s), Point::new(-co, -s))
                    })
                    .collect()
            }
            Domain::Rectangle { width, height, .. } => {
                let (hx, hy) = (0.5 * width, 0.5 * height);
                let nx = ((width / spacing).ceil() as usize).max(2);
                let ny = ((height / spacing).ceil() as usize).max(2);
                let mut pts = Vec::with_capacity(2 * (nx + ny));
                for i in 0..nx {
                    let x = -hx + width * i as f64 / nx as f64;
                    pts.push((Point::new(c.x + x, c.y - hy), Point::new(0.0, 1.0)));
                    pts.push((Point::new(c.x - x, c.y + hy), Point::new(0.0, -1.0)));
                }
                for j in 0..ny {
                    let y = -hy + height * j as f64 / ny as f64;
                    pts.push((Point::new(c.x + hx, c.y + y), Point::new(-1.0, 0.0)));
                    pts.push((Point::new(c.x - hx, c.y - y), Point::new(1.0, 0.0)));
                }
                pts
            }
        }
    }
}

/// A line `P` through `point` with unit `normal`; `Ω₁` is the part of the
/// domain on the side the normal points to.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfplaneCut {
    point: Point,
    normal: Point,
}

impl HalfplaneCut {
    pub fn new(point: Point, normal: Point) -> Result<Self> {
        if ((normal.norm()) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "cut normal must have unit length, |n| = {}",
                normal.norm()
            )));
        }
        Ok(HalfplaneCut { point, normal })
    }

    /// Vertical line `x = x_line`; `Ω₁` is the right part when `right` is set.
    pub fn vertical(x_line: f64, right: bool) -> Self {
        let s = if right { 1.0 } else { -1.0 };
        HalfplaneCut {
            point: Point::new(x_line, 0.0),
            normal: Point::new(s, 0.0),
        }
    }

    pub fn point(&self) -> Point {
        self.point
    }

    pub fn normal(&self) -> Point {
        self.normal
    }

    /// Positive on the `Ω₁` side.
    pub fn signed_distance(&self, p: Point) -> f64 {
        (p.x - self.point.x) * self.normal.x + (p.y - self.point.y) * self.normal.y
    }

    pub fn on_first_side(&self, p: Point) -> bool {
        self.signed_distance(p) > 0.0
    }

    /// Mirror image `p^P`.
    pub fn mirror(&self, p: Point) -> Point {
        let d = 2.0 * self.signed_distance(p);
        Point::new(p.x - d * self.normal.x, p.y - d * self.normal.y)
    }
}

/// Sampled certificate that the mirror image of `Ω₁` stays inside `Ω`.
///
/// Checks `samples` Monte-Carlo points of `Ω₁` (fixed seed) together with
/// boundary points of `Ω₁` pulled slightly inward. A `true` result is evidence,
/// not a proof.
pub fn mirror_subset_check(domain: &Domain, cut: &HalfplaneCut, samples: usize) -> Result<bool> {
    domain.validate()?;
    if samples < 1000 {
        return Err(Error::InvalidArgument(format!(
            "mirror check needs at least 1000 samples, got {samples}"
        )));
    }
    let bbox = domain.bounding_box();
    let sides: Vec<f64> = bbox
        .corners()
        .iter()
        .map(|&p| cut.signed_distance(p))
        .collect();
    if sides.iter().all(|&s| s > 0.0) || sides.iter().all(|&s| s < 0.0) {
        return Err(Error::DegenerateCut);
    }

    let scale = bbox.diameter();
    let mut found = 0usize;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d69_7272_6f72);
    for _ in 0..200 * samples {
        if found == samples {
            break;
        }
        let p = Point::new(
            rng.random_range(bbox.xmin..=bbox.xmax),
            rng.random_range(bbox.ymin..=bbox.ymax),
        );
        if domain.contains(p) && cut.on_first_side(p) {
            found += 1;
            if !domain.contains(cut.mirror(p)) {
                return Ok(false);
            }
        }
    }

    let eps = 1e-9 * scale;
    let mut boundary_hits = 0usize;
    for (p, inward) in domain.boundary_samples(scale / samples as f64) {
        let q = Point::new(p.x + eps * inward.x, p.y + eps * inward.y);
        if domain.contains(q) && cut.signed_distance(q) > eps {
            boundary_hits += 1;
            if !domain.contains(cut.mirror(q)) {
                return Ok(false);
            }
        }
    }
    if found == 0 && boundary_hits == 0 {
        return Err(Error::DegenerateCut);
    }
    Ok(true)
}
