//! Rotationally symmetric subsets of the plane centred on the real axis.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative tolerance for snapping a distance onto a circle.
pub const BOUNDARY_RTOL: f64 = 1e-12;

/// Where a distance sits relative to a radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialPosition {
    Inside,
    OnCircle,
    Outside,
}

/// Compares `distance` with `radius` up to [`BOUNDARY_RTOL`].
pub fn radial_position(distance: f64, radius: f64) -> RadialPosition {
    let band = BOUNDARY_RTOL * radius;
    if (distance - radius).abs() <= band {
        RadialPosition::OnCircle
    } else if distance < radius {
        RadialPosition::Inside
    } else {
        RadialPosition::Outside
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: f64,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: f64, radius: f64) -> Self {
        assert!(radius >= 0.0, "disk radius must be non-negative");
        Disk { center, radius }
    }

    pub fn position(&self, z: Complex64) -> RadialPosition {
        radial_position((z - self.center).norm(), self.radius)
    }

    pub fn closed(&self) -> Region {
        Region::closed_disk(self.center, self.radius)
    }

    pub fn open(&self) -> Region {
        Region::open_disk(self.center, self.radius)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Empty,
    Singleton(f64),
    OpenDisk {
        center: f64,
        radius: f64,
    },
    ClosedDisk {
        center: f64,
        radius: f64,
    },
    Circle {
        center: f64,
        radius: f64,
    },
    /// `inner < |z - center| < outer`, each circle included when flagged.
    Annulus {
        center: f64,
        inner: f64,
        inner_closed: bool,
        outer: f64,
        outer_closed: bool,
    },
    WholePlane,
}

impl Region {
    pub fn closed_disk(center: f64, radius: f64) -> Region {
        if radius == 0.0 {
            Region::Singleton(center)
        } else {
            Region::ClosedDisk { center, radius }
        }
    }

    pub fn open_disk(center: f64, radius: f64) -> Region {
        if radius == 0.0 {
            Region::Empty
        } else {
            Region::OpenDisk { center, radius }
        }
    }

    pub fn circle(center: f64, radius: f64) -> Region {
        if radius == 0.0 {
            Region::Singleton(center)
        } else {
            Region::Circle { center, radius }
        }
    }

    /// Normalising constructor for `{inner (<|<=) |z - c| (<|<=) outer}`.
    pub fn annulus(center: f64, inner: f64, inner_closed: bool, outer: f64, outer_closed: bool) -> Region {
        match inner.partial_cmp(&outer) {
            Some(Ordering::Greater) | None => Region::Empty,
            Some(Ordering::Equal) => {
                if inner_closed && outer_closed {
                    Region::circle(center, inner)
                } else {
                    Region::Empty
                }
            }
            Some(Ordering::Less) if inner == 0.0 && inner_closed => {
                if outer_closed {
                    Region::closed_disk(center, outer)
                } else {
                    Region::open_disk(center, outer)
                }
            }
            Some(Ordering::Less) => Region::Annulus {
                center,
                inner,
                inner_closed,
                outer,
                outer_closed,
            },
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        use RadialPosition::*;
        let dist = |c: f64| (z - c).norm();
        match *self {
            Region::Empty => false,
            Region::WholePlane => true,
            Region::Singleton(c) => radial_position(dist(c), 0.0) == OnCircle,
            Region::OpenDisk { center, radius } => radial_position(dist(center), radius) == Inside,
            Region::ClosedDisk { center, radius } => radial_position(dist(center), radius) != Outside,
            Region::Circle { center, radius } => radial_position(dist(center), radius) == OnCircle,
            Region::Annulus {
                center,
                inner,
                inner_closed,
                outer,
                outer_closed,
            } => {
                let d = dist(center);
                let above_inner = match radial_position(d, inner) {
                    Outside => true,
                    OnCircle => inner_closed,
                    Inside => false,
                };
                let below_outer = match radial_position(d, outer) {
                    Inside => true,
                    OnCircle => outer_closed,
                    Outside => false,
                };
                above_inner && below_outer
            }
        }
    }

    /// Centre and outer radius of a bounded non-empty region.
    fn hull(&self) -> Option<(f64, f64, bool)> {
        match *self {
            Region::Singleton(c) => Some((c, 0.0, true)),
            Region::OpenDisk { center, radius } => Some((center, radius, false)),
            Region::ClosedDisk { center, radius } | Region::Circle { center, radius } => Some((center, radius, true)),
            Region::Annulus {
                center,
                outer,
                outer_closed,
                ..
            } => Some((center, outer, outer_closed)),
            Region::Empty | Region::WholePlane => None,
        }
    }

    /// Inclusion test; `None` when the shapes are not comparable by a disk
    /// hull argument (e.g. a disk inside an annulus).
    pub fn is_subset_of(&self, other: &Region) -> Option<bool> {
        match (self, other) {
            (Region::Empty, _) | (_, Region::WholePlane) => Some(true),
            (Region::WholePlane, _) => Some(false),
            (_, Region::Empty) => Some(false),
            (Region::Singleton(c), o) => Some(o.contains(Complex64::new(*c, 0.0))),
            (_, Region::OpenDisk { .. } | Region::ClosedDisk { .. }) => {
                let (c, rho, closed) = self.hull()?;
                let (c2, rho2, closed2) = other.hull()?;
                let reach = (c - c2).abs() + rho;
                Some(match radial_position(reach, rho2) {
                    RadialPosition::Inside => true,
                    RadialPosition::OnCircle => closed2 || !closed,
                    RadialPosition::Outside => false,
                })
            }
            _ => None,
        }
    }
}
