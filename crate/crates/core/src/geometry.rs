//! Planar geometry shared by the kinematics, constraint functions and the simulator.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

/// Wraps an angle into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_angle(a: f64) -> Self {
        Self::new(a.cos(), a.sin())
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotate(self, a: f64) -> Self {
        let (s, c) = a.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// A rigid planar transform: position plus heading.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Pose2 {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl Pose2 {
    pub const fn new(x: f64, y: f64, theta: f64) -> Self {
        Self { x, y, theta }
    }

    pub fn position(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    /// `self ∘ other`: `other` expressed in the frame of `self`, mapped to the parent frame.
    pub fn compose(&self, other: &Pose2) -> Pose2 {
        let p = self.position() + other.position().rotate(self.theta);
        Pose2::new(p.x, p.y, wrap_angle(self.theta + other.theta))
    }

    pub fn inverse(&self) -> Pose2 {
        let p = (Vec2::ZERO - self.position()).rotate(-self.theta);
        Pose2::new(p.x, p.y, wrap_angle(-self.theta))
    }

    /// Planar pose difference `self ⊖ other`: position delta and wrapped heading delta.
    pub fn diff(&self, other: &Pose2) -> (Vec2, f64) {
        (
            self.position() - other.position(),
            wrap_angle(self.theta - other.theta),
        )
    }

    pub fn translated(&self, d: Vec2) -> Pose2 {
        Pose2::new(self.x + d.x, self.y + d.y, self.theta)
    }
}

/// Axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min: Vec2,
    pub max: Vec2,
}

impl Rect {
    pub fn new(min: Vec2, max: Vec2) -> Self {
        Self { min, max }
    }

    pub fn centered(center: Vec2, width: f64, height: f64) -> Self {
        let h = Vec2::new(width / 2.0, height / 2.0);
        Self::new(center - h, center + h)
    }

    pub fn center(&self) -> Vec2 {
        (self.min + self.max) * 0.5
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn translated(&self, d: Vec2) -> Rect {
        Rect::new(self.min + d, self.max + d)
    }

    /// Shrinks every side by `m`; collapses to the center line when `m` exceeds a half-extent.
    pub fn inset(&self, m: f64) -> Rect {
        let c = self.center();
        let hx = (self.width() / 2.0 - m).max(0.0);
        let hy = (self.height() / 2.0 - m).max(0.0);
        Rect::new(Vec2::new(c.x - hx, c.y - hy), Vec2::new(c.x + hx, c.y + hy))
    }

    /// Euclidean distance from a point to the rectangle; zero inside.
    pub fn distance_to_point(&self, p: Vec2) -> f64 {
        let dx = (self.min.x - p.x).max(0.0).max(p.x - self.max.x);
        let dy = (self.min.y - p.y).max(0.0).max(p.y - self.max.y);
        dx.hypot(dy)
    }

    /// How far a disc of radius `r` centered at `c` sticks out of the rectangle; zero when inside.
    pub fn disc_overhang(&self, c: Vec2, r: f64) -> f64 {
        let out = (self.min.x - (c.x - r))
            .max((c.x + r) - self.max.x)
            .max(self.min.y - (c.y - r))
            .max((c.y + r) - self.max.y);
        out.max(0.0)
    }

    pub fn intersects_segment(&self, a: Vec2, b: Vec2) -> bool {
        // Liang-Barsky clipping
        let d = b - a;
        let mut t0 = 0.0_f64;
        let mut t1 = 1.0_f64;
        let checks = [
            (-d.x, a.x - self.min.x),
            (d.x, self.max.x - a.x),
            (-d.y, a.y - self.min.y),
            (d.y, self.max.y - a.y),
        ];
        for (p, q) in checks {
            if p == 0.0 {
                if q < 0.0 {
                    return false;
                }
            } else {
                let t = q / p;
                if p < 0.0 {
                    t0 = t0.max(t);
                } else {
                    t1 = t1.min(t);
                }
                if t0 > t1 {
                    return false;
                }
            }
        }
        true
    }

    /// Distance between a segment and the rectangle; zero when they touch.
    pub fn distance_to_segment(&self, a: Vec2, b: Vec2) -> f64 {
        if self.intersects_segment(a, b) {
            return 0.0;
        }
        let corners = [
            self.min,
            Vec2::new(self.max.x, self.min.y),
            self.max,
            Vec2::new(self.min.x, self.max.y),
        ];
        let mut d = self.distance_to_point(a).min(self.distance_to_point(b));
        for c in corners {
            d = d.min(point_segment_distance(c, a, b));
        }
        d
    }
}

pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_keeps_range() {
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(-PI / 2.0) + PI / 2.0).abs() < 1e-12);
        assert!((wrap_angle(2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn compose_inverse_is_identity() {
        let a = Pose2::new(1.0, -2.0, 0.7);
        let b = Pose2::new(0.3, 0.4, -2.0);
        let c = a.compose(&b);
        let back = a.inverse().compose(&c);
        let (dp, da) = back.diff(&b);
        assert!(dp.norm() < 1e-12 && da.abs() < 1e-12);
    }

    #[test]
    fn segment_rect_distance() {
        let r = Rect::new(Vec2::new(0.0, 0.0), Vec2::new(1.0, 1.0));
        assert_eq!(
            r.distance_to_segment(Vec2::new(-1.0, 0.5), Vec2::new(2.0, 0.5)),
            0.0
        );
        let d = r.distance_to_segment(Vec2::new(-1.0, 2.0), Vec2::new(2.0, 2.0));
        assert!((d - 1.0).abs() < 1e-12);
        let d = r.distance_to_segment(Vec2::new(2.0, 2.0), Vec2::new(3.0, 3.0));
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn overhang() {
        let r = Rect::new(Vec2::new(0.0, 0.0), Vec2::new(1.0, 1.0));
        assert_eq!(r.disc_overhang(Vec2::new(0.5, 0.5), 0.1), 0.0);
        assert!((r.disc_overhang(Vec2::new(0.95, 0.5), 0.1) - 0.05).abs() < 1e-12);
    }
}
