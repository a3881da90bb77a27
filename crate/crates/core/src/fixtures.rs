//! Worked systems, bundled as field descriptions.
//!
//! Every fixture parses with [`crate::dsl::parse_field`], and every declared
//! symmetry commutes exactly with the field for the default parameter values.

use crate::algebra::Polynomial;
use crate::dsl::{parse_field, FieldSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub text: &'static str,
}

impl Fixture {
    pub fn spec(&self) -> FieldSpec {
        parse_field(self.text).unwrap_or_else(|e| panic!("fixture {} does not parse: {e}", self.name))
    }
}

/// Linearizable planar field with a Poincaré-domain spectrum {1, 3}.
pub const EXAMPLE1: Fixture = Fixture {
    name: "example1",
    summary: "x' = x, y' = 3y - x^2; symmetry algebra spanned by Z1, Z2",
    text: "\
vars x, y;
dx = x;
dy = 3*y - x^2;
# identity linear part: Y = Z1 + Z2
symmetry Y { dx = x; dy = y + x^2; }
symmetry Z1 { dx = x; dy = 2*x^2; }
symmetry Z2 { dx = 0; dy = y - x^2; }
",
};

/// Spectrum {1, -2}: infinitely many resonances, all coefficients cancel.
pub const EXAMPLE2: Fixture = Fixture {
    name: "example2",
    summary: "x' = x + x^4 y, y' = -2y - x^3 y^2 with a symmetry of identity linear part",
    text: "\
vars x, y;
dx = x + x^4*y;
dy = -2*y - x^3*y^2;
symmetry Y { dx = x + 4*x^4*y; dy = y - 4*x^3*y^2; }
",
};

/// Three-dimensional field with a linear symmetry whose kernel meets the
/// field's kernel trivially.
pub const EXAMPLE3: Fixture = Fixture {
    name: "example3",
    summary: "spectrum {1, -3, 9} with the linear symmetry diag(1, -2, 4)",
    text: "\
params a1 = 1, a2 = 1, a3 = 1, b1 = 1, b2 = 1, b3 = 1;
vars x, y, z;
dx = x + a1*x^3*y + b1*x*y^2*z;
dy = -3*y + a2*x^2*y^2 + b2*y^3*z;
# the y^2 z^2 monomial deliberately carries both a3 and b3;
# it commutes with Y for any weight
dz = 9*z + a3*y^2*z^2 + b3*y^2*z^2;
symmetry Y { dx = x; dy = -2*y; dz = 4*z; }
",
};

/// A rotation and its non-commuting family of identity-linear-part
/// symmetries `f(r^2) X + (1 + h(r^2)) Z`, here with f = r^2, h = 0.
pub const EXAMPLE4: Fixture = Fixture {
    name: "example4",
    summary: "rotation x d/dy - y d/dx with symmetries Z and Y_{r^2,0}",
    text: "\
vars x, y;
dx = -y;
dy = x;
symmetry Z { dx = x; dy = y; }
symmetry Yfh { dx = -(x^2 + y^2)*y + x; dy = (x^2 + y^2)*x + y; }
",
};

/// The field obtained from a linear field with a rotation-plus-scaling
/// spectrum through a degree-6 polynomial change of coordinates.
pub const EXAMPLE5: Fixture = Fixture {
    name: "example5",
    summary: "a linear field in disguise; linearized through its symmetry of identity linear part",
    text: "\
params alpha = 1/2, beta = 2;
vars x, y, z;
dx = (alpha*x - y) - x^2 - (3*x*y^2 + 2*alpha*y^3) - 6*(x^3*y + alpha*x^2*y^2)
   - 3*(x^5 + 2*alpha*x^4*y + y^5) - (2*alpha*x^6 + 15*x^2*y^4) - 30*(x^4*y^3 + x^6*y^2)
   - 3*(x^10 + 5*x^8*y);
dy = (x + alpha*y) - (alpha*x^2 - 2*x*y) + (2*x^3 + y^3) + (9*x^2*y^2 + 4*alpha*x*y^3)
   + (15*x^4*y + 12*alpha*x^3*y^2) + (7*x^6 + 12*alpha*x^5*y + 6*x*y^5)
   + (4*alpha*x^7 + 30*x^3*y^4) + 60*x^5*y^3 + 60*x^7*y^2 + 6*(5*x^9*y + x^11);
dz = beta*z + (2*x*y + (2*alpha - beta)*y^2)
   + (2*x^3 + 2*(2*alpha - beta)*x^2*y + 3*x*y^2 + alpha*y^3 + (2*alpha - beta)*y^3)
   + ((2*alpha - beta)*x^4 - 3*alpha*x^2*y^2 + 6*x*y^3 + 2*y^4)
   + (6*x^3*y^2 + 8*x^2*y^3 + 3*y^5) + (12*x^4*y^2 + 27*x^2*y^4 + 12*alpha*x*y^5)
   + 9*(5*x^4*y^3 + 4*alpha*x^3*y^4)
   + (2*x^8 + 8*x^6*y + 21*x^6*y^2 + 36*alpha*x^5*y^3 + 18*x*y^7)
   + (12*alpha*x^7*y^2 + 90*x^3*y^6)
   + 180*x^5*y^5 + 180*x^7*y^4 + 90*x^9*y^3 + 18*x^11*y^2;
symmetry Y {
  dx = x - 2*y^3 - 6*x^2*y^2 - 6*x^4*y - 2*x^6;
  dy = y - x^2 + 4*x*y^3 + 12*x^3*y^2 + 4*x^7 + 12*x^5*y;
  dz = z + y^2 + 2*x^2*y + 2*y^3 + x^4 - 3*x^2*y^2 + 12*x*y^5
     + 36*x^3*y^4 + 36*x^5*y^3 + 12*x^7*y^2;
}
",
};

/// The linear field behind [`EXAMPLE5`], in its linearizing coordinates.
pub const EXAMPLE5_LINEAR: Fixture = Fixture {
    name: "example5-linear",
    summary: "the linear field [[alpha,-1,0],[1,alpha,0],[0,0,beta]] y",
    text: "\
params alpha = 1/2, beta = 2;
vars x, y, z;
dx = alpha*x - y;
dy = x + alpha*y;
dz = beta*z;
symmetry S { dx = x; dy = y; dz = z; }
",
};

/// Oscillator with identity linear part and a limit cycle at r = 1.
pub const OSCILLATOR: Fixture = Fixture {
    name: "oscillator",
    summary: "x' = -r^2 y - (r^2 - 1) x, y' = r^2 x - (r^2 - 1) y; limit cycle r = 1",
    text: "\
vars x, y;
dx = -(x^2 + y^2)*y - (x^2 + y^2 - 1)*x;
dy = (x^2 + y^2)*x - (x^2 + y^2 - 1)*y;
",
};

/// One-dimensional field proportional to, but not conjugate to, the dilation.
pub const THIRD_DILATION: Fixture = Fixture {
    name: "third-dilation",
    summary: "x' = x/3",
    text: "\
vars x;
dx = 1/3*x;
",
};

/// A resonant quadratic term that no change of coordinates removes.
pub const RESONANT: Fixture = Fixture {
    name: "resonant",
    summary: "x' = x, y' = 2y + x^2; the x^2 term is resonant",
    text: "\
vars x, y;
dx = x;
dy = 2*y + x^2;
",
};

pub const ALL: [Fixture; 9] = [
    EXAMPLE1,
    EXAMPLE2,
    EXAMPLE3,
    EXAMPLE4,
    EXAMPLE5,
    EXAMPLE5_LINEAR,
    OSCILLATOR,
    THIRD_DILATION,
    RESONANT,
];

pub fn by_name(name: &str) -> Option<Fixture> {
    ALL.iter().copied().find(|f| f.name == name)
}

/// The change of coordinates taking [`EXAMPLE5`] coordinates `x` to the
/// linearizing coordinates `y` of [`EXAMPLE5_LINEAR`]:
/// `y1 = x1 + (x1^2 + x2)^3`, `y2 = x2 + x1^2`, `y3 = x3 - x2^3 - (x1^2 + x2)^2`.
pub fn example5_map() -> Vec<Polynomial> {
    let spec = parse_field(
        "vars x, y, z; dx = x + (x^2 + y)^3; dy = y + x^2; dz = z - y^3 - (x^2 + y)^2;",
    )
    .expect("map text parses");
    spec.instantiate(&Default::default(), 6)
        .expect("map instantiates")
        .into_components()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lie_bracket;
    use crate::dsl::Bindings;

    #[test]
    fn all_fixtures_parse_and_commute() {
        for fx in ALL {
            let spec = fx.spec();
            let f = spec.instantiate(&Bindings::new(), 12).unwrap();
            for name in spec.symmetry_names() {
                let y = spec.symmetry(name, &Bindings::new(), 12).unwrap();
                assert!(lie_bracket(&f, &y).unwrap().is_zero(), "{} / {name}", fx.name);
            }
        }
    }

    #[test]
    fn names_are_unique() {
        for (i, a) in ALL.iter().enumerate() {
            assert!(ALL[i + 1..].iter().all(|b| b.name != a.name));
            assert_eq!(by_name(a.name), Some(*a));
        }
    }

    #[test]
    fn map_is_near_identity() {
        let m = example5_map();
        assert_eq!(m.len(), 3);
        assert!(crate::algebra::check_near_identity(&m).is_ok());
    }
}
