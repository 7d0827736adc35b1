//! Finite test-function families.
//!
//! "For all f in C_c" is approximated by a dyadic family of hat functions
//! on a bounded grid; the bounded-continuous side adds sign-like ramps and
//! the constant function. Family parameters are configuration: depth and
//! extent control how finely the family separates behaviours.

use crate::scalar::Scalar;
use crate::testfn::{hat, sign_ramp, FunctionClass, TestFunction};

/// A named member of a test family.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub name: String,
    pub f: TestFunction,
}

/// A finite family of test functions with construction parameters.
#[derive(Clone, Debug)]
pub struct TestFamily {
    pub members: Vec<FamilyMember>,
    pub extent: i64,
    pub depth: u32,
}

impl TestFamily {
    /// Hats at every dyadic level `0..=depth` centred on the level's grid
    /// points inside `[-extent, extent]`, plus sign ramps at the integer
    /// grid points and the constant one function.
    pub fn dyadic(extent: i64, depth: u32) -> Self {
        assert!(extent >= 1);
        let mut members = Vec::new();
        for level in 0..=depth {
            let h = Scalar::two_pow(-(level as i64));
            let steps = extent * (1i64 << level);
            for k in -steps..=steps {
                let c = Scalar::from_int(k) * &h;
                members.push(FamilyMember {
                    name: format!("hat[c={},h={}]", c, h),
                    f: hat(&c, &h),
                });
            }
        }
        for k in -extent..=extent {
            let c = Scalar::from_int(k);
            members.push(FamilyMember {
                name: format!("sign[c={}]", c),
                f: sign_ramp(&c, &Scalar::one()),
            });
        }
        members.push(FamilyMember {
            name: "const[1]".to_string(),
            f: TestFunction::constant(Scalar::one(), FunctionClass::Cb).unwrap(),
        });
        TestFamily { members, extent, depth }
    }

    pub fn default_family() -> Self {
        TestFamily::dyadic(2, 2)
    }

    /// The compactly supported members.
    pub fn cc_members(&self) -> impl Iterator<Item = &FamilyMember> {
        self.members
            .iter()
            .filter(|m| m.f.class() == FunctionClass::Cc)
    }

    /// All members (every member is bounded continuous).
    pub fn cb_members(&self) -> impl Iterator<Item = &FamilyMember> {
        self.members.iter()
    }

    /// Members extending continuously to the one-point compactification:
    /// equal tails, i.e. a compactly supported part plus a constant.
    pub fn equal_tail_members(&self) -> impl Iterator<Item = &FamilyMember> {
        self.members.iter().filter(|m| m.f.has_equal_tails())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_family_composition() {
        let fam = TestFamily::default_family();
        // levels 0,1,2 with extent 2: 5 + 9 + 17 hats, 5 ramps, 1 constant
        assert_eq!(fam.members.len(), 5 + 9 + 17 + 5 + 1);
        assert_eq!(fam.cc_members().count(), 31);
        assert_eq!(fam.cb_members().count(), 37);
        assert_eq!(fam.equal_tail_members().count(), 32);
    }

    #[test]
    fn names_are_unique() {
        let fam = TestFamily::default_family();
        let mut names: Vec<&str> = fam.members.iter().map(|m| m.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), fam.members.len());
    }
}
