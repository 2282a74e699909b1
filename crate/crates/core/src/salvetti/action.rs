use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::face_ops::FaceOps;
use crate::models::{FaceData, SignVector};

/// `G∘C` for a regular model: the separated face action when available,
/// lift composition at a common lower face otherwise.
pub(crate) struct Action<'a> {
    fd: &'a FaceData,
    table: Option<(Vec<Vec<usize>>, HashMap<usize, usize>)>,
}

impl<'a> Action<'a> {
    pub(crate) fn new(fd: &'a FaceData, strategy: Strategy) -> Result<Self> {
        if !fd.regular {
            return Err(Error::Restriction("the Salvetti poset needs a regular face poset".into()));
        }
        let table = if fd.sides.is_some() {
            let t = FaceOps::new(fd)?.action_table(strategy)?;
            let pos = fd.chambers().iter().enumerate().map(|(i, &c)| (c, i)).collect();
            Some((t, pos))
        } else if fd.lifts.is_some() {
            None
        } else {
            return Err(Error::Restriction("no face action for this model".into()));
        };
        Ok(Action { fd, table })
    }

    /// `g∘c`, where lift composition is carried out above `base <= g`.
    pub(crate) fn act(&self, base: usize, g: usize, c: usize) -> Result<usize> {
        let fd = self.fd;
        if let Some((t, pos)) = &self.table {
            return Ok(t[g][pos[&c]]);
        }
        if fd.is_chamber(g) {
            return Ok(g);
        }
        if !fd.leq(base, g) || !fd.leq(base, c) {
            return Err(Error::Restriction(format!(
                "face action of {} on {} is undefined for a non-separating model",
                fd.faces[g].label, fd.faces[c].label
            )));
        }
        let lifts = fd.lifts.as_ref().unwrap();
        let composed = self.lift_at(base, g).compose(self.lift_at(base, c));
        let (d, _) = lifts.identify(&composed).ok_or_else(|| {
            Error::WindowInsufficient(format!("composite {composed} lies outside the validated window"))
        })?;
        if !fd.is_chamber(d) || !fd.leq(g, d) {
            return Err(Error::Consistency(format!(
                "lift composite of {} and {} is not a chamber above {}",
                fd.faces[g].label, fd.faces[c].label, fd.faces[g].label
            )));
        }
        Ok(d)
    }

    fn lift_at(&self, base: usize, x: usize) -> &SignVector {
        let lifts = self.fd.lifts.as_ref().unwrap();
        if x == base {
            &lifts.canonical[base]
        } else {
            lifts.target_lift(self.fd, self.fd.category.hom(base, x)[0])
        }
    }
}
