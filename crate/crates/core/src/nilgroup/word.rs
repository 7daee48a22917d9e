use std::sync::Arc;

use super::context::GroupContext;
use super::element::GroupElement;
use super::series::Series;
use crate::error::{input, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    /// 0-based generator index.
    pub generator: usize,
    pub inverse: bool,
}

/// A word in the free generators and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    pub letters: Vec<Letter>,
}

impl FreeWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FreeWord { letters }
    }

    /// Signed 1-based notation: `[1, -2]` is `x1 x2^-1`.
    pub fn from_signed(letters: &[i32]) -> Self {
        FreeWord {
            letters: letters
                .iter()
                .map(|&l| {
                    assert!(l != 0, "letters are nonzero");
                    Letter {
                        generator: l.unsigned_abs() as usize - 1,
                        inverse: l < 0,
                    }
                })
                .collect(),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord { letters }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator,
                    inverse: !l.inverse,
                })
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// Normal form of the image of `word` in the free nilpotent group of `ctx`.
pub fn collect<T: Scalar>(ctx: &Arc<GroupContext<T>>, word: &FreeWord) -> Result<GroupElement<T>> {
    let mut acc = Series::one(&ctx.layout);
    for l in &word.letters {
        if l.generator >= ctx.rank() {
            return input(format!(
                "generator x{} out of range 1..={}",
                l.generator + 1,
                ctx.rank()
            ));
        }
        acc = acc.mul(&ctx.generator_series[l.generator][l.inverse as usize], &ctx.layout);
    }
    Ok(GroupElement::from_exponents_unchecked(ctx, ctx.coordinates(acc)))
}
