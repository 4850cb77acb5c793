//! Block products `M ⧠ N`: pairs `(m, f)` with `f : M × M → N`.
//!
//! `f(x, y)` is the `N`-value contributed by a factor sitting between a left
//! context `x` and a right context `y`. The left action is
//! `(m ∗ f)(x, y) = f(x·m, y)`, the right action `(f ∗ m)(x, y) = f(x, m·y)`
//! and `+` is the pointwise product of `N`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{Elem, FiniteCircleAlgebra, ShuffleOracle, ShuffleTable};

use super::{element_budget, Closure, ConstructionError};

/// An element of `M ⧠ N`. `f` is row-major over `M × M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockElem {
    pub m: Elem,
    pub f: Vec<Elem>,
}

/// How the shuffle of the block product is provided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockShuffle {
    /// `κ{(mᵢ, fᵢ)} = (η, (x, y) ↦ κ_N{fᵢ(x·η, η·y)})` with `η = κ_M{mᵢ}`,
    /// undefined when the value falls outside the carrier.
    Contextual,
    /// Every shuffle other than `κ{1}` is undefined.
    Undefined,
}

#[derive(Clone, Copy, Debug)]
pub struct BlockOptions {
    pub element_budget: usize,
    pub shuffle: BlockShuffle,
    /// Close the generated carrier under contextual shuffles as well.
    pub shuffle_closure: bool,
    pub subset_budget: u64,
}

impl Default for BlockOptions {
    fn default() -> Self {
        BlockOptions {
            element_budget: element_budget(),
            shuffle: BlockShuffle::Contextual,
            shuffle_closure: false,
            subset_budget: 1 << 16,
        }
    }
}

/// The operations of `M ⧠ N` on explicit pairs.
#[derive(Clone, Debug)]
pub(crate) struct BlockOps {
    pub m: Arc<FiniteCircleAlgebra>,
    pub n: Arc<FiniteCircleAlgebra>,
}

impl BlockOps {
    fn width(&self) -> usize {
        self.m.len()
    }

    fn at(&self, f: &[Elem], x: Elem, y: Elem) -> Elem {
        f[x * self.width() + y]
    }

    fn build(&self, g: impl Fn(Elem, Elem) -> Elem) -> Vec<Elem> {
        let w = self.width();
        (0..w * w).map(|i| g(i / w, i % w)).collect()
    }

    pub fn unit(&self) -> BlockElem {
        let w = self.width();
        BlockElem {
            m: self.m.unit(),
            f: vec![self.n.unit(); w * w],
        }
    }

    pub fn mul(&self, a: &BlockElem, b: &BlockElem) -> BlockElem {
        let (m, n) = (&self.m, &self.n);
        BlockElem {
            m: m.mul(a.m, b.m),
            f: self.build(|x, y| n.mul(self.at(&a.f, x, m.mul(b.m, y)), self.at(&b.f, m.mul(x, a.m), y))),
        }
    }

    pub fn idempotent_power(&self, a: &BlockElem) -> BlockElem {
        let mut p = a.clone();
        loop {
            let sq = self.mul(&p, &p);
            if sq == p {
                return p;
            }
            p = self.mul(&p, a);
        }
    }

    pub fn omega(&self, a: &BlockElem) -> BlockElem {
        let e = self.idempotent_power(a);
        let (m, n) = (&self.m, &self.n);
        let we = m.omega(e.m);
        BlockElem {
            m: we,
            f: self.build(|x, y| {
                let first = self.at(&e.f, x, m.mul(we, y));
                let rest = self.at(&e.f, m.mul(x, e.m), m.mul(we, y));
                n.mul(first, n.omega(rest))
            }),
        }
    }

    pub fn omegastar(&self, a: &BlockElem) -> BlockElem {
        let e = self.idempotent_power(a);
        let (m, n) = (&self.m, &self.n);
        let se = m.omegastar(e.m);
        BlockElem {
            m: se,
            f: self.build(|x, y| {
                let rest = self.at(&e.f, m.mul(x, se), m.mul(e.m, y));
                let last = self.at(&e.f, m.mul(x, se), y);
                n.mul(n.omegastar(rest), last)
            }),
        }
    }

    pub fn shuffle(&self, items: &[&BlockElem]) -> Option<BlockElem> {
        let (m, n) = (&self.m, &self.n);
        let ms: Vec<Elem> = items.iter().map(|a| a.m).collect();
        let eta = m.shuffle(&ms)?;
        let mut f = Vec::with_capacity(self.width() * self.width());
        for x in 0..self.width() {
            for y in 0..self.width() {
                let vals: Vec<Elem> = items
                    .iter()
                    .map(|a| self.at(&a.f, m.mul(x, eta), m.mul(eta, y)))
                    .collect();
                f.push(n.shuffle(&vals)?);
            }
        }
        Some(BlockElem { m: eta, f })
    }
}

#[derive(Debug)]
struct BlockOracle {
    ops: BlockOps,
    elements: Arc<Vec<BlockElem>>,
    index: Arc<HashMap<BlockElem, Elem>>,
}

impl ShuffleOracle for BlockOracle {
    fn shuffle(&self, subset: &[Elem]) -> Option<Elem> {
        let items: Vec<&BlockElem> = subset.iter().map(|&i| &self.elements[i]).collect();
        let v = self.ops.shuffle(&items)?;
        self.index.get(&v).copied()
    }
}

/// A block product carrier with its decoded elements.
#[derive(Clone, Debug)]
pub struct BlockProduct {
    pub algebra: FiniteCircleAlgebra,
    pub left: FiniteCircleAlgebra,
    pub right: FiniteCircleAlgebra,
    elements: Arc<Vec<BlockElem>>,
    index: Arc<HashMap<BlockElem, Elem>>,
}

impl BlockProduct {
    pub fn decode(&self, x: Elem) -> &BlockElem {
        &self.elements[x]
    }

    pub fn find(&self, e: &BlockElem) -> Option<Elem> {
        self.index.get(e).copied()
    }

    pub fn elements(&self) -> &[BlockElem] {
        &self.elements
    }

    /// `f(x, y)` of element `a`.
    pub fn component(&self, a: Elem, x: Elem, y: Elem) -> Elem {
        self.elements[a].f[x * self.left.len() + y]
    }

    /// Product in `M ⧠ N` of two pairs that need not lie in this carrier.
    pub fn ops_mul(&self, a: &BlockElem, b: &BlockElem) -> BlockElem {
        self.ops().mul(a, b)
    }

    fn ops(&self) -> BlockOps {
        BlockOps {
            m: Arc::new(self.left.clone()),
            n: Arc::new(self.right.clone()),
        }
    }
}

pub fn block_product(
    m: &FiniteCircleAlgebra,
    n: &FiniteCircleAlgebra,
    gens: Option<&[BlockElem]>,
) -> Result<BlockProduct, ConstructionError> {
    block_product_with(m, n, gens, &BlockOptions::default())
}

/// `M ⧠ N`: the full carrier when `gens` is `None`, otherwise the part
/// generated from `gens` under `·`, `ω`, `ω*`.
pub fn block_product_with(
    m: &FiniteCircleAlgebra,
    n: &FiniteCircleAlgebra,
    gens: Option<&[BlockElem]>,
    opts: &BlockOptions,
) -> Result<BlockProduct, ConstructionError> {
    const WHAT: &str = "block product";
    let ops = BlockOps {
        m: Arc::new(m.clone()),
        n: Arc::new(n.clone()),
    };
    let w = m.len();
    let limit = opts.element_budget;
    let mut cl: Closure<BlockElem> = Closure::new();
    cl.insert(ops.unit(), limit, WHAT)?;
    match gens {
        Some(gs) => {
            for g in gs {
                if g.m >= w || g.f.len() != w * w || g.f.iter().any(|&v| v >= n.len()) {
                    return Err(ConstructionError::InvalidParameter(format!(
                        "generator is not an element of {} ⧠ {}",
                        m.name(),
                        n.name()
                    )));
                }
                cl.insert(g.clone(), limit, WHAT)?;
            }
        }
        None => {
            let full = (n.len() as f64).powi((w * w) as i32) * w as f64;
            if full > limit as f64 {
                return Err(ConstructionError::Budget {
                    what: WHAT,
                    reached: 0,
                    limit,
                });
            }
            for mm in m.elements() {
                let mut f = vec![0; w * w];
                loop {
                    cl.insert(BlockElem { m: mm, f: f.clone() }, limit, WHAT)?;
                    if !odometer(&mut f, n.len()) {
                        break;
                    }
                }
            }
        }
    }
    let omega = |a: &BlockElem| ops.omega(a);
    let omegastar = |a: &BlockElem| ops.omegastar(a);
    let mul = |a: &BlockElem, b: &BlockElem| ops.mul(a, b);
    loop {
        cl.close(&[&omega, &omegastar], &mul, limit, WHAT)?;
        if !(opts.shuffle_closure && opts.shuffle == BlockShuffle::Contextual) {
            break;
        }
        let others: Vec<Elem> = (1..cl.len()).collect();
        if others.len() >= 63 || (1u64 << others.len()) > opts.subset_budget {
            return Err(ConstructionError::Budget {
                what: "block product shuffle closure",
                reached: cl.len(),
                limit: opts.subset_budget as usize,
            });
        }
        let mut found = Vec::new();
        for size in 1..=others.len() {
            crate::algebra::combinations(&others, size, &mut |s| {
                let items: Vec<&BlockElem> = s.iter().map(|&i| &cl.items[i]).collect();
                if let Some(v) = ops.shuffle(&items) {
                    if !cl.index.contains_key(&v) && !found.contains(&v) {
                        found.push(v);
                    }
                }
            });
        }
        if found.is_empty() {
            break;
        }
        for v in found {
            cl.insert(v, limit, WHAT)?;
        }
    }
    let product = cl.product_table();
    let omega_t = cl.unary_table(0);
    let omegastar_t = cl.unary_table(1);
    let names = cl
        .items
        .iter()
        .map(|e| {
            let f: Vec<&str> = e.f.iter().map(|&v| n.name_of(v)).collect();
            format!("({}|{})", m.name_of(e.m), f.join(","))
        })
        .collect();
    let elements = Arc::new(cl.items);
    let index = Arc::new(cl.index);
    let shuffle = match opts.shuffle {
        BlockShuffle::Contextual => ShuffleTable::Derived(Arc::new(BlockOracle {
            ops: ops.clone(),
            elements: elements.clone(),
            index: index.clone(),
        })),
        BlockShuffle::Undefined => ShuffleTable::Explicit {
            entries: Default::default(),
            default: None,
        },
    };
    let algebra = FiniteCircleAlgebra::new(
        format!("{}[]{}", m.name(), n.name()),
        names,
        0,
        product,
        omega_t,
        omegastar_t,
        shuffle,
    )?;
    Ok(BlockProduct {
        algebra,
        left: m.clone(),
        right: n.clone(),
        elements,
        index,
    })
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}
