//! The identity table. Each entry builds every side of its identity from the
//! q-function layer; nothing here compares or simplifies.

use num_bigint::BigInt;

use super::verify::{Built, Check, Params, Side};
use crate::error::{Error, Result};
use crate::qfunctions::{
    bressoud_lhs, bressoud_rhs, correction_term, mcintosh_lhs_spec, mcintosh_rhs_spec,
    named_series, rr_g, rr_h, theta_sum, Quadratic, SeriesCtx, SumSpec, ThetaSide,
};
use crate::series::{input_prec_for_shift, substitute, ParamMonomial, Subst};
use crate::{Poly, Series};

type Ctx = SeriesCtx<BigInt>;

pub struct IdentityEntry {
    pub id: &'static str,
    pub summary: &'static str,
    /// Supported values of `s`; empty when the entry takes no `s`.
    pub s_values: &'static [u32],
    /// Name and supported values of a second integer parameter.
    pub n_param: Option<(&'static str, &'static [u32])>,
    /// Entries that need a longer expansion than the default run at least this far.
    pub min_prec: i64,
    pub build: fn(Params, i64) -> Result<Built>,
}

const fn entry(
    id: &'static str,
    summary: &'static str,
    build: fn(Params, i64) -> Result<Built>,
) -> IdentityEntry {
    IdentityEntry {
        id,
        summary,
        s_values: &[],
        n_param: None,
        min_prec: 0,
        build,
    }
}

const fn with_s(mut e: IdentityEntry, s: &'static [u32]) -> IdentityEntry {
    e.s_values = s;
    e
}

const S1_6: &[u32] = &[1, 2, 3, 4, 5, 6];
const S1_5: &[u32] = &[1, 2, 3, 4, 5];
const S1_4: &[u32] = &[1, 2, 3, 4];
const N1_6: &[u32] = &[1, 2, 3, 4, 5, 6];

pub static REGISTRY: &[IdentityEntry] = &[
    entry("gmr", "generalized modular relation, D = 4", gmr),
    with_s(
        entry(
            "theorem-1.1",
            "Rogers-Ramanujan dissection of the theta function, D = 2s",
            theorem,
        ),
        S1_6,
    ),
    with_s(
        entry(
            "firstPart",
            "dissection of the positive partial theta function",
            first_part,
        ),
        S1_6,
    ),
    with_s(
        entry(
            "secondPart",
            "dissection of the non-positive partial theta function",
            second_part,
        ),
        S1_6,
    ),
    with_s(
        entry(
            "thm-3.1-three-way",
            "three equal Durfee-rectangle generating functions",
            three_way,
        ),
        S1_5,
    ),
    IdentityEntry {
        n_param: Some(("n", N1_6)),
        ..with_s(
            entry(
                "cor-3.2",
                "b = q^n specialization of the three-way identity",
                cor32,
            ),
            S1_4,
        )
    },
    IdentityEntry {
        n_param: Some(("m", N1_6)),
        ..with_s(
            entry(
                "cor-3.3",
                "a = b q^m specialization, summed by Euler",
                cor33,
            ),
            S1_4,
        )
    },
    entry(
        "gen-jtpi",
        "generalized Jacobi triple product, D = 2",
        gen_jtpi,
    ),
    entry("jtpi", "Jacobi triple product, symbolic in a", jtpi),
    entry(
        "s3",
        "the s = 3 dissection written out with explicit sums, D = 6",
        s3,
    ),
    entry(
        "rogers-1",
        "G(q) = (-q^2;q^2)_inf sum q^(n^2)/(q^4;q^4)_n",
        rogers1,
    ),
    entry(
        "rogers-2",
        "H(q) = (-q^2;q^2)_inf sum q^(n^2+2n)/(q^4;q^4)_n",
        rogers2,
    ),
    entry(
        "mre",
        "G(q)G(q^4) + qH(q)H(q^4) = phi(q)/(q^2;q^2)_inf",
        mre,
    ),
    entry(
        "gh5mock",
        "G(q)f0(q^4) - qH(q)f1(q^4) in terms of theta and a double sum",
        gh5mock,
    ),
    entry(
        "mock-gen",
        "generalized third order mock theta relation, symbolic in b",
        mock_gen,
    ),
    entry(
        "mock-3rd",
        "phi(q) + 2 psi(q) = (-q;q^2)^3_inf (q^2;q^2)_inf",
        mock_3rd,
    ),
    with_s(
        entry(
            "annihilation",
            "a = -q^(-1/(2s)) kills the theta function",
            annihilation,
        ),
        S1_5,
    ),
    with_s(
        entry(
            "rhs-zero",
            "b = 1 in the annihilated dissection sums to zero",
            rhs_zero,
        ),
        S1_5,
    ),
    entry(
        "stacks",
        "s = 2, b = -1 annihilated dissection, q -> q^2",
        stacks,
    ),
    IdentityEntry {
        n_param: Some(("mu", &[0, 1])),
        ..entry("mcintosh-mu", "McIntosh's identity", mcintosh)
    },
    IdentityEntry {
        min_prec: 100,
        ..entry(
            "congruence",
            "parity congruence from the stacks identity",
            congruence,
        )
    },
    entry(
        "stacks-substituted",
        "stacks identity rewritten with Andrews' identity",
        stacks_substituted,
    ),
    entry(
        "gmr2",
        "theta difference companion relation, D = 4, symbolic in a",
        gmr2,
    ),
    entry(
        "watson-1",
        "G(-q)phi(q) - G(q)phi(-q) = 2qH(q^4)psi(q^2)",
        watson1,
    ),
    entry(
        "watson-2",
        "H(-q)phi(q) + H(q)phi(-q) = 2G(q^4)psi(q^2)",
        watson2,
    ),
    entry(
        "entry-3.20",
        "G(q)H(-q) + G(-q)H(q) = 2(-q^2;q^2)^2_inf",
        entry320,
    ),
    entry(
        "entry-3.20-intermediate",
        "product relation behind G(q)H(-q) + G(-q)H(q), D = 4",
        entry320_intermediate,
    ),
    with_s(
        entry(
            "bressoud",
            "Bressoud's multi-sum generalization of Rogers' identity",
            bressoud,
        ),
        &[2, 3, 4],
    ),
];

pub fn find_entry(id: &str) -> Result<&'static IdentityEntry> {
    REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::Usage(format!("unknown identity {id:?}")))
}

// ---- small helpers -------------------------------------------------------

fn pm(c: i64, a: i32, b: u32, t: i64) -> ParamMonomial {
    ParamMonomial::new(c, a, b, t)
}

/// `c q^k` as a Pochhammer base in the context's units.
fn qk(ctx: &Ctx, c: i64, k: i64) -> ParamMonomial {
    pm(c, 0, 0, ctx.q(k))
}

fn bq(ctx: &Ctx) -> ParamMonomial {
    pm(1, 0, 1, ctx.q(1))
}

fn j_of(k: i64) -> i64 {
    i64::from(k != 0)
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn side(name: &str, x: Series) -> Side {
    Side::new(name, x)
}

fn built(denom: u32, checks: Vec<Check>) -> Result<Built> {
    Ok(Built {
        denom,
        checks,
        notes: Vec::new(),
    })
}

fn s_of(p: Params) -> i64 {
    p.s.expect("validated by the verifier") as i64
}

/// `c * t^e * x`.
fn times_t(x: &Series, c: i64, e: i64) -> Series {
    x.mul_monomial(&Poly::constant(int(c)), e)
}

fn set_a(x: &Series, a: i64) -> Result<Series> {
    substitute(x, Some(&Subst::value(int(a))), None, None)
}

fn set_b(x: &Series, b: i64) -> Result<Series> {
    substitute(x, None, Some(&Subst::value(int(b))), None)
}

fn set_ab(x: &Series, a: i64, b: i64) -> Result<Series> {
    substitute(
        x,
        Some(&Subst::value(int(a))),
        Some(&Subst::value(int(b))),
        None,
    )
}

/// `f(q^k)` at precision `prec`, from `f` expanded to `ceil(prec / k)`.
fn at_power(k: u32, prec: i64, f: impl Fn(i64) -> Result<Series>) -> Result<Series> {
    let inner = (prec + k as i64 - 1).div_euclid(k as i64);
    Ok(f(inner)?.rescale(k).truncate(prec))
}

fn named(id: &str, prec: i64) -> Result<Series> {
    named_series(id, None, prec)
}

/// `phi(q) = sum q^(n^2)` at `D = 1`.
fn phi(prec: i64) -> Result<Series> {
    named("phi-theta", prec)
}

/// `(-q^2; q^2)_inf` at `D = 1`.
fn neg_q2(ctx: &Ctx) -> Result<Series> {
    ctx.poch_inf(qk(ctx, -1, 2), ctx.q(2))
}

/// Applies `f` to both sides of every two-sided check.
fn map_pair(
    pair: (Series, Series),
    f: impl Fn(&Series) -> Result<Series>,
) -> Result<(Series, Series)> {
    Ok((f(&pair.0)?, f(&pair.1)?))
}

// ---- the dissection ------------------------------------------------------

/// `sum_m a^(-sm-k) t^((sm+k)^2) / (bq)_m` at `D = 2s`.
fn x_spec(ctx: &Ctx, s: i64, k: i64) -> SumSpec {
    SumSpec::new(ctx.denom(), Quadratic::new(s * s, 2 * s * k, k * k))
        .a(-s, -k)
        .over(bq(ctx), ctx.q(1), 1, 0)
}

/// `sum_n a^n b^n t^(n(n + 2js - 2k)) / (q)_n` at `D = 2s`.
fn y_spec(ctx: &Ctx, s: i64, k: i64) -> SumSpec {
    let j = j_of(k);
    SumSpec::new(ctx.denom(), Quadratic::new(1, 2 * j * s - 2 * k, 0))
        .a(1, 0)
        .b(1, 0)
        .over(qk(ctx, 1, 1), ctx.q(1), 1, 0)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum InnerRange {
    All,
    Above,
    UpTo,
}

fn dissection_lhs(ctx: &Ctx, s: i64, range: InnerRange) -> Result<Series> {
    let mut out = ctx.zero();
    for k in 0..s {
        let x = x_spec(ctx, s, k);
        let y = y_spec(ctx, s, k);
        let term = match range {
            InnerRange::All => &ctx.sum(&x)? * &ctx.sum(&y)?,
            InnerRange::Above => ctx.double_sum(&x, |m| y.clone().from(s * m + k + 1))?,
            InnerRange::UpTo => ctx.double_sum(&x, |m| y.clone().upto(s * m + k))?,
        };
        out = &out + &term;
    }
    Ok(out)
}

/// `theta_side / (bq)_inf - [correction]`, the correction present unless the side is non-positive.
fn dissection_rhs(ctx: &Ctx, side: ThetaSide) -> Result<Series> {
    let theta: Series = theta_sum(ctx.denom(), ctx.prec(), 1, side, 1);
    let main = &theta * &ctx.poch_inf_inv(bq(ctx), ctx.q(1))?;
    if side == ThetaSide::NonPositive {
        return Ok(main);
    }
    Ok(&main - &correction_term(ctx, 1)?)
}

fn dissection_sides(s: i64, prec: i64) -> Result<(Series, Series)> {
    let ctx = Ctx::new(2 * s as u32, prec);
    Ok((
        dissection_lhs(&ctx, s, InnerRange::All)?,
        dissection_rhs(&ctx, ThetaSide::Full)?,
    ))
}

fn theorem(p: Params, prec: i64) -> Result<Built> {
    let s = s_of(p);
    let (l, r) = dissection_sides(s, prec)?;
    built(
        2 * s as u32,
        vec![Check::equal(
            "identity",
            vec![side("lhs", l), side("rhs", r)],
        )],
    )
}

fn first_part(p: Params, prec: i64) -> Result<Built> {
    let s = s_of(p);
    let ctx = Ctx::new(2 * s as u32, prec);
    let l = dissection_lhs(&ctx, s, InnerRange::Above)?;
    let r = dissection_rhs(&ctx, ThetaSide::Positive)?;
    built(
        ctx.denom(),
        vec![Check::equal(
            "identity",
            vec![side("lhs", l), side("rhs", r)],
        )],
    )
}

fn second_part(p: Params, prec: i64) -> Result<Built> {
    let s = s_of(p);
    let ctx = Ctx::new(2 * s as u32, prec);
    let l = dissection_lhs(&ctx, s, InnerRange::UpTo)?;
    let r = dissection_rhs(&ctx, ThetaSide::NonPositive)?;
    built(
        ctx.denom(),
        vec![Check::equal(
            "identity",
            vec![side("lhs", l), side("rhs", r)],
        )],
    )
}

/// Both sides of the `D = 4` modular relation.
fn gmr_sides(prec: i64) -> Result<(Series, Series)> {
    let ctx = Ctx::new(4, prec);
    let q = qk(&ctx, 1, 1);
    let m1 = SumSpec::new(4, Quadratic::new(4, 0, 0))
        .a(-2, 0)
        .over(bq(&ctx), 4, 1, 0);
    let n1 = SumSpec::new(4, Quadratic::new(1, 0, 0))
        .a(1, 0)
        .b(1, 0)
        .over(q, 4, 1, 0);
    let m2 = SumSpec::new(4, Quadratic::new(4, 4, 0))
        .a(-2, -1)
        .over(bq(&ctx), 4, 1, 0);
    let n2 = SumSpec::new(4, Quadratic::new(1, 2, 1))
        .a(1, 0)
        .b(1, 0)
        .over(q, 4, 1, 0);
    let lhs = &(&ctx.sum(&m1)? * &ctx.sum(&n1)?) + &(&ctx.sum(&m2)? * &ctx.sum(&n2)?);
    Ok((lhs, dissection_rhs(&ctx, ThetaSide::Full)?))
}

fn gmr(_: Params, prec: i64) -> Result<Built> {
    let (l, r) = gmr_sides(prec)?;
    built(
        4,
        vec![Check::equal(
            "identity",
            vec![side("lhs", l), side("rhs", r)],
        )],
    )
}

fn gen_jtpi_sides(prec: i64) -> Result<(Series, Series)> {
    let ctx = Ctx::new(2, prec);
    let m = SumSpec::new(2, Quadratic::new(1, 0, 0))
        .a(-1, 0)
        .over(bq(&ctx), 2, 1, 0);
    let n = SumSpec::new(2, Quadratic::new(1, 0, 0))
        .a(1, 0)
        .b(1, 0)
        .over(qk(&ctx, 1, 1), 2, 1, 0);
    Ok((
        &ctx.sum(&m)? * &ctx.sum(&n)?,
        dissection_rhs(&ctx, ThetaSide::Full)?,
    ))
}

fn gen_jtpi(_: Params, prec: i64) -> Result<Built> {
    let (l, r) = gen_jtpi_sides(prec)?;
    built(
        2,
        vec![Check::equal(
            "identity",
            vec![side("lhs", l), side("rhs", r)],
        )],
    )
}

fn jtpi(_: Params, prec: i64) -> Result<Built> {
    let ctx = Ctx::new(1, prec);
    let theta: Series = theta_sum(1, prec, 1, ThetaSide::Full, 1);
    let prod = &(&ctx.poch_inf(pm(-1, 1, 0, 1), 2)? * &ctx.poch_inf(pm(-1, -1, 0, 1), 2)?)
        * &ctx.poch_inf(qk(&ctx, 1, 2), 2)?;
    built(
        1,
        vec![Check::equal(
            "identity",
            vec![side("theta", theta), side("product", prod)],
        )],
    )
}

fn s3(_: Params, prec: i64) -> Result<Built> {
    let ctx = Ctx::new(6, prec);
    let y = |lin: i64| {
        SumSpec::new(6, Quadratic::new(1, lin, 0))
            .a(1, 0)
            .b(1, 0)
            .over(qk(&ctx, 1, 1), 6, 1, 0)
    };
    let x = |lin: i64, a0: i64| {
        SumSpec::new(6, Quadratic::new(9, lin, 0))
            .a(-3, a0)
            .over(bq(&ctx), 6, 1, 0)
    };
    let t1 = &ctx.sum(&x(0, 0))? * &ctx.sum(&y(0))?;
    let t2 = &times_t(&ctx.sum(&x(6, -1))?, 1, 1) * &ctx.sum(&y(4))?;
    let t3 = &times_t(&ctx.sum(&x(12, -2))?, 1, 4) * &ctx.sum(&y(2))?;
    let lhs = &(&t1 + &t2) + &t3;
    let rhs = dissection_rhs(&ctx, ThetaSide::Full)?;
    built(
        6,
        vec![Check::equal(
            "identity",
            vec![side("lhs", lhs), side("rhs", rhs)],
        )],
    )
}

// ---- Durfee rectangles and their specializations -------------------------

/// The three equal expressions of the Durfee-rectangle identity at `D = 1`:
/// the Durfee-square sum, the `s`-rectangle sum and Andrews' single sum.
pub fn durfee_expressions(s: u32, prec: i64) -> Result<[Series; 3]> {
    let s = s as i64;
    let ctx = Ctx::new(1, prec);
    let aq = pm(1, 1, 0, 1);
    let e1 = ctx.sum(
        &SumSpec::new(1, Quadratic::new(1, 0, 0))
            .a(1, 0)
            .b(1, 0)
            .over(aq, 1, 1, 0)
            .over(bq(&ctx), 1, 1, 0),
    )?;
    let mut e2 = ctx.zero();
    for k in 0..s {
        e2 = &e2 + &ctx.sum(&durfee_class_spec(s as u32, k as u32))?;
    }
    let tail = ctx.sum(
        &SumSpec::new(1, Quadratic::new(0, 1, 0))
            .from(1)
            .a(1, 0)
            .b(0, 1)
            .over(bq(&ctx), 1, 1, 0),
    )?;
    Ok([e1, e2, &ctx.one() + &tail])
}

/// `sum_n a^(sn+k) b^(n+j) q^((sn+k)(n+j)) / ((aq)_n (bq)_(sn+k))`, the partitions whose
/// Durfee rectangle has `n + j` rows and `sn + k` columns.
pub fn durfee_class_spec(s: u32, k: u32) -> SumSpec {
    let (s, k) = (s as i64, k as i64);
    let j = j_of(k);
    SumSpec::new(1, Quadratic::new(s, s * j + k, k * j))
        .a(s, k)
        .b(1, j)
        .over(pm(1, 1, 0, 1), 1, 1, 0)
        .over(pm(1, 0, 1, 1), 1, s, k)
}

fn three_way(p: Params, prec: i64) -> Result<Built> {
    let [e1, e2, e3] = durfee_expressions(s_of(p) as u32, prec)?;
    built(
        1,
        vec![Check::equal(
            "identity",
            vec![
                side("durfee-square", e1),
                side("durfee-rectangle", e2),
                side("andrews", e3),
            ],
        )],
    )
}

fn cor32(p: Params, prec: i64) -> Result<Built> {
    let (s, n) = (s_of(p), p.n.expect("validated") as i64);
    let ctx = Ctx::new(1, prec);
    let qn1 = qk(&ctx, 1, n + 1);
    let mut lhs = ctx.zero();
    for k in 0..s {
        let j = j_of(k);
        let spec = SumSpec::new(1, Quadratic::new(s, s * j + k + n, (k + n) * j))
            .b(s, k)
            .over(bq(&ctx), 1, 1, 0)
            .over(qn1, 1, s, k);
        lhs = &lhs + &ctx.sum(&spec)?;
    }
    let rhs = &ctx.one()
        + &ctx.sum(
            &SumSpec::new(1, Quadratic::new(0, 1, n))
                .from(1)
                .b(1, 0)
                .over(qn1, 1, 1, 0),
        )?;
    built(
        1,
        vec![Check::equal(
            "identity",
            vec![side("lhs", lhs), side("rhs", rhs)],
        )],
    )
}

fn cor33(p: Params, prec: i64) -> Result<Built> {
    let (s, m) = (s_of(p), p.n.expect("validated") as i64);
    let ctx = Ctx::new(1, prec);
    let bqm = pm(1, 0, 1, m + 1);
    let mut lhs = ctx.zero();
    for k in 0..s {
        let j = j_of(k);
        let spec = SumSpec::new(1, Quadratic::new(s, s * m + s * j + k, k * (m + j)))
            .b(s, k)
            .over(bqm, 1, 1, 0)
            .over(qk(&ctx, 1, 1), 1, s, k);
        lhs = &lhs + &ctx.sum(&spec)?;
    }
    let rhs = ctx.poch_inf_inv(bqm, 1)?;
    built(
        1,
        vec![Check::equal(
            "identity",
            vec![side("lhs", lhs), side("rhs", rhs)],
        )],
    )
}

// ---- Rogers, the modular relation and the fifth order mock thetas --------

fn rogers1(_: Params, prec: i64) -> Result<Built> {
    built(
        1,
        vec![Check::equal(
            "identity",
            vec![
                side("G", named("G", prec)?),
                side("rogers", named("rogers-g", prec)?),
            ],
        )],
    )
}

fn rogers2(_: Params, prec: i64) -> Result<Built> {
    built(
        1,
        vec![Check::equal(
            "identity",
            vec![
                side("H", named("H", prec)?),
                side("rogers", named("rogers-h", prec)?),
            ],
        )],
    )
}

/// Specializes a `D = 4` pair, reads `t` as `q` and multiplies by `(-q^2;q^2)_inf`.
fn from_quarter_powers(
    pair: (Series, Series),
    a: i64,
    b: Option<i64>,
    prec: i64,
) -> Result<(Series, Series)> {
    let ctx = Ctx::new(1, prec);
    let factor = neg_q2(&ctx)?;
    map_pair(pair, |x| {
        let y = match b {
            Some(b) => set_ab(x, a, b)?,
            None => set_a(x, a)?,
        };
        Ok(&y.relabel(1)? * &factor)
    })
}

fn mre(_: Params, prec: i64) -> Result<Built> {
    let ctx = Ctx::new(1, prec);
    let (g, h) = (rr_g(&ctx)?, rr_h(&ctx)?);
    let g4 = at_power(4, prec, |p| named("G", p))?;
    let h4 = at_power(4, prec, |p| named("H", p))?;
    let lhs = &(&g * &g4) + &times_t(&(&h * &h4), 1, 1);
    let quotient = &phi(prec)? * &ctx.poch_inf_inv(qk(&ctx, 1, 2), 2)?;
    let odd = ctx.poch_inf(qk(&ctx, -1, 1), 2)?;
    let square = &odd * &odd;
    let (pl, pr) = from_quarter_powers(gmr_sides(prec)?, 1, Some(1), prec)?;
    built(
        1,
        vec![
            Check::equal(
                "identity",
                vec![
                    side("lhs", lhs.clone()),
                    side("phi-quotient", quotient),
                    side("product", square),
                ],
            ),
            Check::equal(
                "from-gmr",
                vec![side("lhs", lhs), side("gmr-lhs", pl), side("gmr-rhs", pr)],
            ),
        ],
    )
}

/// `sum_{n,l >= 0} (-1)^n q^((n+l+1)^2) / (q^4;q^4)_l`.
fn gh5_double_sum(ctx: &Ctx) -> Result<Series> {
    let outer = SumSpec::new(1, Quadratic::new(1, 2, 1)).over(qk(ctx, 1, 4), 4, 1, 0);
    ctx.double_sum(&outer, |l| {
        SumSpec::new(1, Quadratic::new(1, 2 * (l + 1), 0)).sign(1, 0)
    })
}

fn gh5mock(_: Params, prec: i64) -> Result<Built> {
    let ctx = Ctx::new(1, prec);
    let (g, h) = (rr_g(&ctx)?, rr_h(&ctx)?);
    let f0 = at_power(4, prec, |p| named("f0", p))?;
    let f1 = at_power(4, prec, |p| named("f1", p))?;
    let lhs = &(&g * &f0) - &times_t(&(&h * &f1), 1, 1);
    let alt_theta = set_a(&theta_sum(1, prec, 1, ThetaSide::Full, -1), 1)?;
    let first = &ctx.poch_inf(qk(&ctx, -1, 2), 4)? * &alt_theta;
    let second = &neg_q2(&ctx)? * &gh5_double_sum(&ctx)?;
    let rhs = &first + &times_t(&second, 2, 0);
    let (pl, pr) = from_quarter_powers(gmr_sides(prec)?, -1, Some(-1), prec)?;
    built(
        1,
        vec![
            Check::equal("identity", vec![side("lhs", lhs.clone()), side("rhs", rhs)]),
            Check::equal(
                "from-gmr",
                vec![side("lhs", lhs), side("gmr-lhs", pl), side("gmr-rhs", pr)],
            ),
        ],
    )
}

// ---- third order mock theta functions -----------------------------------

fn neg_b() -> Subst<BigInt> {
    Subst::scaled_var(int(-1))
}

/// Both sides of the generalized third order relation at `D = 1`, symbolic in `b`.
fn mock_gen_sides(ctx: &Ctx) -> Result<(Series, Series)> {
    let lhs = ctx.sum(&SumSpec::new(1, Quadratic::new(1, 0, 0)).sign(1, 0).over(
        pm(-1, 0, 1, 2),
        2,
        1,
        0,
    ))?;
    let phi_neg = phi(ctx.prec())?.negate_t();
    let main = &phi_neg * &ctx.poch_inf_inv(pm(-1, 0, 1, 1), 1)?;
    let tail = ctx.sum(
        &SumSpec::new(1, Quadratic::new(1, 0, 0))
            .from(1)
            .sign(1, 1)
            .over(pm(-1, 0, 1, 1), 2, 1, 0),
    )?;
    let one_plus_b = Poly::from_terms([(0, 0, int(1)), (0, 1, int(1))]);
    Ok((lhs, &main + &tail.mul_monomial(&one_plus_b, 0)))
}

/// `sum_{n>=1} (-1)^n q^(n^2) sum_{l<n} (-b)^l / (q^2;q^2)_l`.
fn mock_inner_prefix(ctx: &Ctx) -> Result<Series> {
    let outer = SumSpec::new(1, Quadratic::new(1, 0, 0)).sign(1, 0).from(1);
    ctx.sum_with_prefix(&outer, pm(-1, 0, 1, 0), qk(ctx, 1, 2), 2)
}

fn mock_gen(_: Params, prec: i64) -> Result<Built> {
    let ctx = Ctx::new(1, prec);
    let (lhs, rhs) = mock_gen_sides(&ctx)?;

    // gen-jtpi with a = -1, b -> -b, q -> q^2
    let (gl, gr) = map_pair(gen_jtpi_sides(prec)?, |x| {
        substitute(x, Some(&Subst::value(int(-1))), Some(&neg_b()), None)?.relabel(1)
    })?;
    let m1_left = &ctx.sum(&SumSpec::new(1, Quadratic::new(1, 0, 0)).sign(1, 0).over(
        pm(-1, 0, 1, 2),
        2,
        1,
        0,
    ))? * &ctx.sum(&SumSpec::new(1, Quadratic::new(1, 0, 0)).b(1, 0).over(
        qk(&ctx, 1, 2),
        2,
        1,
        0,
    ))?;
    let alt_theta = set_a(&theta_sum(1, prec, 1, ThetaSide::Full, -1), 1)?;
    let one_plus_b = Poly::from_terms([(0, 0, int(1)), (0, 1, int(1))]);
    let m1_right = &(&alt_theta * &ctx.poch_inf_inv(pm(-1, 0, 1, 2), 2)?)
        - &mock_inner_prefix(&ctx)?.mul_monomial(&one_plus_b, 0);

    let m2_left = mock_inner_prefix(&ctx)?;
    let m2_right = ctx.double_sum(
        &SumSpec::new(1, Quadratic::new(1, 0, 0)).sign(1, 0).from(1),
        |m| {
            SumSpec::new(1, Quadratic::new(1, 2 * m, 0))
                .b(1, 0)
                .over(qk(&ctx, 1, 2), 2, 1, 0)
        },
    )?;
    built(
        1,
        vec![
            Check::equal("identity", vec![side("lhs", lhs), side("rhs", rhs)]),
            Check::equal(
                "specialized-lhs",
                vec![side("literal", m1_left), side("from-gen-jtpi", gl)],
            ),
            Check::equal(
                "specialized-rhs",
                vec![side("literal", m1_right), side("from-gen-jtpi", gr)],
            ),
            Check::equal(
                "inner-sum-swap",
                vec![
                    side("prefix-sums", m2_left),
                    side("euler-expanded", m2_right),
                ],
            ),
        ],
    )
}

fn mock_3rd(_: Params, prec: i64) -> Result<Built> {
    let ctx = Ctx::new(1, prec);
    let phi_mock = named("phi-mock", prec)?;
    let psi2 = times_t(&named("psi-mock", prec)?, 2, 0);
    let odd = ctx.poch_inf(qk(&ctx, -1, 1), 2)?;
    let product = &(&(&odd * &odd) * &odd) * &ctx.poch_inf(qk(&ctx, 1, 2), 2)?;
    let (gl, gr) = map_pair(mock_gen_sides(&ctx)?, |x| {
        Ok(&set_b(x, 1)?.negate_t() + &psi2)
    })?;
    built(
        1,
        vec![Check::equal(
            "identity",
            vec![
                side("phi+2psi", &phi_mock + &psi2),
                side("product", product),
                side("mock-gen-lhs", gl),
                side("mock-gen-rhs", gr),
            ],
        )],
    )
}

// ---- annihilating the theta function -------------------------------------

/// `sum_k sum_m (-1)^(sm+k) t^((sm+k)(sm+k+1)) / (base)_m * sum_n (-1)^n b^{n or 0} t^(n(n+2js-2k-1)) / (q)_n`.
fn annihilated_lhs(ctx: &Ctx, s: i64, with_b: bool) -> Result<Series> {
    let d = ctx.denom();
    let base = if with_b { bq(ctx) } else { qk(ctx, 1, 1) };
    let mut out = ctx.zero();
    for k in 0..s {
        let j = j_of(k);
        let x = SumSpec::new(d, Quadratic::new(s * s, s * (2 * k + 1), k * (k + 1)))
            .sign(s, k)
            .over(base, ctx.q(1), 1, 0);
        let mut y = SumSpec::new(d, Quadratic::new(1, 2 * j * s - 2 * k - 1, 0))
            .sign(1, 0)
            .over(qk(ctx, 1, 1), ctx.q(1), 1, 0);
        if with_b {
            y = y.b(1, 0);
        }
        out = &out + &(&ctx.sum(&x)? * &ctx.sum(&y)?);
    }
    Ok(out)
}

/// `-(1-b) sum_{n>=1} (-1)^n t^(n(n-1)) sum_{l<n} b^l / (q)_l`.
fn annihilated_rhs(ctx: &Ctx) -> Result<Series> {
    let outer = SumSpec::new(ctx.denom(), Quadratic::new(1, -1, 0))
        .sign(1, 0)
        .from(1);
    let inner = ctx.sum_with_prefix(&outer, pm(1, 0, 1, 0), qk(ctx, 1, 1), ctx.q(1))?;
    Ok(inner.mul_monomial(&Poly::from_terms([(0, 0, int(-1)), (0, 1, int(1))]), 0))
}

/// Dissection sides with `a -> -t^(-1)` applied, exact through `t^prec`.
fn annihilated_by_substitution(s: i64, prec: i64, b: Option<i64>) -> Result<(Series, Series)> {
    let p_in = input_prec_for_shift(prec, 1, 0);
    let a = Subst::monomial(int(-1), -1);
    let b = b.map(|v| Subst::value(int(v)));
    map_pair(dissection_sides(s, p_in)?, |x| {
        substitute(x, Some(&a), b.as_ref(), Some(prec))
    })
}

fn annihilation(p: Params, prec: i64) -> Result<Built> {
    let s = s_of(p);
    let ctx = Ctx::new(2 * s as u32, prec);
    let lhs = annihilated_lhs(&ctx, s, true)?;
    let rhs = annihilated_rhs(&ctx)?;
    let (pl, pr) = annihilated_by_substitution(s, prec, None)?;
    let p_in = input_prec_for_shift(prec, 1, 0);
    let theta = substitute(
        &theta_sum(ctx.denom(), p_in, 1, ThetaSide::Full, 1),
        Some(&Subst::monomial(int(-1), -1)),
        None,
        Some(prec),
    )?;
    built(
        ctx.denom(),
        vec![
            Check::equal(
                "identity",
                vec![
                    side("lhs", lhs),
                    side("rhs", rhs),
                    side("substituted-lhs", pl),
                    side("substituted-rhs", pr),
                ],
            ),
            Check::equal(
                "theta-vanishes",
                vec![side("zero", ctx.zero()), side("substituted-theta", theta)],
            ),
        ],
    )
}

fn rhs_zero(p: Params, prec: i64) -> Result<Built> {
    let s = s_of(p);
    let ctx = Ctx::new(2 * s as u32, prec);
    let lhs = annihilated_lhs(&ctx, s, false)?;
    let mut checks = vec![Check::equal(
        "identity",
        vec![side("zero", ctx.zero()), side("lhs", lhs.clone())],
    )];
    if s == 2 {
        let one = Ctx::new(1, prec);
        let q2 = qk(&one, 1, 2);
        let left = &one.sum(&SumSpec::new(1, Quadratic::new(2, 1, 0)).over(q2, 2, 1, 0))?
            * &one.sum(
                &SumSpec::new(1, Quadratic::new(1, -1, 0).over(2))
                    .sign(1, 0)
                    .over(q2, 2, 1, 0),
            )?;
        let right = &one.sum(&SumSpec::new(1, Quadratic::new(2, 3, 1)).over(q2, 2, 1, 0))?
            * &one.sum(
                &SumSpec::new(1, Quadratic::new(1, 1, 0).over(2))
                    .sign(1, 0)
                    .over(q2, 2, 1, 0),
            )?;
        checks.push(Check::equal(
            "q-squared-display",
            vec![side("left", left), side("right", right)],
        ));
    }
    if s == 3 {
        let q = qk(&ctx, 1, 1);
        let pair = |mq: Quadratic, nlin: i64| -> Result<Series> {
            let m = SumSpec::new(6, mq).sign(1, 0).over(q, 6, 1, 0);
            let n = SumSpec::new(6, Quadratic::new(1, nlin, 0))
                .sign(1, 0)
                .over(q, 6, 1, 0);
            Ok(&ctx.sum(&m)? * &ctx.sum(&n)?)
        };
        let display = &(&pair(Quadratic::new(9, 3, 0), -1)? - &pair(Quadratic::new(9, 9, 2), 3)?)
            + &pair(Quadratic::new(9, 15, 6), 1)?;
        checks.push(Check::equal(
            "s3-display",
            vec![
                side("zero", ctx.zero()),
                side("display", display.clone()),
                side("general", lhs),
            ],
        ));
    }
    built(ctx.denom(), checks)
}

// ---- stacks, McIntosh and the congruence --------------------------------

struct StacksParts {
    /// `sum q^(m(2m+1)) / (-q^2;q^2)_m`
    a: Series,
    /// `sum_{n>=0} q^(n(n-1)/2) / (q^2;q^2)_n`
    b: Series,
    /// `sum q^(2m^2+3m+1) / (-q^2;q^2)_m`
    c: Series,
    /// `sum q^(n(n+1)/2) / (q^2;q^2)_n`
    d: Series,
}

fn stacks_parts(ctx: &Ctx) -> Result<StacksParts> {
    let (q2, nq2) = (qk(ctx, 1, 2), qk(ctx, -1, 2));
    Ok(StacksParts {
        a: ctx.sum(&SumSpec::new(1, Quadratic::new(2, 1, 0)).over(nq2, 2, 1, 0))?,
        b: ctx.sum(&SumSpec::new(1, Quadratic::new(1, -1, 0).over(2)).over(q2, 2, 1, 0))?,
        c: ctx.sum(&SumSpec::new(1, Quadratic::new(2, 3, 1)).over(nq2, 2, 1, 0))?,
        d: ctx.sum(&SumSpec::new(1, Quadratic::new(1, 1, 0).over(2)).over(q2, 2, 1, 0))?,
    })
}

/// `-2 sum_{n>=1} (-1)^n q^(n(n-1)/2) sum_{l<n} (-1)^l / (q^2;q^2)_l`.
fn stacks_rhs(ctx: &Ctx) -> Result<Series> {
    let outer = SumSpec::new(1, Quadratic::new(1, -1, 0).over(2))
        .sign(1, 0)
        .from(1);
    Ok(times_t(
        &ctx.sum_with_prefix(&outer, pm(-1, 0, 0, 0), qk(ctx, 1, 2), 2)?,
        -2,
        0,
    ))
}

/// `1 / (-q;-q)_inf`.
fn inv_neg_euler(ctx: &Ctx) -> Result<Series> {
    Ok(ctx.poch_inf_inv(qk(ctx, 1, 1), 1)?.negate_t())
}

fn stacks(_: Params, prec: i64) -> Result<Built> {
    let ctx = Ctx::new(1, prec);
    let p = stacks_parts(&ctx)?;
    let lhs = &(&p.a * &p.b) - &(&p.c * &p.d);
    let rhs = stacks_rhs(&ctx)?;
    // s = 2, b = -1 at D = 4, then q -> q^2 turns t = q^(1/4) into q^(1/2)
    let (pl, pr) = map_pair(annihilated_by_substitution(2, 2 * prec, Some(-1))?, |x| {
        x.relabel(2)?.reduce_denom(1)
    })?;
    built(
        1,
        vec![Check::equal(
            "identity",
            vec![
                side("lhs", lhs),
                side("rhs", rhs),
                side("annihilation-lhs", pl),
                side("annihilation-rhs", pr),
            ],
        )],
    )
}

fn mcintosh(p: Params, prec: i64) -> Result<Built> {
    let mu = p.n.expect("validated") as i64;
    let ctx = Ctx::new(1, prec);
    let lhs = ctx.sum(&mcintosh_lhs_spec(mu))?;
    let rhs = &ctx.poch_inf(qk(&ctx, -1, 1), 1)? * &ctx.sum(&mcintosh_rhs_spec(mu))?;
    built(
        1,
        vec![Check::equal(
            "identity",
            vec![side("lhs", lhs), side("rhs", rhs)],
        )],
    )
}

fn congruence(_: Params, prec: i64) -> Result<Built> {
    let ctx = Ctx::new(1, prec);
    let p = stacks_parts(&ctx)?;
    let tail = ctx.sum(
        &SumSpec::new(1, Quadratic::new(1, -1, 0).over(2))
            .over(qk(&ctx, 1, 2), 2, 1, 0)
            .from(1),
    )?;
    let w = inv_neg_euler(&ctx)?;
    let braces = &(&ctx.one() + &tail) - &(&w * &p.c);
    let series = &p.a * &braces;
    Ok(Built {
        denom: 1,
        checks: vec![Check::VanishesMod {
            label: "congruence".into(),
            series,
            modulus: 2,
        }],
        notes: vec![format!("checked through q^{prec}")],
    })
}

fn stacks_substituted(_: Params, prec: i64) -> Result<Built> {
    let ctx = Ctx::new(1, prec);
    let p = stacks_parts(&ctx)?;
    let w = inv_neg_euler(&ctx)?;
    // sum_{n>=1} q^(n^2) (-q^2;q^2)_(n-1)
    let e = ctx.sum(&SumSpec::new(1, Quadratic::new(1, 0, 0)).from(1).times(
        qk(&ctx, -1, 2),
        2,
        1,
        -1,
    ))?;
    let wc = &w * &p.c;
    let line1 = &(&p.a * &(&p.b - &wc)) - &times_t(&(&wc * &e), 2, 0);
    let line2 = stacks_rhs(&ctx)?;
    let (q2, q4) = (qk(&ctx, 1, 2), qk(&ctx, 1, 4));
    let even = ctx.sum(&SumSpec::new(1, Quadratic::new(2, 1, 0)).over(q2, 2, 2, 0))?;
    let split = ctx.double_sum(
        &SumSpec::new(1, Quadratic::new(4, -1, 0)).sign(1, 0).from(1),
        |l| {
            SumSpec::new(1, Quadratic::new(2, 4 * l - 1, 0))
                .over(q2, 2, 1, l - 1)
                .over(q4, 4, 1, 0)
        },
    )?;
    let line3 = times_t(&(&even - &split), 2, 0);
    let andrews = &w * &(&p.a + &times_t(&e, 2, 0));
    built(
        1,
        vec![
            Check::equal(
                "chain",
                vec![
                    side("substituted", line1),
                    side("stacks-rhs", line2),
                    side("parity-split", line3),
                ],
            ),
            Check::equal("andrews", vec![side("lhs", p.d), side("rhs", andrews)]),
        ],
    )
}

// ---- the companion relation, Watson and Entry 3.20 ----------------------

/// `(sum a^n ...) pair` of the companion relation at `D = 4` with `(q)_m` on the right.
fn gmr2_sides(prec: i64) -> Result<(Series, Series)> {
    let ctx = Ctx::new(4, prec);
    let q = qk(&ctx, 1, 1);
    let theta_a: Series = theta_sum(4, prec, 1, ThetaSide::Full, 1);
    let theta_neg: Series = theta_sum(4, prec, 1, ThetaSide::Full, -1);
    let sum_a = ctx.sum(
        &SumSpec::new(4, Quadratic::new(1, 0, 0))
            .a(1, 0)
            .over(q, 4, 1, 0),
    )?;
    let sum_neg = ctx.sum(
        &SumSpec::new(4, Quadratic::new(1, 0, 0))
            .a(1, 0)
            .sign(1, 0)
            .over(q, 4, 1, 0),
    )?;
    let lhs = &(&theta_a * &sum_neg) - &(&theta_neg * &sum_a);
    let m = ctx.sum(
        &SumSpec::new(4, Quadratic::new(4, 4, 0))
            .a(-2, -1)
            .over(q, 4, 1, 0),
    )?;
    let rhs = times_t(&(&ctx.poch_inf(q, 4)? * &m), 2, 1);
    Ok((lhs, rhs))
}

const GMR2_NOTE: &str = "right-hand side uses (q)_m where the printed statement has (bq)_m; b occurs nowhere else in the identity";

fn gmr2(_: Params, prec: i64) -> Result<Built> {
    let (l, r) = gmr2_sides(prec)?;
    Ok(Built {
        denom: 4,
        checks: vec![Check::equal(
            "identity",
            vec![side("lhs", l), side("rhs", r)],
        )],
        notes: vec![GMR2_NOTE.into()],
    })
}

/// `psi(q^2)` with `psi(q) = (q^2;q^2)_inf / (q;q^2)_inf`.
fn psi_q2(prec: i64) -> Result<Series> {
    at_power(2, prec, |p| named("psi-product", p))
}

fn watson1(_: Params, prec: i64) -> Result<Built> {
    let ctx = Ctx::new(1, prec);
    let (g, ph) = (rr_g(&ctx)?, phi(prec)?);
    let lhs = &(&g.negate_t() * &ph) - &(&g * &ph.negate_t());
    let h4 = at_power(4, prec, |p| named("H", p))?;
    let rhs = times_t(&(&h4 * &psi_q2(prec)?), 2, 1);
    let (pl, pr) = from_quarter_powers(gmr2_sides(prec)?, 1, None, prec)?;
    Ok(Built {
        denom: 1,
        checks: vec![Check::equal(
            "identity",
            vec![
                side("lhs", lhs),
                side("rhs", rhs),
                side("gmr2-lhs", pl),
                side("gmr2-rhs", pr),
            ],
        )],
        notes: vec![GMR2_NOTE.into()],
    })
}

fn watson2(_: Params, prec: i64) -> Result<Built> {
    let ctx = Ctx::new(1, prec);
    let (h, ph) = (rr_h(&ctx)?, phi(prec)?);
    let lhs = &(&h.negate_t() * &ph) + &(&h * &ph.negate_t());
    let g4 = at_power(4, prec, |p| named("G", p))?;
    let rhs = times_t(&(&g4 * &psi_q2(prec)?), 2, 0);
    // multiply by t, then a -> t^2 at D = 4
    let p_in = input_prec_for_shift(prec, 2, 0);
    let shift = Subst::monomial(int(1), 2);
    let factor = neg_q2(&ctx)?;
    let (pl, pr) = map_pair(gmr2_sides(p_in)?, |x| {
        let y = substitute(&times_t(x, 1, 1), Some(&shift), None, Some(prec))?;
        Ok(&y.relabel(1)? * &factor)
    })?;
    Ok(Built {
        denom: 1,
        checks: vec![Check::equal(
            "identity",
            vec![
                side("lhs", lhs),
                side("rhs", rhs),
                side("gmr2-lhs", pl),
                side("gmr2-rhs", pr),
            ],
        )],
        notes: vec![GMR2_NOTE.into()],
    })
}

fn entry320_intermediate_sides(prec: i64) -> Result<(Series, Series)> {
    let ctx = Ctx::new(4, prec);
    let q = qk(&ctx, 1, 1);
    let spec = |lin: i64, c0: i64, alt: bool| {
        let s = SumSpec::new(4, Quadratic::new(1, lin, c0))
            .a(1, 0)
            .over(q, 4, 1, 0);
        if alt {
            s.sign(1, 0)
        } else {
            s
        }
    };
    let lhs = &(&ctx.sum(&spec(2, 1, false))? * &ctx.sum(&spec(0, 0, true))?)
        + &(&ctx.sum(&spec(2, 1, true))? * &ctx.sum(&spec(0, 0, false))?);
    Ok((lhs, ctx.mono(2, 0, 0, 1)))
}

fn entry320_intermediate(_: Params, prec: i64) -> Result<Built> {
    let (l, r) = entry320_intermediate_sides(prec)?;
    built(
        4,
        vec![Check::equal(
            "identity",
            vec![side("lhs", l), side("rhs", r)],
        )],
    )
}

fn entry320(_: Params, prec: i64) -> Result<Built> {
    let ctx = Ctx::new(1, prec);
    let (g, h) = (rr_g(&ctx)?, rr_h(&ctx)?);
    let lhs = &(&g * &h.negate_t()) + &(&g.negate_t() * &h);
    let f = neg_q2(&ctx)?;
    let rhs = times_t(&(&f * &f), 2, 0);
    let wide = Ctx::new(1, prec + 1);
    let f1 = neg_q2(&wide)?;
    let f2 = &f1 * &f1;
    let (pl, pr) = map_pair(entry320_intermediate_sides(prec + 1)?, |x| {
        (&set_a(x, 1)?.relabel(1)? * &f2).div_t(1)
    })?;
    built(
        1,
        vec![Check::equal(
            "identity",
            vec![
                side("lhs", lhs),
                side("rhs", rhs),
                side("intermediate-lhs", pl),
                side("intermediate-rhs", pr),
            ],
        )],
    )
}

fn bressoud(p: Params, prec: i64) -> Result<Built> {
    let s = p.s.expect("validated");
    let ctx = Ctx::new(1, prec);
    built(
        1,
        vec![Check::equal(
            "identity",
            vec![
                side("lhs", bressoud_lhs(&ctx, s)?),
                side("rhs", bressoud_rhs(&ctx, s)?),
            ],
        )],
    )
}
