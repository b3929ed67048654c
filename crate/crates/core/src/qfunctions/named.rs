//! Named series and products, each expanded at `D = 1` unless noted.

use super::ctx::SeriesCtx;
use super::sumspec::{Quadratic, SumSpec};
use super::theta::{correction_term, theta_sum, ThetaSide};
use crate::error::{usage, Error, Result};
use crate::scalar::Coefficient;
use crate::series::{ParamMonomial, QSeries};

/// Ids accepted by [`named_series`], with a short description.
pub const NAMED_IDS: &[(&str, &str)] = &[
    ("G", "sum q^(n^2)/(q)_n"),
    ("H", "sum q^(n^2+n)/(q)_n"),
    ("rogers-g", "(-q^2;q^2)_inf sum q^(n^2)/(q^4;q^4)_n"),
    ("rogers-h", "(-q^2;q^2)_inf sum q^(n^2+2n)/(q^4;q^4)_n"),
    ("f0", "sum q^(n^2)/(-q;q)_n"),
    ("f1", "sum q^(n^2+n)/(-q;q)_n"),
    ("phi-mock", "sum q^(n^2)/(-q^2;q^2)_n"),
    ("psi-mock", "sum_{n>=1} q^(n^2)/(q;q^2)_n"),
    ("phi-theta", "sum_{n in Z} q^(n^2)"),
    ("psi-product", "(q^2;q^2)_inf/(q;q^2)_inf"),
    ("partition", "1/(q)_inf"),
    ("euler", "(q)_inf"),
    ("a179080", "sum_{n>=1} q^(n(n-1)/2)/(q^2;q^2)_n"),
    ("mcintosh-mu0", "sum q^((2n)(2n+1)/2)/(q^2;q^2)_n"),
    ("mcintosh-mu1", "sum q^((2n+1)(2n+2)/2)/(q^2;q^2)_n"),
    ("theta", "sum_{n in Z} a^n q^(n^2/(2s)), D = 2s (needs s)"),
    ("theta-pos", "sum_{n>=1} a^n q^(n^2/(2s)), D = 2s (needs s)"),
    (
        "theta-nonpos",
        "sum_{n<=0} a^n q^(n^2/(2s)), D = 2s (needs s)",
    ),
    (
        "correction",
        "(1-b) sum_{n>=1} a^n q^(n^2/(2s)) sum_{l<n} b^l/(q)_l, D = 2s (needs s)",
    ),
    ("bressoud-lhs", "sum a^m q^(m+s m(m-1)/2)/(q)_m (needs s)"),
    (
        "bressoud-rhs",
        "nested multi-sum side of the Bressoud generalization, s <= 4 (needs s)",
    ),
];

/// `c * q^k` as a Pochhammer base at denominator `denom`.
pub(crate) fn qb(denom: u32, c: i64, k: i64) -> ParamMonomial {
    ParamMonomial::new(c, 0, 0, k * denom as i64)
}

/// `sum q^(n^2 + c n) / (q)_n`.
pub fn rr_sum<R: Coefficient>(ctx: &SeriesCtx<R>, c: i64) -> Result<QSeries<R>> {
    let d = ctx.denom();
    let spec =
        SumSpec::new(d, Quadratic::new(ctx.q(1), ctx.q(c), 0)).over(qb(d, 1, 1), ctx.q(1), 1, 0);
    ctx.sum(&spec)
}

/// `G(q)` at the context's denominator.
pub fn rr_g<R: Coefficient>(ctx: &SeriesCtx<R>) -> Result<QSeries<R>> {
    rr_sum(ctx, 0)
}

/// `H(q)` at the context's denominator.
pub fn rr_h<R: Coefficient>(ctx: &SeriesCtx<R>) -> Result<QSeries<R>> {
    rr_sum(ctx, 1)
}

fn need_s(s: Option<u32>, id: &str) -> Result<u32> {
    match s {
        Some(s) if s >= 1 => Ok(s),
        _ => usage(format!("series {id} needs a parameter s >= 1")),
    }
}

/// Side `sum_m a^m q^(m + s m(m-1)/2) / (q)_m` of the Bressoud generalization.
pub fn bressoud_lhs<R: Coefficient>(ctx: &SeriesCtx<R>, s: u32) -> Result<QSeries<R>> {
    let (s, d) = (s as i64, ctx.denom());
    let spec = SumSpec::new(
        d,
        Quadratic::new(s * ctx.q(1), (2 - s) * ctx.q(1), 0).over(2),
    )
    .a(1, 0)
    .over(qb(d, 1, 1), ctx.q(1), 1, 0);
    ctx.sum(&spec)
}

/// `(-a q^s; q^s)_inf sum_{n_1..n_{s-1}} a^N q^(s N(N-1)/2 + sum i n_i) / (prod (q^s;q^s)_{n_i} (-a q^s; q^s)_N)`.
pub fn bressoud_rhs<R: Coefficient>(ctx: &SeriesCtx<R>, s: u32) -> Result<QSeries<R>> {
    if !(1..=4).contains(&s) {
        return usage("the nested Bressoud sum is supported for s <= 4");
    }
    let si = s as i64;
    let qs = ParamMonomial::t(ctx.q(si));
    let neg_aqs = ParamMonomial::new(-1, 1, 0, ctx.q(si));
    let prec = ctx.prec();
    let mut out = ctx.zero();
    let mut idx = vec![0usize; (s - 1) as usize];
    // Odometer over (n_1, ..., n_{s-1}); the exponent grows in each n_i, so a
    // coordinate resets as soon as it overshoots.
    loop {
        let big_n: i64 = idx.iter().map(|&n| n as i64).sum();
        let weight: i64 = idx
            .iter()
            .enumerate()
            .map(|(i, &n)| (i as i64 + 1) * n as i64)
            .sum();
        let e = ctx.q(si * big_n * (big_n - 1) / 2 + weight);
        if e <= prec {
            let limit = prec - e;
            let mut body = ctx
                .poch_inv(neg_aqs, ctx.q(si), big_n as usize)?
                .truncate(limit);
            for &n in &idx {
                body = body.mul_trunc(&*ctx.poch_inv(qs, ctx.q(si), n)?, limit)?;
            }
            out.add_product_term(&body, &R::one(), crate::Mono::new(big_n as i32, 0), e);
        }
        // advance
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(&out * &ctx.poch_inf(neg_aqs, ctx.q(si))?);
            }
            idx[k] += 1;
            let big_n: i64 = idx.iter().map(|&n| n as i64).sum();
            let weight: i64 = idx
                .iter()
                .enumerate()
                .map(|(i, &n)| (i as i64 + 1) * n as i64)
                .sum();
            if ctx.q(si * big_n * (big_n - 1) / 2 + weight) <= prec {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Expands a named series. `prec` is in `t`; the denominator is 1 except for
/// the theta family, which lives at `D = 2s`.
pub fn named_series<R: Coefficient>(id: &str, s: Option<u32>, prec: i64) -> Result<QSeries<R>> {
    let one = SeriesCtx::<R>::new(1, prec);
    let c = &one;
    let q = |k: i64| qb(1, 1, k);
    let nq = |k: i64| qb(1, -1, k);
    match id {
        "G" => rr_g(c),
        "H" => rr_h(c),
        "rogers-g" | "rogers-h" => {
            let lin = if id == "rogers-g" { 0 } else { 2 };
            let spec = SumSpec::new(1, Quadratic::new(1, lin, 0)).over(q(4), 4, 1, 0);
            Ok(&c.sum(&spec)? * &c.poch_inf(nq(2), 2)?)
        }
        "f0" | "f1" => {
            let lin = if id == "f0" { 0 } else { 1 };
            c.sum(&SumSpec::new(1, Quadratic::new(1, lin, 0)).over(nq(1), 1, 1, 0))
        }
        "phi-mock" => c.sum(&SumSpec::new(1, Quadratic::new(1, 0, 0)).over(nq(2), 2, 1, 0)),
        "psi-mock" => c.sum(
            &SumSpec::new(1, Quadratic::new(1, 0, 0))
                .over(q(1), 2, 1, 0)
                .from(1),
        ),
        "phi-theta" => Ok(crate::series::specialize(
            &theta_sum(1, prec, 1, ThetaSide::Full, 1),
            &crate::series::Subst::value(R::one()),
            &R::one(),
            None,
        )?),
        "psi-product" => Ok(&c.poch_inf(q(2), 2)? * &c.poch_inf_inv(q(1), 2)?),
        "partition" => c.poch_inf_inv(q(1), 1),
        "euler" => c.poch_inf(q(1), 1),
        "a179080" => c.sum(
            &SumSpec::new(1, Quadratic::new(1, -1, 0).over(2))
                .over(q(2), 2, 1, 0)
                .from(1),
        ),
        "mcintosh-mu0" | "mcintosh-mu1" => {
            let mu = if id == "mcintosh-mu0" { 0 } else { 1 };
            c.sum(&mcintosh_lhs_spec(mu))
        }
        "theta" | "theta-pos" | "theta-nonpos" => {
            let s = need_s(s, id)?;
            let side = match id {
                "theta" => ThetaSide::Full,
                "theta-pos" => ThetaSide::Positive,
                _ => ThetaSide::NonPositive,
            };
            Ok(theta_sum(2 * s, prec, 1, side, 1))
        }
        "correction" => {
            let s = need_s(s, id)?;
            correction_term(&SeriesCtx::new(2 * s, prec), 1)
        }
        "bressoud-lhs" => bressoud_lhs(c, need_s(s, id)?),
        "bressoud-rhs" => bressoud_rhs(c, need_s(s, id)?),
        _ => Err(Error::Usage(format!("unknown series id {id:?}"))),
    }
}

/// `sum q^((2n+mu)(2n+mu+1)/2) / (q^2;q^2)_n` at `D = 1`.
pub fn mcintosh_lhs_spec(mu: i64) -> SumSpec {
    SumSpec::new(
        1,
        Quadratic::new(4, 2 * (2 * mu + 1), mu * (mu + 1)).over(2),
    )
    .over(qb(1, 1, 2), 2, 1, 0)
}

/// `sum (-1)^n q^(n(n+1)/2 - mu n) / (q^2;q^2)_n` at `D = 1`.
pub fn mcintosh_rhs_spec(mu: i64) -> SumSpec {
    SumSpec::new(1, Quadratic::new(1, 1 - 2 * mu, 0).over(2))
        .sign(1, 0)
        .over(qb(1, 1, 2), 2, 1, 0)
}
