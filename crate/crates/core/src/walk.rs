//! Evolution of a single walker on the integer line.
//!
//! A state is stored densely over the window of sites it can have reached;
//! the window grows by one site on each side per shift.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::coin::{coin_angle, is_reflecting, CoinMatrix};
use crate::error::{Error, Result};
use crate::fraction::Fraction;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Internal coin state. Index 0 is `L`, index 1 is `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    L,
    R,
}

impl Chirality {
    pub fn index(self) -> usize {
        match self {
            Chirality::L => 0,
            Chirality::R => 1,
        }
    }
}

/// Order of the two factors in one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum StepOrder {
    /// Coin, then shift (`U = WC`).
    #[default]
    WC,
    /// Shift, then coin (`U = CW`).
    CW,
}

/// A walk parameter given either exactly or as a plain real number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Param {
    Exact(Fraction),
    Approx(f64),
}

impl Param {
    pub fn to_f64(&self) -> f64 {
        match self {
            Param::Exact(f) => f.to_f64(),
            Param::Approx(x) => *x,
        }
    }
}

impl From<Fraction> for Param {
    fn from(f: Fraction) -> Self {
        Param::Exact(f)
    }
}

impl From<f64> for Param {
    fn from(x: f64) -> Self {
        Param::Approx(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    pub alpha: Param,
    pub theta: Param,
    pub order: StepOrder,
}

impl WalkParams {
    pub fn new(alpha: impl Into<Param>, theta: impl Into<Param>) -> Self {
        WalkParams {
            alpha: alpha.into(),
            theta: theta.into(),
            order: StepOrder::WC,
        }
    }

    pub fn exact(alpha: Fraction, theta: Fraction) -> Self {
        Self::new(alpha, theta)
    }

    pub fn with_order(mut self, order: StepOrder) -> Self {
        self.order = order;
        self
    }

    /// Both parameters are exact rationals. Confinement predictions and
    /// spectral features are only meaningful in this mode.
    pub fn is_exact(&self) -> bool {
        matches!((self.alpha, self.theta), (Param::Exact(_), Param::Exact(_)))
    }

    pub fn coin_at(&self, n: i64) -> Result<CoinMatrix> {
        match (self.alpha, self.theta) {
            (Param::Exact(a), Param::Exact(t)) => Ok(CoinMatrix::rotation(coin_angle(a, t, n)?)),
            (a, t) => Ok(CoinMatrix::rotation_turns_f64(
                a.to_f64() * n as f64 + t.to_f64(),
            )),
        }
    }
}

/// Amplitudes `(ψ(n;L), ψ(n;R))` over the window `[nmin, nmax]`.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkerState {
    nmin: i64,
    amps: Vec<[Complex64; 2]>,
    steps: u64,
}

/// `(|L⟩ + i|R⟩)/√2`
pub fn default_spinor() -> [Complex64; 2] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [Complex64::new(h, 0.0), Complex64::new(0.0, h)]
}

impl WalkerState {
    pub fn at_origin(spinor: [Complex64; 2]) -> Self {
        WalkerState {
            nmin: 0,
            amps: vec![spinor],
            steps: 0,
        }
    }

    /// The basis state `|n, ξ⟩`.
    pub fn basis(n: i64, chirality: Chirality) -> Self {
        let mut v = [ZERO; 2];
        v[chirality.index()] = Complex64::new(1.0, 0.0);
        WalkerState {
            nmin: n,
            amps: vec![v],
            steps: 0,
        }
    }

    /// State with the given amplitudes starting at site `nmin`.
    pub fn from_amplitudes(nmin: i64, amps: Vec<[Complex64; 2]>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::Validation("empty amplitude window".into()));
        }
        Ok(WalkerState {
            nmin,
            amps,
            steps: 0,
        })
    }

    pub fn window(&self) -> (i64, i64) {
        (self.nmin, self.nmin + self.amps.len() as i64 - 1)
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Amplitude pair at site `n`; zero outside the window.
    pub fn amplitude(&self, n: i64) -> [Complex64; 2] {
        usize::try_from(n - self.nmin)
            .ok()
            .and_then(|i| self.amps.get(i).copied())
            .unwrap_or([ZERO; 2])
    }

    /// `(n, [ψ(n;L), ψ(n;R)])` for every site in the window.
    pub fn sites(&self) -> impl Iterator<Item = (i64, [Complex64; 2])> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, v)| (self.nmin + i as i64, *v))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps
            .iter()
            .map(|v| v[0].norm_sqr() + v[1].norm_sqr())
            .sum()
    }

    /// Inner product `⟨self|other⟩`.
    pub fn inner(&self, other: &WalkerState) -> Complex64 {
        self.sites()
            .map(|(n, a)| {
                let b = other.amplitude(n);
                a[0].conj() * b[0] + a[1].conj() * b[1]
            })
            .sum()
    }

    /// Largest amplitude difference over the union of both windows.
    pub fn max_abs_diff(&self, other: &WalkerState) -> f64 {
        let (a0, a1) = self.window();
        let (b0, b1) = other.window();
        (a0.min(b0)..=a1.max(b1))
            .map(|n| {
                let (x, y) = (self.amplitude(n), other.amplitude(n));
                (x[0] - y[0]).norm().max((x[1] - y[1]).norm())
            })
            .fold(0.0, f64::max)
    }

    pub fn apply_coin(&self, params: &WalkParams) -> Result<WalkerState> {
        let amps = self
            .sites()
            .map(|(n, v)| Ok(params.coin_at(n)?.apply(v)))
            .collect::<Result<_>>()?;
        Ok(WalkerState {
            nmin: self.nmin,
            amps,
            steps: self.steps,
        })
    }

    /// `L` amplitudes hop to `n - 1`, `R` amplitudes to `n + 1`.
    pub fn apply_shift(&self) -> WalkerState {
        let mut amps = vec![[ZERO; 2]; self.amps.len() + 2];
        for (i, v) in self.amps.iter().enumerate() {
            // old site i sits at new index i + 1
            amps[i][0] = v[0];
            amps[i + 2][1] = v[1];
        }
        WalkerState {
            nmin: self.nmin - 1,
            amps,
            steps: self.steps,
        }
    }

    pub fn step(&self, params: &WalkParams) -> Result<WalkerState> {
        let mut next = match params.order {
            StepOrder::WC => self.apply_coin(params)?.apply_shift(),
            StepOrder::CW => self.apply_shift().apply_coin(params)?,
        };
        next.steps = self.steps + 1;
        Ok(next)
    }

    pub fn distribution(&self) -> Distribution {
        Distribution {
            nmin: self.nmin,
            probs: self
                .amps
                .iter()
                .map(|v| v[0].norm_sqr() + v[1].norm_sqr())
                .collect(),
            step: self.steps,
        }
    }
}

/// Iterated evolution with the site coins cached across steps.
#[derive(Debug, Clone)]
pub struct Walk {
    params: WalkParams,
    state: WalkerState,
    coin_min: i64,
    coins: Vec<CoinMatrix>,
}

impl Walk {
    pub fn new(params: WalkParams, initial: WalkerState) -> Self {
        Walk {
            params,
            coin_min: initial.nmin,
            coins: Vec::new(),
            state: initial,
        }
    }

    pub fn state(&self) -> &WalkerState {
        &self.state
    }

    pub fn into_state(self) -> WalkerState {
        self.state
    }

    pub fn params(&self) -> &WalkParams {
        &self.params
    }

    fn ensure_coins(&mut self, lo: i64, hi: i64) -> Result<()> {
        if self.coins.is_empty() {
            self.coin_min = lo;
            self.coins = (lo..=hi).map(|n| self.params.coin_at(n)).collect::<Result<_>>()?;
            return Ok(());
        }
        if lo < self.coin_min {
            let mut front = (lo..self.coin_min)
                .map(|n| self.params.coin_at(n))
                .collect::<Result<Vec<_>>>()?;
            front.append(&mut self.coins);
            self.coins = front;
            self.coin_min = lo;
        }
        let coin_max = self.coin_min + self.coins.len() as i64 - 1;
        for n in coin_max + 1..=hi {
            self.coins.push(self.params.coin_at(n)?);
        }
        Ok(())
    }

    /// Advances by one step in the configured order.
    pub fn advance(&mut self) -> Result<()> {
        let (lo, hi) = self.state.window();
        let (nmin, amps) = match self.params.order {
            StepOrder::WC => {
                self.ensure_coins(lo, hi)?;
                let off = (lo - self.coin_min) as usize;
                let mut amps = vec![[ZERO; 2]; self.state.amps.len() + 2];
                for (i, v) in self.state.amps.iter().enumerate() {
                    let w = self.coins[off + i].apply(*v);
                    amps[i][0] += w[0];
                    amps[i + 2][1] += w[1];
                }
                (lo - 1, amps)
            }
            StepOrder::CW => {
                self.ensure_coins(lo - 1, hi + 1)?;
                let off = (lo - 1 - self.coin_min) as usize;
                let old = &self.state.amps;
                let len = old.len() as i64;
                let at = |i: i64| if (0..len).contains(&i) { old[i as usize] } else { [ZERO; 2] };
                let amps = (0..len + 2)
                    .map(|j| {
                        // new index j is site lo - 1 + j, old index of that site is j - 1
                        let incoming = [at(j)[0], at(j - 2)[1]];
                        self.coins[off + j as usize].apply(incoming)
                    })
                    .collect();
                (lo - 1, amps)
            }
        };
        self.state = WalkerState {
            nmin,
            amps,
            steps: self.state.steps + 1,
        };
        Ok(())
    }

    pub fn advance_by(&mut self, steps: u64) -> Result<()> {
        for _ in 0..steps {
            self.advance()?;
        }
        Ok(())
    }
}

/// `t` steps of the walk from `initial` placed at the origin.
pub fn evolve(initial: [Complex64; 2], params: &WalkParams, steps: i64) -> Result<WalkerState> {
    let steps = u64::try_from(steps)
        .map_err(|_| Error::Validation(format!("step count must be nonnegative, got {steps}")))?;
    let mut walk = Walk::new(*params, WalkerState::at_origin(initial));
    walk.advance_by(steps)?;
    Ok(walk.into_state())
}

/// Position probabilities `Pr(n; t)` over a contiguous window.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    nmin: i64,
    probs: Vec<f64>,
    step: u64,
}

impl Distribution {
    pub fn from_map(map: &BTreeMap<i64, f64>, step: u64) -> Option<Self> {
        let (&lo, _) = map.first_key_value()?;
        let (&hi, _) = map.last_key_value()?;
        let probs = (lo..=hi).map(|n| map.get(&n).copied().unwrap_or(0.0)).collect();
        Some(Distribution {
            nmin: lo,
            probs,
            step,
        })
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn window(&self) -> (i64, i64) {
        (self.nmin, self.nmin + self.probs.len() as i64 - 1)
    }

    pub fn prob(&self, n: i64) -> f64 {
        usize::try_from(n - self.nmin)
            .ok()
            .and_then(|i| self.probs.get(i).copied())
            .unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, p)| (self.nmin + i as i64, *p))
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// `Σ n^k Pr(n)`. `k = 0` gives the total probability.
    pub fn moment(&self, k: u32) -> f64 {
        self.iter().map(|(n, p)| (n as f64).powi(k as i32) * p).sum()
    }

    /// Smallest interval holding every site with `Pr(n) > eps`.
    pub fn support(&self, eps: f64) -> Option<(i64, i64)> {
        let mut above = self.iter().filter(|&(_, p)| p > eps).map(|(n, _)| n);
        let first = above.next()?;
        Some((first, above.last().unwrap_or(first)))
    }
}

/// Default probability threshold for [`Distribution::support`].
pub const SUPPORT_EPS: f64 = 1e-12;

/// Nearest reflecting sites on each side of an origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Confinement {
    pub lower: Option<i64>,
    pub upper: Option<i64>,
}

impl Confinement {
    pub fn interval(&self) -> Option<(i64, i64)> {
        Some((self.lower?, self.upper?))
    }

    pub fn is_bounded(&self) -> bool {
        self.interval().is_some()
    }
}

/// Finds the closest reflecting sites (coin angle on `1/4` or `3/4` of a
/// turn) strictly left and strictly right of `origin`.
///
/// A walker started at `origin` never passes a reflecting site, so when
/// both exist the walk stays inside `[lower, upper]`. The coin angle is
/// periodic in `n` with period `den(alpha)`, so one period is searched on
/// each side.
pub fn confinement_predict(alpha: Fraction, theta: Fraction, origin: i64) -> Result<Confinement> {
    let period = alpha.den();
    let find = |dir: i64| -> Result<Option<i64>> {
        for k in 1..=period {
            let n = origin + dir * k;
            if is_reflecting(coin_angle(alpha, theta, n)?) {
                return Ok(Some(n));
            }
        }
        Ok(None)
    };
    Ok(Confinement {
        lower: find(-1)?,
        upper: find(1)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn f(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quarter() -> WalkParams {
        WalkParams::exact(f(1, 4), Fraction::ZERO)
    }

    #[test]
    fn coin_examples() {
        let p = quarter();
        let s = WalkerState::basis(0, Chirality::L).apply_coin(&p).unwrap();
        assert_eq!(s, WalkerState::basis(0, Chirality::L));

        let s = WalkerState::basis(1, Chirality::L).apply_coin(&p).unwrap();
        assert_eq!(s, WalkerState::basis(1, Chirality::R));

        let s = WalkerState::basis(1, Chirality::R).apply_coin(&p).unwrap();
        assert_eq!(s.amplitude(1), [c(-1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn shift_examples() {
        let s = WalkerState::basis(0, Chirality::L).apply_shift();
        assert_eq!(s.amplitude(-1), [c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(s.window(), (-1, 1));
        assert_eq!(s.distribution().support(SUPPORT_EPS), Some((-1, -1)));

        let s = WalkerState::basis(0, Chirality::R).apply_shift();
        assert_eq!(s.amplitude(1), [c(0.0, 0.0), c(1.0, 0.0)]);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = WalkerState::at_origin([c(h, 0.0), c(h, 0.0)]).apply_shift();
        assert_eq!(s.amplitude(-1), [c(h, 0.0), c(0.0, 0.0)]);
        assert_eq!(s.amplitude(0), [c(0.0, 0.0); 2]);
        assert_eq!(s.amplitude(1), [c(0.0, 0.0), c(h, 0.0)]);
    }

    #[test]
    fn step_examples() {
        let s = WalkerState::basis(0, Chirality::L).step(&quarter()).unwrap();
        assert_eq!(s.steps(), 1);
        assert_eq!(s.distribution().prob(-1), 1.0);

        // shift to |-1,L⟩ then the coin at -1 (angle 3/4) sends L to -R
        let cw = quarter().with_order(StepOrder::CW);
        let s = WalkerState::basis(0, Chirality::L).step(&cw).unwrap();
        let oracle = WalkerState::basis(0, Chirality::L)
            .apply_shift()
            .apply_coin(&quarter())
            .unwrap();
        assert_eq!(s.max_abs_diff(&oracle), 0.0);
        assert_eq!(s.amplitude(-1), [c(0.0, 0.0), c(-1.0, 0.0)]);

        // second step reflects at -1 and heads back toward the origin
        let s2 = WalkerState::basis(0, Chirality::L)
            .step(&quarter())
            .unwrap()
            .step(&quarter())
            .unwrap();
        assert_eq!(s2.amplitude(0), [c(0.0, 0.0), c(-1.0, 0.0)]);
    }

    #[test]
    fn walk_cache_matches_stepwise_evolution() {
        for order in [StepOrder::WC, StepOrder::CW] {
            for params in [
                WalkParams::exact(f(1, 3), f(1, 12)),
                WalkParams::exact(f(5, 12), Fraction::ZERO),
                WalkParams::new(0.618_033_988_749_895, 0.1),
            ] {
                let params = params.with_order(order);
                let mut walk = Walk::new(params, WalkerState::at_origin(default_spinor()));
                let mut state = WalkerState::at_origin(default_spinor());
                for _ in 0..40 {
                    walk.advance().unwrap();
                    state = state.step(&params).unwrap();
                    assert_eq!(walk.state().window(), state.window());
                    assert!(walk.state().max_abs_diff(&state) < 1e-14);
                }
            }
        }
    }

    #[test]
    fn evolve_examples() {
        let s = evolve(default_spinor(), &quarter(), 0).unwrap();
        assert_eq!(s, WalkerState::at_origin(default_spinor()));

        let s = evolve([c(1.0, 0.0), c(0.0, 0.0)], &quarter(), 1).unwrap();
        let d = s.distribution();
        assert_eq!(d.support(SUPPORT_EPS), Some((-1, -1)));
        assert_eq!(d.prob(-1), 1.0);

        assert!(matches!(
            evolve(default_spinor(), &quarter(), -1),
            Err(Error::Validation(_))
        ));

        let d = evolve(default_spinor(), &quarter(), 1000).unwrap().distribution();
        let (lo, hi) = d.support(SUPPORT_EPS).unwrap();
        assert!(lo >= -1 && hi <= 1);
    }

    #[test]
    fn distribution_examples() {
        let d = WalkerState::basis(-1, Chirality::L).distribution();
        assert_eq!(d.iter().filter(|&(_, p)| p > 0.0).collect::<Vec<_>>(), vec![(-1, 1.0)]);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let s = WalkerState::from_amplitudes(
            0,
            vec![[c(h, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(h, 0.0)]],
        )
        .unwrap();
        let d = s.distribution();
        assert_abs_diff_eq!(d.prob(0), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.prob(1), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(d.total(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn moment_examples() {
        let point = Distribution::from_map(&BTreeMap::from([(-1, 1.0)]), 0).unwrap();
        assert_eq!(point.moment(1), -1.0);
        let pair = Distribution::from_map(&BTreeMap::from([(-1, 0.5), (1, 0.5)]), 0).unwrap();
        assert_eq!(pair.moment(2), 1.0);
        assert_eq!(pair.moment(1), 0.0);

        let mut walk = Walk::new(quarter(), WalkerState::at_origin(default_spinor()));
        for _ in 0..200 {
            walk.advance().unwrap();
            assert!(walk.state().distribution().moment(2) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn support_examples() {
        let point = Distribution::from_map(&BTreeMap::from([(-1, 1.0)]), 0).unwrap();
        assert_eq!(point.support(SUPPORT_EPS), Some((-1, -1)));

        for (alpha, bound) in [(f(1, 4), 1), (f(5, 12), 3)] {
            let mut walk = Walk::new(
                WalkParams::exact(alpha, Fraction::ZERO),
                WalkerState::at_origin(default_spinor()),
            );
            for _ in 0..1000 {
                walk.advance().unwrap();
                let (lo, hi) = walk.state().distribution().support(SUPPORT_EPS).unwrap();
                assert!(lo >= -bound && hi <= bound, "alpha {alpha}: [{lo}, {hi}]");
            }
        }
    }

    #[test]
    fn confinement_examples() {
        let pred = |a, t| confinement_predict(a, t, 0).unwrap().interval();
        assert_eq!(pred(f(1, 4), Fraction::ZERO), Some((-1, 1)));
        assert_eq!(pred(f(5, 12), Fraction::ZERO), Some((-3, 3)));
        assert_eq!(pred(f(1, 3), f(1, 12)), Some((-1, 2)));
        // angles (2n+1)/6 never hit a quarter turn
        assert_eq!(pred(f(1, 3), f(1, 6)), None);
        assert_eq!(pred(f(1, 3), Fraction::ZERO), None);
    }

    #[test]
    fn confinement_when_origin_reflects() {
        // angle at 0 is 1/4; both halves leave the origin and stop at ±3
        let c = confinement_predict(f(1, 3), f(1, 4), 0).unwrap();
        assert_eq!(c.interval(), Some((-3, 3)));
        let d = evolve(default_spinor(), &WalkParams::exact(f(1, 3), f(1, 4)), 200)
            .unwrap()
            .distribution();
        let (lo, hi) = d.support(SUPPORT_EPS).unwrap();
        assert!(lo >= -3 && hi <= 3);
    }

    #[test]
    fn approximate_mode_is_flagged() {
        assert!(quarter().is_exact());
        assert!(!WalkParams::new(0.25, Fraction::ZERO).is_exact());
        let s = evolve(default_spinor(), &WalkParams::new(0.618_033_988_749_895, 0.0), 500).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }

    fn spinor() -> impl Strategy<Value = [Complex64; 2]> {
        (0.0..1.0f64, 0.0..std::f64::consts::TAU, 0.0..std::f64::consts::TAU).prop_map(|(t, a, b)| {
            [Complex64::from_polar(t.sqrt(), a), Complex64::from_polar((1.0 - t).sqrt(), b)]
        })
    }

    fn exact_params() -> impl Strategy<Value = WalkParams> {
        (1i64..=60, 1i64..=60, 0i64..24).prop_map(|(n, d, t)| {
            WalkParams::exact(Fraction::new(n, d).unwrap(), Fraction::new(t, 24).unwrap())
        })
    }

    fn random_state() -> impl Strategy<Value = WalkerState> {
        (-5i64..5, prop::collection::vec(spinor(), 1..12)).prop_map(|(nmin, amps)| {
            let s = WalkerState::from_amplitudes(nmin, amps).unwrap();
            let norm = s.norm_sqr().sqrt();
            let amps = s.sites().map(|(_, v)| [v[0] / norm, v[1] / norm]).collect();
            WalkerState::from_amplitudes(nmin, amps).unwrap()
        })
    }

    proptest! {
        #[test]
        fn norm_is_conserved(params in exact_params(), init in spinor(), t in 0i64..300) {
            for order in [StepOrder::WC, StepOrder::CW] {
                let s = evolve(init, &params.with_order(order), t).unwrap();
                prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
                prop_assert!((s.distribution().total() - 1.0).abs() < 1e-9);
                prop_assert_eq!(s.window(), (-t, t));
            }
        }

        #[test]
        fn support_within_predicted_interval(params in exact_params(), init in spinor()) {
            let (Param::Exact(a), Param::Exact(t)) = (params.alpha, params.theta) else { unreachable!() };
            let pred = confinement_predict(a, t, 0).unwrap();
            if let Some((lo, hi)) = pred.interval() {
                for order in [StepOrder::WC, StepOrder::CW] {
                    let mut walk = Walk::new(params.with_order(order), WalkerState::at_origin(init));
                    for _ in 0..150 {
                        walk.advance().unwrap();
                        let (a, b) = walk.state().distribution().support(SUPPORT_EPS).unwrap();
                        prop_assert!(a >= lo && b <= hi, "support [{}, {}] vs [{}, {}]", a, b, lo, hi);
                    }
                }
            }
        }

        // (WC)^t = W (CW)^(t-1) C
        #[test]
        fn orderings_are_related_by_one_coin(params in exact_params(), s in random_state(), t in 1u64..40) {
            let mut wc = Walk::new(params, s.clone());
            wc.advance_by(t).unwrap();

            let mut cw = Walk::new(params.with_order(StepOrder::CW), s.apply_coin(&params).unwrap());
            cw.advance_by(t - 1).unwrap();
            let other = cw.state().apply_shift();

            prop_assert!(wc.state().max_abs_diff(&other) < 1e-10);
        }
    }
}
