#pragma once

#include <cstdint>

#include "tsmom/series.hpp"

namespace tsmom {

/// Seeded AR(1) monthly return generator:
///   r_t = mu + phi * (r_{t-1} - mu) + eps_t,   eps_t ~ iid N(0, sigma^2)
/// with r_0 drawn from the stationary distribution N(mu, sigma^2/(1-phi^2)).
///
/// Randomness comes from a per-asset mt19937_64 stream (seed mixed with the
/// asset index through SplitMix64) and a hand-rolled Box-Muller transform
/// over explicit 53-bit uniforms, so identical (seed, spec) reproduce the
/// series bit for bit and multi-asset panels are order independent.
struct Ar1Spec {
    double phi = 0.0;    // |phi| < 1
    double mu = 0.0;     // unconditional monthly mean
    double sigma = 0.0;  // innovation standard deviation, >= 0
    int months = 0;      // series length T >= 1
    std::uint64_t seed = 0;
    int asset_index = 0;              // stream selector within a panel
    MonthStamp start{2000, 1};        // calendar anchor, cosmetic
    std::string asset = "SYN";
};

ReturnSeries gen_ar1(const Ar1Spec& spec);

/// Random walk in levels: iid returns mu + eps_t (gen_ar1 with phi = 0).
ReturnSeries gen_rw(double mu, double sigma, int months, std::uint64_t seed,
                    int asset_index = 0, MonthStamp start = MonthStamp{2000, 1},
                    std::string asset = "SYN");

}  // namespace tsmom
