#include "tsmom/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "tsmom/errors.hpp"

namespace tsmom {

namespace {

// SplitMix64 mixer; decorrelates (seed, asset_index) pairs into engine seeds.
std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Normal deviates via Box-Muller over explicit 53-bit uniforms. The engine's
// output sequence is pinned by the standard, so the same seed reproduces the
// same series on any platform with the same libm.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log1p(-u1));  // u1 < 1 always
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform() {  // [0, 1), 53 bits
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace

ReturnSeries gen_ar1(const Ar1Spec& spec) {
    if (!(std::fabs(spec.phi) < 1.0)) throw Error("AR(1) requires |phi| < 1");
    if (spec.sigma < 0.0) throw Error("sigma must be >= 0");
    if (spec.months < 1) throw Error("series length must be >= 1");

    NormalStream rng(splitmix64(spec.seed ^ splitmix64(static_cast<std::uint64_t>(
                                    static_cast<std::int64_t>(spec.asset_index)))));

    std::vector<double> out;
    out.reserve(spec.months);
    const double stationary_sd = spec.sigma / std::sqrt(1.0 - spec.phi * spec.phi);
    double r = spec.mu + stationary_sd * rng.next();
    out.push_back(r);
    for (int t = 1; t < spec.months; ++t) {
        r = spec.mu + spec.phi * (r - spec.mu) + spec.sigma * rng.next();
        out.push_back(r);
    }
    return ReturnSeries(spec.asset, spec.start, std::move(out));
}

ReturnSeries gen_rw(double mu, double sigma, int months, std::uint64_t seed, int asset_index,
                    MonthStamp start, std::string asset) {
    Ar1Spec spec;
    spec.phi = 0.0;
    spec.mu = mu;
    spec.sigma = sigma;
    spec.months = months;
    spec.seed = seed;
    spec.asset_index = asset_index;
    spec.start = start;
    spec.asset = std::move(asset);
    return gen_ar1(spec);
}

}  // namespace tsmom
