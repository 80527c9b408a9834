/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/counts.hpp"

#include <cmath>

namespace tmproc {

EfficiencyEstimate efficiencies_from_counts(const CountRecord& rec) {
    EfficiencyEstimate est;
    // background subtraction precedes clamping; raw values retained
    const double ref = rec.n_ref - rec.n_background;
    const double leak = rec.n_leak - rec.n_background;
    const double ret = rec.n_ret - rec.n_background;
    if (ref <= 0.0)
        throw Error(Errc::zero_reference, "efficiencies_from_counts: no reference counts");

    est.eta_stor_raw = (ref - leak) / ref;
    est.eta_tot_raw = ret / ref;
    est.eta_stor = est.eta_stor_raw;
    est.eta_tot = est.eta_tot_raw;
    auto clamp01 = [&est](double& v) {
        if (v < 0.0) { v = 0.0; est.clamped = true; }
        if (v > 1.0) { v = 1.0; est.clamped = true; }
    };
    if (leak < 0.0 || ret < 0.0) est.clamped = true;
    clamp01(est.eta_stor);
    clamp01(est.eta_tot);
    return est;
}

SubsetStatistics subset_statistics(const std::vector<CountRecord>& stream,
                                   std::size_t n_subsets, double subset_size) {
    SubsetStatistics out;
    dvector stors, tots;
    CountRecord acc;
    for (const auto& rec : stream) {
        acc.n_ref += rec.n_ref;
        acc.n_leak += rec.n_leak;
        acc.n_ret += rec.n_ret;
        acc.n_background += rec.n_background;
        if (acc.n_ref >= subset_size) {
            const EfficiencyEstimate e = efficiencies_from_counts(acc);
            stors.push_back(e.eta_stor);
            tots.push_back(e.eta_tot);
            acc = CountRecord{};
            if (stors.size() == n_subsets) break;
        }
    }
    if (stors.size() < n_subsets)
        throw Error(Errc::insufficient_counts,
                    "subset_statistics: stream too short for requested subsets");

    auto mean_std = [](const dvector& v, double& mean, double& sd) {
        mean = 0.0;
        for (double x : v) mean += x;
        mean /= double(v.size());
        sd = 0.0;
        for (double x : v) sd += (x - mean) * (x - mean);
        sd = v.size() > 1 ? std::sqrt(sd / double(v.size() - 1)) : 0.0;
    };
    mean_std(stors, out.eta_stor_mean, out.eta_stor_std);
    mean_std(tots, out.eta_tot_mean, out.eta_tot_std);
    out.n_subsets = stors.size();
    return out;
}

CountRecord poissonize(double eta_stor, double eta_tot, double n_photons,
                       double background, std::uint64_t seed) {
    if (!(n_photons > 0.0))
        throw Error(Errc::invalid_argument, "poissonize: n_photons must be positive");
    Rng rng(seed);
    CountRecord rec;
    rec.n_ref = double(rng.poisson(n_photons)) + background;
    rec.n_leak = double(rng.poisson(n_photons * (1.0 - eta_stor))) + background;
    rec.n_ret = double(rng.poisson(n_photons * eta_tot)) + background;
    rec.n_background = background;
    return rec;
}

} // namespace tmproc
