/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_COUNTS_HPP
#define TMPROC_COUNTS_HPP

#include <cstdint>

#include "tmproc/rng.hpp"
#include "tmproc/types.hpp"

namespace tmproc {

/// Integrated detector counts for one efficiency measurement.
struct CountRecord {
    double n_ref = 0.0;
    double n_leak = 0.0;
    double n_ret = 0.0;
    double n_background = 0.0;
};

struct EfficiencyEstimate {
    double eta_stor = 0.0;
    double eta_tot = 0.0;
    bool clamped = false; // background subtraction or ratio hit a bound
    double eta_stor_raw = 0.0;
    double eta_tot_raw = 0.0;
};

/// eta_stor = (N_ref - N_leak)/N_ref, eta_tot = N_ret/N_ref, background
/// subtracted first, results clamped to [0, 1] with a flag.
EfficiencyEstimate efficiencies_from_counts(const CountRecord& rec);

struct SubsetStatistics {
    double eta_stor_mean = 0.0, eta_stor_std = 0.0;
    double eta_tot_mean = 0.0, eta_tot_std = 0.0;
    std::size_t n_subsets = 0;
};

/// Splits a per-trial count stream into subsets of subset_size reference
/// counts each and reports mean and sample standard deviation of the
/// per-subset efficiencies.
SubsetStatistics subset_statistics(const std::vector<CountRecord>& stream,
                                   std::size_t n_subsets = 50,
                                   double subset_size = 1e5);

/// Draws Poisson counts with means (n, n(1-eta_stor), n*eta_tot, background).
CountRecord poissonize(double eta_stor, double eta_tot, double n_photons,
                       double background, std::uint64_t seed);

} // namespace tmproc

#endif
