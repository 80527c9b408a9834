/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_KROTOV_HPP
#define TMPROC_KROTOV_HPP

#include <optional>

#include "tmproc/kernel.hpp"
#include "tmproc/memory.hpp"

namespace tmproc {

struct OptimizationConfig {
    int max_iters = 500;
    double tol = 1e-6;        // relative efficiency improvement threshold
    double step_scale = 1.0;  // multiplies the normalized gradient step
    std::optional<TemporalEnvelope> seed_control; // default: matched standard control
};

struct OptimizationIterate {
    double eta_stor = 0.0;
    double control_energy = 0.0;
    double update_norm = 0.0;
};

struct OptimizationTrace {
    std::vector<OptimizationIterate> iterations;
    CouplingSpec final_control;
    bool converged = false;
};

/// Iterative write-control optimization at fixed pulse energy: forward
/// storage propagation, adjoint propagation seeded by the stored spin wave,
/// pointwise complex control update along the efficiency gradient,
/// renormalization to the configured energy. Monotonic via step halving.
std::pair<CouplingSpec, OptimizationTrace>
optimize_write_control(const TemporalEnvelope& target_signal, double C,
                       const MemoryParams& params, const OptimizationConfig& config = {});

/// Efficiency gradient of storage with respect to the complex Rabi samples
/// (adjoint method); exposed for finite-difference validation.
cvector storage_gradient(const TemporalEnvelope& signal, const TemporalEnvelope& rabi,
                         const MemoryParams& params, double* eta_out = nullptr);

struct OptimizedCrosstalkReport {
    dmatrix standard;                      // eta matrix with standard controls
    dmatrix optimized;                     // eta matrix with optimized controls
    std::vector<CouplingSpec> controls;    // per-mode optimized write controls
};

/// Per-mode optimized controls and the resulting crosstalk matrices at one
/// coupling strength.
OptimizedCrosstalkReport
optimized_crosstalk_study(const std::vector<TemporalEnvelope>& modes, double C,
                          const MemoryParams& params, const OptimizationConfig& config = {},
                          int jobs = 1);

} // namespace tmproc

#endif
