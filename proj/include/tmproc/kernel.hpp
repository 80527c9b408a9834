/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_KERNEL_HPP
#define TMPROC_KERNEL_HPP

#include <Eigen/Dense>

#include "tmproc/memory.hpp"

namespace tmproc {

using cmatrix = Eigen::MatrixXcd;
using dmatrix = Eigen::MatrixXd;

/// Discretized storage map. Columns act on coefficients in the probe basis
/// (or on sqrt(dt)-weighted grid samples for impulse probes); rows carry
/// sqrt(dz)-weighted spin-wave samples, so singular values are
/// measure-independent.
struct Kernel {
    cmatrix matrix;       // output (weighted spin-wave) x input (probe coefficient)
    SpaceGrid out_grid;
    TimeGrid in_grid;
    std::vector<TemporalEnvelope> probe_basis; // empty for impulse probes

    /// Spin-wave response to the input with the given probe coefficients.
    SpinWave apply(const Eigen::VectorXcd& coeffs) const;
    /// eta_stor for the given probe coefficients (unit-norm input).
    double efficiency(const Eigen::VectorXcd& coeffs) const;
    double max_singular_value() const;
};

struct KernelSVD {
    dvector singular_values;
    std::vector<TemporalEnvelope> input_modes;
    std::vector<SpinWave> output_modes;
    /// Frobenius-relative reconstruction residual at the retained rank.
    double reconstruction_residual = 0.0;
};

/// Probes the solver once per basis element and assembles the storage map.
/// The basis must be orthonormal (Gram deviation < 1e-6).
Kernel build_storage_kernel(const CouplingSpec& control, const MemoryParams& params,
                            const std::vector<TemporalEnvelope>& probe_basis);

/// Impulse-probe variant on the full time grid (columns = grid deltas,
/// weighted by sqrt(dt)); used for convergence studies.
Kernel build_storage_kernel_impulse(const CouplingSpec& control, const MemoryParams& params,
                                    const TimeGrid& grid);

KernelSVD svd(const Kernel& kernel, int rank);

/// eta_stor matrix: entry (n, m) stores signal_modes[n] with control_modes[m]
/// at coupling C. One kernel sweep per control.
dmatrix crosstalk_matrix(const std::vector<TemporalEnvelope>& signal_modes,
                         const std::vector<TemporalEnvelope>& control_modes,
                         double C, const MemoryParams& params, int jobs = 1);

/// Storage efficiencies of one superposed signal against each component
/// control (Table-1-style component filtering).
dvector component_filter_ratios(const TemporalEnvelope& superposition,
                                const std::vector<TemporalEnvelope>& component_controls,
                                double C, const MemoryParams& params);

} // namespace tmproc

#endif
