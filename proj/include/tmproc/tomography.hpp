/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_TOMOGRAPHY_HPP
#define TMPROC_TOMOGRAPHY_HPP

#include <cstdint>
#include <optional>

#include "tmproc/kernel.hpp"
#include "tmproc/mub.hpp"

namespace tmproc {

/// Hermitian PSD quadratic form on the signal (x) conjugate-control space:
/// eta(s, c) = (s (x) conj(c))^dag P (s (x) conj(c)). Index layout
/// (n_signal * dim + m_control).
struct ProcessMatrix {
    int dim = 0;
    cmatrix matrix; // dim^2 x dim^2

    void validate(double psd_tol = 1e-8) const;
    /// Reduced matrix on the signal space for a fixed control state.
    cmatrix control_slice(const Eigen::VectorXcd& control) const;
    double trace() const { return matrix.trace().real(); }
    ProcessMatrix normalized_by(double eta) const;
};

/// Rank-one ideal single-mode filter with matched efficiency eta:
/// P = eta * dim * |w><w|, w = (1/sqrt(dim)) sum_k |kk>.
ProcessMatrix ideal_filter(int dim, double eta);

double forward_efficiency(const ProcessMatrix& P, const Eigen::VectorXcd& signal,
                          const Eigen::VectorXcd& control);

struct EfficiencyRecord {
    Eigen::VectorXcd signal;
    Eigen::VectorXcd control;
    double eta = 0.0;
    double sigma = 0.0; // 0 -> uniform weighting
    int signal_basis = -1, signal_index = -1;
    int control_basis = -1, control_index = -1;
};

struct EfficiencyDataset {
    int dim = 0;
    std::vector<EfficiencyRecord> records;
};

struct NoiseSpec {
    double multiplicative = 0.0; // relative gaussian level
    double n_photons = 0.0;      // > 0 enables Poisson count noise
    std::uint64_t seed = 0;
};

/// How control superpositions are realized when probing the solver:
/// `superposed` synthesizes the physical control envelope for each probe
/// state; `bilinear` extends the per-basis-control responses linearly in
/// the conjugate control coefficients (the kernel-level model).
enum class ControlModel { superposed, bilinear };

/// Storage efficiencies for all (dim(dim+1))^2 MUB signal/control pairs of
/// the memory at coupling C, probing the solver once per control state and
/// once per basis signal (exact in the signal by linearity).
EfficiencyDataset simulate_mub_dataset(double C, const MemoryParams& params,
                                       const MubSet& mubs,
                                       const std::vector<TemporalEnvelope>& mode_basis,
                                       const std::optional<NoiseSpec>& noise = std::nullopt,
                                       ControlModel model = ControlModel::superposed,
                                       int jobs = 1);

/// Dataset pattern of an ideal single-mode filter (bypasses the solver).
EfficiencyDataset ideal_mub_dataset(const MubSet& mubs, double eta);

/// Dataset generated from an arbitrary quadratic form (for tests).
EfficiencyDataset dataset_from_process(const ProcessMatrix& P, const MubSet& mubs);

struct ReconstructOptions {
    int max_iters = 10000;
    double tol = 1e-10;       // relative objective improvement
    int restarts = 5;
    std::uint64_t seed = 1234;
    bool enforce_trace_constraint = true; // signal-sum trace structure
};

struct ReconstructResult {
    ProcessMatrix P;
    double objective = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// Constrained maximum-likelihood fit (Gaussian, least squares for uniform
/// sigma) over {Hermitian, PSD, eigenvalues <= dim, trace structure fixed
/// from the summed measured efficiencies}, parametrized as P = T^dag T with
/// T lower-triangular; projected gradient descent with backtracking and
/// deterministic seeded restarts.
ReconstructResult reconstruct(const EfficiencyDataset& dataset, int dim,
                              const ReconstructOptions& opts = {});

/// Free real parameters of the constrained parametrization: dim^4 less the
/// numerically determined rank of the active trace-structure constraints.
int constrained_parameter_count(int dim);

/// Uhlmann fidelity F = (Tr sqrt(sqrt(A) B sqrt(A)))^2 of the
/// trace-normalized inputs.
double fidelity(const ProcessMatrix& a, const ProcessMatrix& b);

/// kappa = max eigenvalue of P_Omega over Tr(P_Omega); throws
/// not_applicable when the slice has no weight.
double single_modeness(const ProcessMatrix& P, const Eigen::VectorXcd& control);

/// Seeded ensemble of unit vectors uniform on the complex dim-sphere.
std::vector<Eigen::VectorXcd> random_control_ensemble(int dim, int count,
                                                      std::uint64_t seed);

/// Mean and standard deviation of single_modeness over an ensemble.
std::pair<double, double> mean_single_modeness(const ProcessMatrix& P,
                                               const std::vector<Eigen::VectorXcd>& ensemble);

/// Draws a random process matrix satisfying the reconstruction constraint
/// set (PSD, eigenvalues <= dim, signal-sum trace structure).
ProcessMatrix random_process_matrix(int dim, double trace_target, std::uint64_t seed);

} // namespace tmproc

#endif
