/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_MUB_HPP
#define TMPROC_MUB_HPP

#include <Eigen/Dense>

#include "tmproc/types.hpp"

namespace tmproc {

/// Mutually unbiased bases for prime dimension: the computational basis
/// plus d quadratic-phase Fourier bases (d odd prime); the three Pauli
/// bases for d = 2. States are columns.
struct MubSet {
    int dim = 0;
    std::vector<Eigen::MatrixXcd> bases; // (dim+1) matrices, states in columns

    std::size_t n_states() const { return bases.size() * std::size_t(dim); }
    /// State j of basis b as a coefficient vector.
    Eigen::VectorXcd state(std::size_t b, std::size_t j) const { return bases[b].col(Eigen::Index(j)); }
    /// Flat state index -> (basis, index) with row-major layout.
    Eigen::VectorXcd state(std::size_t flat) const {
        return state(flat / std::size_t(dim), flat % std::size_t(dim));
    }
};

bool is_prime(int n);

MubSet generate_mubs(int dim);

} // namespace tmproc

#endif
