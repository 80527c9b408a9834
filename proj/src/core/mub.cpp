/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/mub.hpp"

#include <cmath>

namespace tmproc {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int k = 2; k * k <= n; ++k)
        if (n % k == 0) return false;
    return true;
}

MubSet generate_mubs(int dim) {
    if (!is_prime(dim))
        throw Error(Errc::non_prime_dimension, "generate_mubs: dimension must be prime");

    MubSet set;
    set.dim = dim;
    set.bases.reserve(std::size_t(dim) + 1);
    set.bases.push_back(Eigen::MatrixXcd::Identity(dim, dim));

    if (dim == 2) {
        Eigen::MatrixXcd x(2, 2), y(2, 2);
        const double s = 1.0 / std::sqrt(2.0);
        x << s, s, s, -s;
        y << s, s, cplx(0, s), cplx(0, -s);
        set.bases.push_back(x);
        set.bases.push_back(y);
        return set;
    }

    // odd prime: columns v^(a,b)_k = omega^(a k^2 + b k) / sqrt(d)
    const double norm = 1.0 / std::sqrt(double(dim));
    for (int a = 0; a < dim; ++a) {
        Eigen::MatrixXcd B(dim, dim);
        for (int b = 0; b < dim; ++b)
            for (int k = 0; k < dim; ++k) {
                const int e = (a * k * k + b * k) % dim;
                B(k, b) = norm * std::polar(1.0, 2.0 * M_PI * double(e) / double(dim));
            }
        set.bases.push_back(B);
    }
    return set;
}

} // namespace tmproc
