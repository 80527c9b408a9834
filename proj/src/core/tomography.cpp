/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/tomography.hpp"

#include <cmath>

#include "tmproc/parallel.hpp"
#include "tmproc/rng.hpp"

namespace tmproc {

namespace {

Eigen::VectorXcd probe_vector(const Eigen::VectorXcd& signal, const Eigen::VectorXcd& control) {
    const int d = int(signal.size());
    Eigen::VectorXcd v(d * d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) v(n * d + m) = signal(n) * std::conj(control(m));
    return v;
}

cmatrix hermitize(const cmatrix& m) { return 0.5 * (m + m.adjoint()); }

// clip eigenvalues into [0, cap]
cmatrix psd_clip(const cmatrix& m, double cap) {
    Eigen::SelfAdjointEigenSolver<cmatrix> es(hermitize(m));
    Eigen::VectorXd ev = es.eigenvalues();
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        ev(i) = std::min(std::max(ev(i), 0.0), cap);
    return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// partial trace over the signal index: result (m, m') = sum_n P[(n,m),(n,m')]
cmatrix trace_signal(const cmatrix& P, int d) {
    cmatrix T = cmatrix::Zero(d, d);
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m)
            for (int q = 0; q < d; ++q) T(m, q) += P(n * d + m, n * d + q);
    return T;
}

// orthogonal projection onto {Tr_sig P = t I}
cmatrix project_trace_structure(const cmatrix& P, int d, double t) {
    const cmatrix T = trace_signal(P, d);
    const cmatrix corr = (T - t * cmatrix::Identity(d, d)) / double(d);
    cmatrix out = P;
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m)
            for (int q = 0; q < d; ++q) out(n * d + m, n * d + q) -= corr(m, q);
    return out;
}

// Dykstra alternating projection onto PSD(cap) intersect trace structure
cmatrix project_feasible(const cmatrix& P0, int d, double t, double cap, bool trace_on,
                         int rounds = 60) {
    if (!trace_on) return psd_clip(P0, cap);
    cmatrix x = P0;
    cmatrix p = cmatrix::Zero(P0.rows(), P0.cols());
    cmatrix q = p;
    for (int r = 0; r < rounds; ++r) {
        const cmatrix y = psd_clip(x + p, cap);
        p = x + p - y;
        const cmatrix x2 = project_trace_structure(y + q, d, t);
        q = y + q - x2;
        if ((x2 - x).norm() < 1e-13 * std::max(1.0, x.norm())) { x = x2; break; }
        x = x2;
    }
    return hermitize(x);
}

// lower-triangular factor of a PSD matrix (jittered Cholesky)
cmatrix cholesky_factor(const cmatrix& P) {
    const double jitter = 1e-13 * std::max(1.0, P.trace().real());
    cmatrix A = hermitize(P) + jitter * cmatrix::Identity(P.rows(), P.cols());
    Eigen::LLT<cmatrix> llt(A);
    if (llt.info() != Eigen::Success) {
        // fall back through an eigen clip
        A = psd_clip(P, std::numeric_limits<double>::infinity()) +
            1e-12 * cmatrix::Identity(P.rows(), P.cols());
        llt.compute(A);
    }
    return cmatrix(llt.matrixL()).adjoint(); // upper factor; T^dag T = P
}

} // namespace

void ProcessMatrix::validate(double psd_tol) const {
    if (matrix.rows() != dim * dim || matrix.cols() != dim * dim)
        throw Error(Errc::invalid_argument, "ProcessMatrix: wrong shape");
    if ((matrix - matrix.adjoint()).norm() > 1e-10 * std::max(1.0, matrix.norm()))
        throw Error(Errc::invalid_argument, "ProcessMatrix: not Hermitian");
    Eigen::SelfAdjointEigenSolver<cmatrix> es(matrix);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw Error(Errc::non_psd, "ProcessMatrix: negative eigenvalue");
    if (es.eigenvalues().maxCoeff() > double(dim) * (1.0 + 1e-6))
        throw Error(Errc::invalid_argument, "ProcessMatrix: eigenvalue above dim cap");
}

cmatrix ProcessMatrix::control_slice(const Eigen::VectorXcd& control) const {
    cmatrix PO = cmatrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
        for (int p = 0; p < dim; ++p) {
            cplx acc = 0.0;
            for (int m = 0; m < dim; ++m)
                for (int q = 0; q < dim; ++q)
                    acc += control(m) * matrix(n * dim + m, p * dim + q) * std::conj(control(q));
            PO(n, p) = acc;
        }
    return PO;
}

ProcessMatrix ProcessMatrix::normalized_by(double eta) const {
    if (!(eta > 0.0))
        throw Error(Errc::invalid_argument, "ProcessMatrix: normalization by non-positive eta");
    ProcessMatrix q;
    q.dim = dim;
    q.matrix = matrix / eta;
    return q;
}

ProcessMatrix ideal_filter(int dim, double eta) {
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(dim * dim);
    for (int k = 0; k < dim; ++k) w(k * dim + k) = 1.0 / std::sqrt(double(dim));
    ProcessMatrix p;
    p.dim = dim;
    p.matrix = eta * double(dim) * (w * w.adjoint());
    return p;
}

double forward_efficiency(const ProcessMatrix& P, const Eigen::VectorXcd& signal,
                          const Eigen::VectorXcd& control) {
    if (signal.size() != P.dim || control.size() != P.dim)
        throw Error(Errc::invalid_argument, "forward_efficiency: dimension mismatch");
    const Eigen::VectorXcd v = probe_vector(signal, control);
    return std::real(v.dot(P.matrix * v));
}

EfficiencyDataset ideal_mub_dataset(const MubSet& mubs, double eta) {
    return dataset_from_process(ideal_filter(mubs.dim, eta), mubs);
}

EfficiencyDataset dataset_from_process(const ProcessMatrix& P, const MubSet& mubs) {
    EfficiencyDataset ds;
    ds.dim = mubs.dim;
    const std::size_t ns = mubs.n_states();
    for (std::size_t ci = 0; ci < ns; ++ci)
        for (std::size_t si = 0; si < ns; ++si) {
            EfficiencyRecord rec;
            rec.signal = mubs.state(si);
            rec.control = mubs.state(ci);
            rec.signal_basis = int(si) / mubs.dim;
            rec.signal_index = int(si) % mubs.dim;
            rec.control_basis = int(ci) / mubs.dim;
            rec.control_index = int(ci) % mubs.dim;
            rec.eta = forward_efficiency(P, rec.signal, rec.control);
            ds.records.push_back(std::move(rec));
        }
    return ds;
}

EfficiencyDataset simulate_mub_dataset(double C, const MemoryParams& params,
                                       const MubSet& mubs,
                                       const std::vector<TemporalEnvelope>& mode_basis,
                                       const std::optional<NoiseSpec>& noise,
                                       ControlModel model, int jobs) {
    const int d = mubs.dim;
    if (int(mode_basis.size()) < d)
        throw Error(Errc::invalid_argument, "simulate_mub_dataset: basis smaller than dim");
    const std::size_t ns = mubs.n_states();

    // spin-wave responses of each basis signal for each control state
    std::vector<cmatrix> response(ns); // nz x d
    if (model == ControlModel::bilinear) {
        // probe basis controls once; extend linearly in conj(control coeffs)
        std::vector<cmatrix> base(d);
        parallel_for(std::size_t(d), jobs, [&](std::size_t m) {
            const CouplingSpec spec = CouplingSpec::from_shape(C, mode_basis[m]);
            cmatrix R(params.nz, d);
            for (int n = 0; n < d; ++n) {
                const StoreResult r = store(mode_basis[std::size_t(n)], spec, params);
                for (std::size_t j = 0; j < params.nz; ++j)
                    R(Eigen::Index(j), n) = r.spinwave[j];
            }
            base[m] = std::move(R);
        });
        for (std::size_t ci = 0; ci < ns; ++ci) {
            const Eigen::VectorXcd c = mubs.state(ci);
            cmatrix R = cmatrix::Zero(params.nz, d);
            for (int m = 0; m < d; ++m) R += std::conj(c(m)) * base[std::size_t(m)];
            response[ci] = std::move(R);
        }
    } else {
        parallel_for(ns, jobs, [&](std::size_t ci) {
            const Eigen::VectorXcd c = mubs.state(ci);
            std::vector<std::pair<cplx, TemporalEnvelope>> terms;
            for (int m = 0; m < d; ++m) terms.emplace_back(c(m), mode_basis[std::size_t(m)]);
            const TemporalEnvelope env = superpose(terms).normalized();
            const CouplingSpec spec = CouplingSpec::from_shape(C, env);
            cmatrix R(params.nz, d);
            for (int n = 0; n < d; ++n) {
                const StoreResult r = store(mode_basis[std::size_t(n)], spec, params);
                for (std::size_t j = 0; j < params.nz; ++j)
                    R(Eigen::Index(j), n) = r.spinwave[j];
            }
            response[ci] = std::move(R);
        });
    }

    const double dz = params.space_grid().dz();
    EfficiencyDataset ds;
    ds.dim = d;
    ds.records.reserve(ns * ns);
    for (std::size_t ci = 0; ci < ns; ++ci)
        for (std::size_t si = 0; si < ns; ++si) {
            EfficiencyRecord rec;
            rec.signal = mubs.state(si);
            rec.control = mubs.state(ci);
            rec.signal_basis = int(si) / d;
            rec.signal_index = int(si) % d;
            rec.control_basis = int(ci) / d;
            rec.control_index = int(ci) % d;
            const Eigen::VectorXcd b = response[ci] * rec.signal;
            rec.eta = b.squaredNorm() * dz;
            ds.records.push_back(std::move(rec));
        }

    if (noise && (noise->multiplicative > 0.0 || noise->n_photons > 0.0)) {
        Rng rng(noise->seed);
        for (auto& rec : ds.records) {
            double eta = rec.eta;
            if (noise->multiplicative > 0.0) {
                eta *= 1.0 + noise->multiplicative * rng.gaussian();
                rec.sigma = std::max(rec.sigma, noise->multiplicative * rec.eta);
            }
            if (noise->n_photons > 0.0) {
                const double n = noise->n_photons;
                const double leak = double(rng.poisson(n * std::max(0.0, 1.0 - eta)));
                const double ref = double(rng.poisson(n));
                eta = ref > 0.0 ? std::max(0.0, (ref - leak) / ref) : 0.0;
                rec.sigma = std::hypot(rec.sigma, std::sqrt(std::max(eta * (1.0 - eta), 1e-12) / n));
            }
            rec.eta = std::min(std::max(eta, 0.0), 1.0);
        }
    }
    return ds;
}

int constrained_parameter_count(int dim) {
    // rank of the affine constraint map P -> [Tr_sig P - (Tr P / d) I, Tr P]
    // over a real basis of Hermitian matrices
    const int n = dim * dim;
    std::vector<cmatrix> basis;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            cmatrix h = cmatrix::Zero(n, n);
            if (i == j) {
                h(i, j) = 1.0;
                basis.push_back(h);
            } else {
                h(i, j) = h(j, i) = 1.0;
                basis.push_back(h);
                h(i, j) = cplx(0, 1);
                h(j, i) = cplx(0, -1);
                basis.push_back(h);
            }
        }
    dmatrix J(dim * dim + 1, int(basis.size()));
    for (std::size_t b = 0; b < basis.size(); ++b) {
        const cmatrix T = trace_signal(basis[b], dim) -
                          (basis[b].trace() / double(dim)) * cmatrix::Identity(dim, dim);
        int r = 0;
        for (int m = 0; m < dim; ++m)
            for (int q = m; q < dim; ++q) {
                if (m == q) {
                    J(r++, int(b)) = T(m, q).real();
                } else {
                    J(r++, int(b)) = T(m, q).real() + T(q, m).real();
                }
            }
        // fill the remaining imaginary-part rows
        for (int m = 0; m < dim && r < dim * dim; ++m)
            for (int q = m + 1; q < dim && r < dim * dim; ++q)
                J(r++, int(b)) = T(m, q).imag() - T(q, m).imag();
        J(dim * dim, int(b)) = basis[b].trace().real();
    }
    Eigen::ColPivHouseholderQR<dmatrix> qr(J);
    qr.setThreshold(1e-9);
    return int(basis.size()) - int(qr.rank());
}

ReconstructResult reconstruct(const EfficiencyDataset& dataset, int dim,
                              const ReconstructOptions& opts) {
    const int n = dim * dim;
    const std::size_t nrec = dataset.records.size();
    if (nrec < std::size_t(n))
        throw Error(Errc::underdetermined, "reconstruct: dataset too small");

    // design rows W_r and targets; eta_model = Re sum_ij P_ij W_ij
    std::vector<cmatrix> rows(nrec);
    Eigen::VectorXd y(nrec), wgt(nrec);
    double sigma_ref = 0.0;
    for (const auto& rec : dataset.records) sigma_ref = std::max(sigma_ref, rec.sigma);
    for (std::size_t r = 0; r < nrec; ++r) {
        const auto& rec = dataset.records[r];
        const Eigen::VectorXcd v = probe_vector(rec.signal, rec.control);
        rows[r] = v.conjugate() * v.transpose();
        y(r) = rec.eta;
        wgt(r) = (sigma_ref > 0.0 && rec.sigma > 0.0)
                     ? 1.0 / (rec.sigma * rec.sigma)
                     : (sigma_ref > 0.0 ? 1.0 / (sigma_ref * sigma_ref) : 1.0);
    }
    // completeness: rank of the design over the real Hermitian parametrization
    {
        dmatrix D(nrec, std::size_t(n) * n);
        for (std::size_t r = 0; r < nrec; ++r) {
            int col = 0;
            for (int i = 0; i < n; ++i) D(int(r), col++) = rows[r](i, i).real();
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    D(int(r), col++) = 2.0 * rows[r](i, j).real();
                    D(int(r), col++) = -2.0 * rows[r](i, j).imag();
                }
        }
        Eigen::ColPivHouseholderQR<dmatrix> qr(D);
        qr.setThreshold(1e-10);
        if (int(qr.rank()) < n * n - (n + 1))
            throw Error(Errc::underdetermined, "reconstruct: probe set not informationally complete");
    }

    // trace target from the computational-basis block
    double t0 = 0.0;
    {
        int cnt = 0;
        for (const auto& rec : dataset.records)
            if (rec.signal_basis == 0 && rec.control_basis == 0) {
                t0 += rec.eta;
                ++cnt;
            }
        if (cnt == 0) {
            for (const auto& rec : dataset.records) t0 += rec.eta;
            t0 *= double(n) / double(nrec); // generic fallback
        }
    }
    const double t_struct = t0 / double(dim);
    const double cap = double(dim);

    auto objective_and_grad = [&](const cmatrix& P, cmatrix* grad) {
        double f = 0.0;
        if (grad) grad->setZero();
        for (std::size_t r = 0; r < nrec; ++r) {
            const double em = std::real((rows[r].cwiseProduct(P)).sum());
            const double diff = em - y(r);
            f += wgt(r) * diff * diff;
            if (grad) *grad += (2.0 * wgt(r) * diff) * rows[r].conjugate();
        }
        if (grad) *grad = hermitize(*grad);
        return f;
    };

    Rng rng(opts.seed);
    ReconstructResult best;
    best.objective = std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
        cmatrix P;
        if (restart == 0) {
            // data-driven start: ideal-like diagonal lump at the right trace
            P = project_feasible(ideal_filter(dim, t0 / double(dim)).matrix, dim, t_struct,
                                 cap, opts.enforce_trace_constraint);
        } else {
            cmatrix T0(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) T0(i, j) = cplx(rng.gaussian(), rng.gaussian());
            cmatrix R = T0.adjoint() * T0;
            R *= t0 / R.trace().real();
            P = project_feasible(R, dim, t_struct, cap, opts.enforce_trace_constraint);
        }

        cmatrix grad(n, n);
        double f = objective_and_grad(P, &grad);
        double step = 0.5 / std::max(1.0, grad.norm());
        int it = 0;
        bool converged = false;
        for (; it < opts.max_iters; ++it) {
            // T-parametrized step: P' = (T + dT)^dag (T + dT) with
            // dT = -s T grad keeps descent directions inside the cone
            const cmatrix T = cholesky_factor(P);
            const cmatrix dT = T * grad;
            bool accepted = false;
            for (int ls = 0; ls < 30; ++ls) {
                const cmatrix Tc = T - step * dT;
                cmatrix Pc = project_feasible(Tc.adjoint() * Tc, dim, t_struct, cap,
                                              opts.enforce_trace_constraint, 25);
                const double fc = objective_and_grad(Pc, nullptr);
                if (fc < f) {
                    const double rel = (f - fc) / std::max(f, 1e-300);
                    P = std::move(Pc);
                    f = fc;
                    objective_and_grad(P, &grad);
                    accepted = true;
                    if (rel < opts.tol) converged = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted || converged) {
                converged = converged || !accepted;
                break;
            }
            step *= 1.6;
        }
        if (f < best.objective) {
            best.objective = f;
            best.P.dim = dim;
            best.P.matrix = project_feasible(P, dim, t_struct, cap,
                                             opts.enforce_trace_constraint, 200);
            best.converged = converged;
            best.iterations = it;
        }
    }
    if (!best.converged && best.iterations >= opts.max_iters)
        best.converged = false; // reported, not silent
    return best;
}

double fidelity(const ProcessMatrix& a, const ProcessMatrix& b) {
    if (a.dim != b.dim)
        throw Error(Errc::invalid_argument, "fidelity: dimension mismatch");
    const double ta = a.trace(), tb = b.trace();
    if (!(ta > 0.0) || !(tb > 0.0))
        throw Error(Errc::invalid_argument, "fidelity: non-positive trace");
    Eigen::SelfAdjointEigenSolver<cmatrix> ea(a.matrix / ta);
    if (ea.eigenvalues().minCoeff() < -1e-8)
        throw Error(Errc::non_psd, "fidelity: first argument not PSD");
    Eigen::VectorXd ev = ea.eigenvalues().cwiseMax(0.0);
    const cmatrix sqrtA =
        ea.eigenvectors() * ev.cwiseSqrt().asDiagonal() * ea.eigenvectors().adjoint();
    const cmatrix M = sqrtA * (b.matrix / tb) * sqrtA;
    Eigen::SelfAdjointEigenSolver<cmatrix> em(hermitize(M));
    if (em.eigenvalues().minCoeff() < -1e-8)
        throw Error(Errc::non_psd, "fidelity: second argument not PSD");
    double s = 0.0;
    for (Eigen::Index i = 0; i < em.eigenvalues().size(); ++i)
        s += std::sqrt(std::max(em.eigenvalues()(i), 0.0));
    return std::min(s * s, 1.0 + 1e-12);
}

double single_modeness(const ProcessMatrix& P, const Eigen::VectorXcd& control) {
    if (control.size() != P.dim)
        throw Error(Errc::invalid_argument, "single_modeness: dimension mismatch");
    const cmatrix PO = P.control_slice(control);
    Eigen::SelfAdjointEigenSolver<cmatrix> es(PO);
    const double tr = PO.trace().real();
    if (!(tr > 1e-14 * std::max(1.0, P.trace())))
        throw Error(Errc::not_applicable, "single_modeness: zero process weight for control");
    return es.eigenvalues().maxCoeff() / tr;
}

std::vector<Eigen::VectorXcd> random_control_ensemble(int dim, int count,
                                                      std::uint64_t seed) {
    if (count < 1)
        throw Error(Errc::invalid_argument, "random_control_ensemble: count must be >= 1");
    Rng rng(seed);
    std::vector<Eigen::VectorXcd> out;
    out.reserve(std::size_t(count));
    for (int i = 0; i < count; ++i) {
        const cvector v = rng.complex_unit_vector(std::size_t(dim));
        Eigen::VectorXcd e(dim);
        for (int k = 0; k < dim; ++k) e(k) = v[std::size_t(k)];
        out.push_back(std::move(e));
    }
    return out;
}

std::pair<double, double> mean_single_modeness(const ProcessMatrix& P,
                                               const std::vector<Eigen::VectorXcd>& ensemble) {
    dvector ks;
    ks.reserve(ensemble.size());
    for (const auto& c : ensemble) ks.push_back(single_modeness(P, c));
    double mean = 0.0;
    for (double k : ks) mean += k;
    mean /= double(ks.size());
    double var = 0.0;
    for (double k : ks) var += (k - mean) * (k - mean);
    const double sd = ks.size() > 1 ? std::sqrt(var / double(ks.size() - 1)) : 0.0;
    return {mean, sd};
}

ProcessMatrix random_process_matrix(int dim, double trace_target, std::uint64_t seed) {
    const int n = dim * dim;
    Rng rng(seed);
    cmatrix T(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) T(i, j) = cplx(rng.gaussian(), rng.gaussian());
    cmatrix P = T.adjoint() * T;
    P *= trace_target / P.trace().real();
    P = project_feasible(P, dim, trace_target / double(dim), double(dim), true, 400);
    // the projection can shave a little trace; rescale and re-project once
    P *= trace_target / P.trace().real();
    P = project_feasible(P, dim, trace_target / double(dim), double(dim), true, 400);
    ProcessMatrix out;
    out.dim = dim;
    out.matrix = hermitize(P);
    return out;
}

} // namespace tmproc
