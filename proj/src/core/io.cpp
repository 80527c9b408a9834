/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "tmproc/io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace tmproc {

using nlohmann::json;

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream f(p);
    if (!f)
        throw Error(Errc::io_failure, "cannot open for writing: " + p.string());
    return f;
}

std::ifstream open_in(const std::filesystem::path& p) {
    std::ifstream f(p);
    if (!f)
        throw Error(Errc::io_failure, "cannot open for reading: " + p.string());
    return f;
}

std::filesystem::path sidecar(const std::filesystem::path& csv) {
    std::filesystem::path p = csv;
    p += ".json";
    return p;
}

} // namespace

void write_envelope_csv(const TemporalEnvelope& env, const std::filesystem::path& path) {
    auto f = open_out(path);
    f << "t_seconds,re,im\n";
    for (std::size_t k = 0; k < env.size(); ++k)
        f << format_g17(env.grid().t(k)) << ',' << format_g17(env[k].real()) << ','
          << format_g17(env[k].imag()) << '\n';
    json meta = {{"t_start", env.grid().t_start()},
                 {"dt", env.grid().dt()},
                 {"n_samples", env.size()},
                 {"unit_normalized", env.unit_normalized()}};
    open_out(sidecar(path)) << meta.dump(2) << '\n';
}

TemporalEnvelope read_envelope_csv(const std::filesystem::path& path) {
    json meta = json::parse(open_in(sidecar(path)));
    TimeGrid grid(meta.at("t_start").get<double>(), meta.at("dt").get<double>(),
                  meta.at("n_samples").get<std::size_t>());
    auto f = open_in(path);
    std::string line;
    std::getline(f, line); // header
    cvector amp;
    amp.reserve(grid.size());
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        double t, re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &re, &im) != 3)
            throw Error(Errc::io_failure, "malformed envelope CSV row");
        amp.emplace_back(re, im);
    }
    if (amp.size() != grid.size())
        throw Error(Errc::io_failure, "envelope CSV row count does not match sidecar");
    TemporalEnvelope env(grid, std::move(amp));
    if (meta.value("unit_normalized", false)) env = env.normalized();
    return env;
}

void write_spinwave_csv(const SpinWave& sw, const std::filesystem::path& path) {
    auto f = open_out(path);
    f << "z_meters,re,im\n";
    for (std::size_t j = 0; j < sw.size(); ++j)
        f << format_g17(sw.grid().z(j)) << ',' << format_g17(sw[j].real()) << ','
          << format_g17(sw[j].imag()) << '\n';
    json meta = {{"length", sw.grid().length()}, {"n_samples", sw.size()}};
    open_out(sidecar(path)) << meta.dump(2) << '\n';
}

SpinWave read_spinwave_csv(const std::filesystem::path& path) {
    json meta = json::parse(open_in(sidecar(path)));
    SpaceGrid grid(meta.at("length").get<double>(), meta.at("n_samples").get<std::size_t>());
    auto f = open_in(path);
    std::string line;
    std::getline(f, line);
    cvector amp;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        double z, re, im;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &z, &re, &im) != 3)
            throw Error(Errc::io_failure, "malformed spin-wave CSV row");
        amp.emplace_back(re, im);
    }
    return SpinWave(grid, std::move(amp));
}

void write_efficiency_report_json(const EfficiencyReport& rep,
                                  const std::filesystem::path& path) {
    json j = {{"eta_stor", rep.eta_stor},
              {"eta_ret", rep.eta_ret},
              {"eta_tot", rep.eta_tot},
              {"absorbed_fraction", rep.absorbed_fraction},
              {"grid_meta", {{"nz", rep.nz}, {"nt", rep.nt}}}};
    open_out(path) << j.dump(2) << '\n';
}

void write_matrix_csv(const dmatrix& m, const std::filesystem::path& path) {
    auto f = open_out(path);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) f << ',';
            f << format_g17(m(r, c));
        }
        f << '\n';
    }
}

void write_process_matrix_json(const ProcessMatrix& p, const std::filesystem::path& path) {
    json re = json::array(), im = json::array();
    for (Eigen::Index r = 0; r < p.matrix.rows(); ++r) {
        json rr = json::array(), ri = json::array();
        for (Eigen::Index c = 0; c < p.matrix.cols(); ++c) {
            rr.push_back(p.matrix(r, c).real());
            ri.push_back(p.matrix(r, c).imag());
        }
        re.push_back(std::move(rr));
        im.push_back(std::move(ri));
    }
    json j = {{"dim", p.dim}, {"re", std::move(re)}, {"im", std::move(im)}};
    open_out(path) << j.dump() << '\n';
}

ProcessMatrix read_process_matrix_json(const std::filesystem::path& path) {
    json j = json::parse(open_in(path));
    ProcessMatrix p;
    p.dim = j.at("dim").get<int>();
    const int n = p.dim * p.dim;
    p.matrix.resize(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            p.matrix(r, c) = cplx(j.at("re")[r][c].get<double>(), j.at("im")[r][c].get<double>());
    return p;
}

void write_dataset_csv(const EfficiencyDataset& ds, const std::filesystem::path& path) {
    auto f = open_out(path);
    f << "signal_basis,signal_index,control_basis,control_index,eta,sigma\n";
    for (const auto& rec : ds.records)
        f << rec.signal_basis << ',' << rec.signal_index << ',' << rec.control_basis << ','
          << rec.control_index << ',' << format_g17(rec.eta) << ',' << format_g17(rec.sigma)
          << '\n';
}

} // namespace tmproc
