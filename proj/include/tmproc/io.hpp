/*
 * This code is part of tmproc.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef TMPROC_IO_HPP
#define TMPROC_IO_HPP

#include <filesystem>
#include <string>

#include "tmproc/envelope.hpp"
#include "tmproc/kernel.hpp"
#include "tmproc/memory.hpp"
#include "tmproc/tomography.hpp"

namespace tmproc {

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_g17(double v);

/// CSV (t_seconds, re, im) plus a .json sidecar with the grid metadata.
void write_envelope_csv(const TemporalEnvelope& env, const std::filesystem::path& csv_path);
TemporalEnvelope read_envelope_csv(const std::filesystem::path& csv_path);

/// CSV (z_meters, re, im) plus sidecar, mirroring the envelope layout.
void write_spinwave_csv(const SpinWave& sw, const std::filesystem::path& csv_path);
SpinWave read_spinwave_csv(const std::filesystem::path& csv_path);

void write_efficiency_report_json(const EfficiencyReport& rep,
                                  const std::filesystem::path& path);

/// CSV matrix, row index = signal mode, column = control mode.
void write_matrix_csv(const dmatrix& m, const std::filesystem::path& path);

void write_process_matrix_json(const ProcessMatrix& p, const std::filesystem::path& path);
ProcessMatrix read_process_matrix_json(const std::filesystem::path& path);

void write_dataset_csv(const EfficiencyDataset& ds, const std::filesystem::path& path);

} // namespace tmproc

#endif
