#pragma once

#include <string>
#include <utility>
#include <vector>

#include "trimodal/field.hpp"
#include "trimodal/kernel.hpp"
#include "trimodal/solver.hpp"

namespace trimodal {

// All artifacts are emitted with a fixed field order and every floating point
// number printed as "%.17g", so identical inputs produce byte-identical
// files and values round-trip exactly.
std::string format_g17(double v);

std::string kernel_spec_to_json(const KernelSpec& spec,
                                const TransversalityReport& report);
KernelSpec kernel_spec_from_json(const std::string& text);

std::string branch_point_to_json(const BranchPoint& bp);
BranchPoint branch_point_from_json(const std::string& text);

std::string wave_field_to_json(const WaveField& w);
WaveField wave_field_from_json(const std::string& text);

// Flat CSV twin of the JSON form: a two-line header (names, values) followed
// by eta_hat and phi (row-major) sections.
std::string wave_field_to_csv(const WaveField& w);
WaveField wave_field_from_csv(const std::string& text);

std::string profile_to_csv(const std::vector<std::pair<double, double>>& rows);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace trimodal
