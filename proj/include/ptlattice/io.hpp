#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ptlattice/diffraction.hpp"
#include "ptlattice/pt_analysis.hpp"
#include "ptlattice/susceptibility.hpp"

namespace ptlattice {

using ParamHeader = std::vector<std::pair<std::string, std::string>>;

/// Shortest decimal that round-trips to the same double; locale independent.
std::string format_double(double x);

/// `# key = value` lines.
std::string csv_header(const ParamHeader& params);

/// JSON object of the header; numeric-looking values become numbers.
nlohmann::json params_json(const ParamHeader& params);

std::string chi_csv(const SusceptibilityProfile& chi, const ParamHeader& params);
nlohmann::json chi_json(const SusceptibilityProfile& chi, const ParamHeader& params);

/// `s,intensity` in 1D, `sx,sy,intensity` (row-major in s_x) in 2D.
std::string pattern_csv(const FarFieldPattern& pattern, const ParamHeader& params);
nlohmann::json pattern_json(const FarFieldPattern& pattern, const ParamHeader& params);

std::string orders_csv(const OrderTable& orders, const ParamHeader& params);
nlohmann::json orders_json(const OrderTable& orders, const ParamHeader& params);

/// `param,I_-N..I_N,asymmetry,d_im,d_re,balance,class` with N = max_order.
std::string sweep_csv(const SweepTable& table, int max_order, const ParamHeader& params);
nlohmann::json sweep_json(const SweepTable& table, const ParamHeader& params);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace ptlattice
