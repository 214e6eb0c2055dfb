#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nash/analysis.hpp"
#include "nash/poly.hpp"

namespace nash {

struct CampaignConfig;

/// "re+imi" style complex literal: "1", "-2.5i", "i", "3-4i", "1e-3+2e-2i".
cd parse_complex(std::string_view text);
std::string format_complex(cd z);

/// {"k": int, "coeffs": [[[re, im], ...], ...]}, row i = z-power, column j =
/// w-power. Ragged rows and non-finite numbers are rejected.
BivarPoly parse_poly_json(std::string_view text);
std::string poly_to_json(const BivarPoly& s, int k = -1);
BivarPoly read_poly_file(const std::filesystem::path& path);

/// {"points": [[re, im], ...]}
std::vector<cd> parse_path_json(std::string_view text);
std::string path_to_json(const std::vector<cd>& pts);

/// "disk:C:R[:samples]", "segment:A:B[:samples]" or "points:A,B,...".
CompactSpec parse_compact(std::string_view text);
std::string format_compact(const CompactSpec& k);
/// "disk:C:R[:samples]"
DomainSpec parse_domain(std::string_view text);
std::string format_domain(const DomainSpec& d);

/// Comma separated real coefficients in ascending degree, e.g. "0,1".
UnivarPoly parse_real_coeffs(std::string_view text);

CampaignConfig parse_config_json(std::string_view text);
std::string config_to_json(const CampaignConfig& cfg);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace nash
