#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "floquet/model.hpp"
#include "floquet/topology.hpp"

namespace floquet::harness {

inline constexpr int kFormatVersion = 1;

/// Command parameters as a JSON object. Keys are kept sorted, so the
/// canonical dump (and the hash) does not depend on insertion order.
using RunConfig = nlohmann::json;

/// "0.5pi", "-pi", "2.5π", "1.2" (radians). Throws ErrorCode::InvalidArgument.
double parse_angle(std::string_view text);
double angle_value(const nlohmann::json& value);

/// "a:b" spans [a, b]; a single angle gives a zero-width range.
AxisRange parse_range(std::string_view text, std::size_t cells);
AxisRange range_value(const nlohmann::json& value, std::size_t cells);

Frame parse_frame(std::string_view text);

std::string canonical_dump(const RunConfig& config);

/// 64-bit FNV-1a of the canonical dump, as 16 lowercase hex digits.
std::string config_hash(const RunConfig& config);

RunConfig load_config_file(const std::string& path);

/// Worker count from FLOQUET_THREADS; nullopt when unset or empty.
std::optional<unsigned> threads_from_env();

ModelParams model_params(const RunConfig& config);

template <typename T>
T get_or(const RunConfig& config, const char* key, T fallback) {
  const auto it = config.find(key);
  if (it == config.end() || it->is_null()) return fallback;
  return it->template get<T>();
}

}  // namespace floquet::harness
