#include "floquet/harness/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "floquet/errors.hpp"

namespace floquet::harness {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool strip_suffix(std::string_view& s, std::string_view suffix) {
  if (s.size() < suffix.size() || s.substr(s.size() - suffix.size()) != suffix) return false;
  s.remove_suffix(suffix.size());
  return true;
}

double parse_number(std::string_view s, std::string_view original) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse angle '" + std::string(original) + "'");
  }
  return value;
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty angle");
  if (strip_suffix(s, "pi") || strip_suffix(s, "\xCF\x80")) {
    s = trim(s);
    if (!s.empty() && s.back() == '*') s.remove_suffix(1);
    double coefficient = 1.0;
    if (s == "-") {
      coefficient = -1.0;
    } else if (!s.empty() && s != "+") {
      coefficient = parse_number(s, text);
    }
    return coefficient * std::numbers::pi;
  }
  return parse_number(s, text);
}

double angle_value(const nlohmann::json& value) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) return parse_angle(value.get<std::string>());
  throw Error(ErrorCode::InvalidArgument, "angle must be a number or string, got " + value.dump());
}

AxisRange parse_range(std::string_view text, std::size_t cells) {
  if (cells == 0) throw Error(ErrorCode::InvalidArgument, "range needs at least one cell");
  const auto colon = text.find(':');
  AxisRange range;
  range.cells = cells;
  if (colon == std::string_view::npos) {
    range.min = range.max = parse_angle(text);
  } else {
    range.min = parse_angle(text.substr(0, colon));
    range.max = parse_angle(text.substr(colon + 1));
  }
  if (range.max < range.min) {
    throw Error(ErrorCode::InvalidArgument, "range '" + std::string(text) + "' is reversed");
  }
  return range;
}

AxisRange range_value(const nlohmann::json& value, std::size_t cells) {
  if (value.is_number()) return parse_range(std::to_string(value.get<double>()), cells);
  if (value.is_string()) return parse_range(value.get<std::string>(), cells);
  throw Error(ErrorCode::InvalidArgument, "range must be a string like \"0:3pi\"");
}

Frame parse_frame(std::string_view text) {
  if (text == "plain") return Frame::Plain;
  if (text == "sym1") return Frame::Sym1;
  if (text == "sym2") return Frame::Sym2;
  throw Error(ErrorCode::InvalidArgument, "unknown frame '" + std::string(text) + "'");
}

std::string canonical_dump(const RunConfig& config) { return config.dump(); }

std::string config_hash(const RunConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : canonical_dump(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static constexpr char kHex[] = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = kHex[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  RunConfig config;
  try {
    config = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, "config " + path + ": " + e.what());
  }
  if (!config.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
  const auto version = config.find("format");
  if (version != config.end() && *version != kFormatVersion) {
    throw Error(ErrorCode::InvalidArgument, "unsupported config format " + version->dump());
  }
  return config;
}

std::optional<unsigned> threads_from_env() {
  const char* raw = std::getenv("FLOQUET_THREADS");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  const std::string_view text(raw);
  unsigned value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "FLOQUET_THREADS must be a non-negative integer");
  }
  return value;
}

ModelParams model_params(const RunConfig& config) {
  ModelParams p;
  p.tx = angle_value(config.value("tx", nlohmann::json("0.5pi")));
  p.ty = angle_value(config.value("ty", nlohmann::json("0.5pi")));
  return p;
}

}  // namespace floquet::harness
