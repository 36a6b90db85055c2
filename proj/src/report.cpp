#include "plembed/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "plembed/errors.hpp"

namespace plembed {

void Report::add(const std::string& key, const std::string& value) {
  lines_.emplace_back(key, value);
}

void Report::add(const std::string& key, const char* value) {
  lines_.emplace_back(key, std::string(value));
}

void Report::add(const std::string& key, double value) {
  lines_.emplace_back(key, format_double(value));
}

void Report::add(const std::string& key, int value) {
  lines_.emplace_back(key, std::to_string(value));
}

void Report::add(const std::string& key, std::int64_t value) {
  lines_.emplace_back(key, std::to_string(value));
}

void Report::add(const std::string& key, bool value) {
  lines_.emplace_back(key, value ? "true" : "false");
}

void Report::warn(const std::string& message) {
  lines_.emplace_back("warning", message);
}

std::string Report::text() const {
  std::string out;
  for (const auto& [key, value] : lines_) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

// Full-consumption strtod; rejects partial parses like "1.5x".
bool parse_number(const std::string& text, double* out) {
  if (text.empty()) return false;
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + text.size()) return false;
  *out = v;
  return true;
}

}  // namespace

double parse_angle(const std::string& text) {
  // Trim surrounding whitespace so "pi / 2" style inputs still fail loudly
  // while " pi" passes.
  auto first = text.find_first_not_of(" \t");
  auto last = text.find_last_not_of(" \t");
  if (first == std::string::npos)
    throw ParseError("empty angle literal");
  std::string t = text.substr(first, last - first + 1);

  constexpr double kPi = std::numbers::pi;
  if (t == "pi") return kPi;

  if (t.size() > 3 && t.compare(0, 3, "pi/") == 0) {
    double d;
    if (!parse_number(t.substr(3), &d) || d == 0.0)
      throw ParseError("bad angle literal '" + text + "'");
    return kPi / d;
  }
  if (t.size() > 3 && t.compare(t.size() - 3, 3, "*pi") == 0) {
    double m;
    if (!parse_number(t.substr(0, t.size() - 3), &m))
      throw ParseError("bad angle literal '" + text + "'");
    return m * kPi;
  }
  double v;
  if (!parse_number(t, &v))
    throw ParseError("bad angle literal '" + text + "'");
  return v;
}

}  // namespace plembed
