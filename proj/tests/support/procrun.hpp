#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

// Run a shell command, capture stdout, and return the exit status.
// Helpers for driving the command-line binary from tests.
namespace procrun {

struct Result {
  int status = -1;   // exit code, or -1 if the process died abnormally
  std::string out;
};

inline Result run(const std::string& command) {
  Result r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + command);
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    r.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  if (raw >= 0 && WIFEXITED(raw)) r.status = WEXITSTATUS(raw);
  return r;
}

inline std::string binary_path() {
  const char* bin = std::getenv("PLEMBED_BIN");
  if (!bin || !*bin)
    throw std::runtime_error("PLEMBED_BIN is not set; run through ctest");
  return bin;
}

// True when `text` contains the full line `line` (exact match).
inline bool has_line(const std::string& text, const std::string& line) {
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t end = text.find('\n', pos);
    const std::string row = text.substr(pos, end == std::string::npos
                                                 ? std::string::npos
                                                 : end - pos);
    if (row == line) return true;
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return false;
}

}  // namespace procrun
